use std::io::{self, Write};

fn main() {
    let env_seed = std::env::var(fuzznorm_cli::SEED_ENV).ok();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = fuzznorm_cli::run(
        std::env::args_os(),
        env_seed.as_deref(),
        &mut out,
        &mut io::stderr(),
    );
    let _ = out.flush();
    std::process::exit(code);
}

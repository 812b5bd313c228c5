use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fuzznorm::verification::{
    check_fuzzy_convergence, check_fuzzy_norm_axioms, check_round_trip, Axiom, CheckConfig,
    CheckReport, SequenceKind, SequenceRule, Verdict,
};
use fuzznorm::{decompose_table, norm_from_generator, t_curve, FuzzyNorm, Vector};
use serde::Serialize;

use crate::args::{CheckArgs, ConvergeArgs, CurveArgs, DecomposeArgs, RoundtripArgs};
use crate::spec::SpecFile;
use crate::table::{format_real, read_points, write_alpha_table, write_curve};
use crate::{CliError, ExitStatus};

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what}: cannot parse {s:?} as a number")))
        })
        .collect()
}

fn parse_vector(text: &str, what: &str, dim: usize) -> Result<Vector, CliError> {
    let v = Vector::new(parse_list(text, what)?)
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    if v.dim() != dim {
        return Err(CliError::Usage(format!(
            "{what}: expected {dim} coordinates, got {}",
            v.dim()
        )));
    }
    Ok(v)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| CliError::Usage(format!("write failed: {e}")))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    spec: &'a str,
    generator: &'a str,
    dim: usize,
    admissible: bool,
    config: &'a CheckConfig,
    reports: &'a [CheckReport],
}

pub fn check(args: &CheckArgs, seed: u64, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let spec = SpecFile::load(&args.spec)?;
    let g = spec.build()?;
    let axioms = Axiom::parse_list(&args.axioms)?;
    let cfg = CheckConfig {
        samples: args.samples,
        tol: args.tol,
        alpha: args.alpha,
        ..CheckConfig::with_seed(seed)
    };
    cfg.validate()?;
    let name = spec.name(&g);
    let n = FuzzyNorm::unchecked(g);
    let reports = check_fuzzy_norm_axioms(&n, &cfg, &axioms);

    writeln!(
        out,
        "{name}: {} in dim {}, seed {seed}, {} samples",
        n.generator().kind_name(),
        n.dim(),
        cfg.samples
    )?;
    if !n.is_checked() {
        writeln!(
            out,
            "note: generator is not admissible; checked as an unchecked fuzzy norm"
        )?;
    }
    writeln!(
        out,
        "{:<18} {:<13} {:>8}  witness",
        "axiom", "verdict", "samples"
    )?;
    for r in &reports {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "inconclusive",
        };
        let witness = match &r.witness {
            Some(w) => serde_json::to_string(w).map_err(|e| CliError::Invariant(e.to_string()))?,
            None => "-".into(),
        };
        writeln!(
            out,
            "{:<18} {:<13} {:>8}  {witness}",
            r.axiom.label(),
            verdict,
            r.samples_used
        )?;
    }
    let status = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        ExitStatus::Fail
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        ExitStatus::Inconclusive
    } else {
        ExitStatus::Pass
    };
    writeln!(out, "result: {}", status.describe())?;

    if let Some(path) = &args.report {
        let output = CheckOutput {
            spec: &name,
            generator: n.generator().kind_name(),
            dim: n.dim(),
            admissible: n.is_checked(),
            config: &cfg,
            reports: &reports,
        };
        write_json(path, &output)?;
    }
    Ok(status)
}

pub fn decompose(args: &DecomposeArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let spec = SpecFile::load(&args.spec)?;
    let n = norm_from_generator(spec.build()?)?;
    let alphas = parse_list(&args.alphas, "--alphas")?;
    let file = File::open(&args.points).map_err(|e| {
        CliError::Usage(format!("cannot read points {}: {e}", args.points.display()))
    })?;
    let points = read_points(file, n.dim())?;
    let table = decompose_table(&n, &alphas, &points, args.tol)?;
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            write_alpha_table(&mut w, &table)?;
            w.flush()?;
            let degenerate = (0..alphas.len())
                .flat_map(|i| (0..points.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| table.is_degenerate(i, j))
                .count();
            writeln!(
                out,
                "wrote {} rows ({} degenerate) to {}",
                alphas.len() * points.len(),
                degenerate,
                path.display()
            )?;
        }
        None => write_alpha_table(&mut *out, &table)?,
    }
    Ok(ExitStatus::Pass)
}

/// `steps` evenly spaced times from `tmin` to `tmax`, both ends exact.
pub fn time_grid(tmin: f64, tmax: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(tmin.is_finite() && tmax.is_finite() && tmin >= 0.0 && tmin < tmax) {
        return Err(CliError::Usage(format!(
            "need 0 <= tmin < tmax, got tmin={tmin}, tmax={tmax}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    let last = (steps - 1) as f64;
    let mut grid: Vec<f64> = (0..steps)
        .map(|i| tmin + (tmax - tmin) * (i as f64 / last))
        .collect();
    grid[steps - 1] = tmax;
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(
            "--steps too fine for the [tmin, tmax] range".into(),
        ));
    }
    Ok(grid)
}

pub fn curve(args: &CurveArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let spec = SpecFile::load(&args.spec)?;
    let n = FuzzyNorm::unchecked(spec.build()?);
    let x = parse_vector(&args.point, "--point", n.dim())?;
    let ts = time_grid(args.tmin, args.tmax, args.steps)?;
    let values = t_curve(&n, &x, &ts)?;
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            write_curve(&mut w, &ts, &values)?;
            w.flush()?;
            writeln!(out, "wrote {} rows to {}", ts.len(), path.display())?;
        }
        None => write_curve(&mut *out, &ts, &values)?,
    }
    Ok(ExitStatus::Pass)
}

pub fn converge(args: &ConvergeArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let spec = SpecFile::load(&args.spec)?;
    let n = norm_from_generator(spec.build()?)?;
    let kind: SequenceKind = args.sequence.parse()?;
    let base = parse_vector(&args.vector, "--vector", n.dim())?;
    let rule = SequenceRule::new(kind, base)?;
    let cfg = CheckConfig::default();
    let report = check_fuzzy_convergence(&n, &rule, args.nmax, &cfg)?;

    writeln!(
        out,
        "{} sequence under {}, n = 1..{}, eps = {}",
        kind.name(),
        spec.name(n.generator()),
        args.nmax,
        cfg.eps_conv
    )?;
    writeln!(
        out,
        "{:>24} {:>10} {:>10}  last miss",
        "t", "threshold", "converged"
    )?;
    for v in &report.per_t {
        let threshold = v.threshold.map_or_else(|| "-".into(), |k| k.to_string());
        let miss = v.last_miss.map_or_else(
            || "-".into(),
            |(k, value)| format!("n={k} N={}", format_real(value)),
        );
        writeln!(
            out,
            "{:>24} {:>10} {:>10}  {miss}",
            format_real(v.t),
            threshold,
            v.converged
        )?;
    }
    writeln!(out, "fuzzy convergent: {}", report.fuzzy)?;
    writeln!(out, "crisp convergent: {}", report.crisp)?;
    writeln!(out, "fuzzy == crisp: {}", report.agree)?;
    if let Some(path) = &args.out {
        write_json(path, &report)?;
    }
    Ok(if report.agree {
        ExitStatus::Pass
    } else {
        ExitStatus::Fail
    })
}

pub fn roundtrip(
    args: &RoundtripArgs,
    seed: u64,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let spec = SpecFile::load(&args.spec)?;
    let g = spec.build()?;
    let cfg = CheckConfig {
        samples: args.samples,
        ..CheckConfig::with_seed(seed)
    };
    cfg.validate()?;
    let report = check_round_trip(&g, &cfg);
    writeln!(
        out,
        "{}: {} samples, seed {seed}: generator mismatches {}, norm mismatches {}",
        spec.name(&g),
        report.samples,
        report.generator_mismatches,
        report.norm_mismatches
    )?;
    if let Some((x, t)) = &report.first_mismatch {
        writeln!(out, "first mismatch: x = {x:?}, t = {}", format_real(*t))?;
    }
    Ok(if report.passed() {
        writeln!(out, "result: pass")?;
        ExitStatus::Pass
    } else {
        writeln!(out, "result: fail")?;
        ExitStatus::Fail
    })
}

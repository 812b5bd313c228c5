//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuzznorm::verification::{
    alpha_cut_norm, check_ascending_family, check_crisp_norm_axioms, check_fuzzy_convergence,
    check_fuzzy_norm_axioms, check_round_trip, probe_continuity, sample_points, Axiom, CheckConfig,
    Continuity, SequenceKind, SequenceRule, Verdict, Witness,
};
use fuzznorm::{
    alpha_cut, alpha_cut_oracle, decompose_table, make_generator, norm_from_generator, FuzzyNorm,
    Generator, GeneratorSpec, NormSpec, Vector,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn family(name: &str) -> GeneratorSpec {
    let norm = NormSpec::default();
    match name {
        "standard" => GeneratorSpec::Standard { norm },
        "indicator" => GeneratorSpec::Indicator { norm, radius: 1.0 },
        "exponential" => GeneratorSpec::Exponential { norm },
        "piecewise_linear" => GeneratorSpec::PiecewiseLinear { norm },
        "shifted" => GeneratorSpec::Shifted { norm, beta: 0.5 },
        "min_combination" => GeneratorSpec::MinCombination {
            children: vec![
                GeneratorSpec::Indicator {
                    norm: NormSpec::p(f64::INFINITY),
                    radius: 2.0,
                },
                GeneratorSpec::Exponential {
                    norm: NormSpec::p(1.0),
                },
            ],
        },
        "linear_precompose" => GeneratorSpec::LinearPrecompose {
            matrix: vec![vec![2.0, 0.0], vec![0.5, 1.0]],
            inner: Box::new(GeneratorSpec::Standard { norm }),
        },
        "cosine_control" => GeneratorSpec::CosineControl { norm },
        other => panic!("unknown family {other}"),
    }
}

const SCALAR: [&str; 5] = [
    "standard",
    "indicator",
    "exponential",
    "piecewise_linear",
    "shifted",
];
const NON_DEGENERATE: [&str; 4] = ["standard", "indicator", "exponential", "piecewise_linear"];

fn generator(name: &str, dim: usize) -> Generator {
    make_generator(&family(name), dim).unwrap()
}

fn norm(name: &str, dim: usize) -> FuzzyNorm {
    norm_from_generator(generator(name, dim)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn round_trip() -> Outcome {
    let kinds = [
        "standard",
        "indicator",
        "exponential",
        "piecewise_linear",
        "shifted",
        "min_combination",
        "linear_precompose",
        "cosine_control",
    ];
    let cfg = CheckConfig {
        samples: 10_000,
        ..CheckConfig::with_seed(2024)
    };
    let start = Instant::now();
    let mut total = 0;
    for name in kinds {
        let report = check_round_trip(&generator(name, 2), &cfg);
        ensure(report.passed(), || {
            format!("{name}: first mismatch {:?}", report.first_mismatch)
        })?;
        total += report.samples;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} generators, {total} sampled inputs compared exactly in both directions, {elapsed:.2?}",
        kinds.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let tol = 1e-9;
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for name in SCALAR {
        let g = generator(name, 1);
        let n = norm_from_generator(g.clone()).unwrap();
        for k in 1..=19 {
            let alpha = k as f64 * 0.05;
            for s in [0.1, 1.0, 10.0] {
                let cut = alpha_cut(&n, &Vector::new(vec![s]).unwrap(), alpha, tol)
                    .map_err(|e| e.to_string())?;
                let oracle = alpha_cut_oracle(&g, alpha, s).map_err(|e| e.to_string())?;
                let err = (cut.value - oracle).abs();
                ensure(err <= tol + 1e-12, || {
                    format!("{name} α={alpha} s={s}: {} vs {oracle}", cut.value)
                })?;
                if name == "shifted" && alpha <= 0.5 {
                    ensure(cut.value == 0.0 && cut.degenerate, || {
                        format!("shifted α={alpha} not degenerate")
                    })?;
                }
                worst = worst.max(err);
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{cells} cells, max error {worst:.2e}, {elapsed:.2?}"
    ))
}

fn decomposition_norms() -> Outcome {
    let cfg = CheckConfig {
        samples: 2000,
        ..CheckConfig::with_seed(31)
    };
    let mut checks = 0;
    for name in NON_DEGENERATE {
        for dim in 1..=3 {
            let n = norm(name, dim);
            for alpha in [0.25, 0.5, 0.75] {
                let p = alpha_cut_norm(&n, alpha, cfg.tol);
                for r in check_crisp_norm_axioms(&p, dim, &cfg) {
                    ensure(r.passed(), || {
                        format!("{name} dim {dim} α={alpha} {}: {:?}", r.axiom, r.witness)
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} crisp-norm checks on 2000 samples each"))
}

fn ascending_family() -> Outcome {
    let cfg = CheckConfig::with_seed(41);
    let alphas: Vec<f64> = (0..21).map(|k| 0.02 + 0.048 * k as f64).collect();
    for name in NON_DEGENERATE {
        for dim in 1..=3 {
            let points = sample_points(&cfg, dim, 0)
                .into_iter()
                .take(100)
                .collect::<Vec<_>>();
            let table = decompose_table(&norm(name, dim), &alphas, &points, cfg.tol)
                .map_err(|e| e.to_string())?;
            let r = check_ascending_family(&table);
            ensure(r.passed(), || format!("{name} dim {dim}: {:?}", r.witness))?;
        }
    }
    let points = sample_points(&cfg, 2, 0)
        .into_iter()
        .take(100)
        .collect::<Vec<_>>();
    let mut table = decompose_table(&norm("standard", 2), &alphas, &points, cfg.tol)
        .map_err(|e| e.to_string())?;
    let (row, col) = (13, 57);
    *table.value_mut(row, col) = table.value(row - 1, col) * 0.5;
    let r = check_ascending_family(&table);
    match r.witness {
        Some(Witness::Descending {
            point_index,
            alpha_low,
            alpha_high,
            ..
        }) if r.verdict == Verdict::Fail
            && point_index == col
            && alpha_low == alphas[row - 1]
            && alpha_high == alphas[row] => {}
        other => {
            return Err(format!(
                "planted corruption missed: {:?} {other:?}",
                r.verdict
            ))
        }
    }
    Ok("4 families × dims 1-3 × 21 levels ascending; planted cell detected".into())
}

fn axiom_matrix() -> Outcome {
    use Axiom::*;
    use Verdict::{Fail as F, Pass as P};
    let cfg = CheckConfig::with_seed(7);
    let labels = [N1, N2, N3, N4, N5, N6, N6Prime, N7];
    let rows: [(&str, &[Verdict]); 5] = [
        ("standard", &[P, P, P, P, P, F, P, P]),
        ("indicator", &[P, P, P, P, P, P, P, F]),
        ("exponential", &[P, P, P, P, P, F, P, P]),
        ("shifted", &[P, P, P, P, P, F, F]),
        ("piecewise_linear", &[P, P, P, P, P, P, P, P]),
    ];
    for dim in 1..=3 {
        for (name, expected) in rows {
            let n = norm(name, dim);
            let reports = check_fuzzy_norm_axioms(&n, &cfg, &labels[..expected.len()]);
            for (r, want) in reports.iter().zip(expected) {
                ensure(r.verdict == *want, || {
                    format!("{name} dim {dim} {}: {:?}", r.axiom, r.verdict)
                })?;
                if r.verdict == F {
                    let w = r
                        .witness
                        .as_ref()
                        .ok_or_else(|| format!("{name} {} lacks a witness", r.axiom))?;
                    ensure(w.replays_on_norm(&n, &cfg), || {
                        format!("{name} {} witness does not replay", r.axiom)
                    })?;
                }
            }
        }
        let cosine = FuzzyNorm::unchecked(generator("cosine_control", dim));
        let r = &check_fuzzy_norm_axioms(&cosine, &cfg, &[A0])[0];
        match &r.witness {
            Some(Witness::Quasiconcave {
                x,
                y,
                lambda,
                combined,
                ..
            }) if r.verdict == F
                && (x.iter().map(|c| c * c).sum::<f64>().sqrt() - 2.0 * PI).abs() < 1e-12
                && y.iter().all(|&c| c == 0.0)
                && *lambda == 0.5
                && *combined == 0.0 => {}
            other => return Err(format!("cosine dim {dim}: {:?} {other:?}", r.verdict)),
        }
    }
    Ok("5 families × dims 1-3 match; cosine A0 witness ‖a‖=2π, b=0, λ=0.5".into())
}

fn continuity() -> Outcome {
    let cfg = CheckConfig::with_seed(13);
    let radii: Vec<f64> = (0..40).map(|k| 0.5f64.powi(k)).collect();
    let mut min_gap = f64::INFINITY;
    for dim in 1..=3 {
        let ind = generator("indicator", dim);
        let probe = probe_continuity(&ind, &Vector::unit(dim, 0), &radii, &cfg)
            .map_err(|e| e.to_string())?;
        match probe.classification {
            Continuity::Jump { gap } if gap >= 0.9 => min_gap = min_gap.min(gap),
            other => return Err(format!("indicator dim {dim} at e1: {other:?}")),
        }
        let probe =
            probe_continuity(&ind, &Vector::zeros(dim), &radii, &cfg).map_err(|e| e.to_string())?;
        ensure(
            matches!(probe.classification, Continuity::Continuous { .. }),
            || format!("indicator dim {dim} at 0: {:?}", probe.classification),
        )?;
    }
    let standard = generator("standard", 2);
    let points = sample_points(&cfg, 2, 99);
    for x0 in points.iter().skip(5).take(25) {
        let probe = probe_continuity(&standard, x0, &radii, &cfg).map_err(|e| e.to_string())?;
        ensure(
            matches!(probe.classification, Continuity::Continuous { .. }),
            || {
                format!(
                    "standard at {:?}: {:?}",
                    x0.components(),
                    probe.classification
                )
            },
        )?;
    }
    Ok(format!(
        "indicator jump gap {min_gap} at ‖x0‖=1, continuous at 0; standard continuous at 25 points"
    ))
}

fn convergence() -> Outcome {
    let cfg = CheckConfig::with_seed(17);
    let base = [1.5, -2.0, 0.25];
    let mut cases = 0;
    for name in ["standard", "exponential"] {
        for dim in 1..=3 {
            let n = norm(name, dim);
            let v = Vector::new(base[..dim].to_vec()).unwrap();
            for (kind, convergent) in [
                (SequenceKind::InverseN, true),
                (SequenceKind::Constant, false),
                (SequenceKind::Alternating, false),
            ] {
                let rule = SequenceRule::new(kind, v.clone()).map_err(|e| e.to_string())?;
                let r =
                    check_fuzzy_convergence(&n, &rule, 10_000, &cfg).map_err(|e| e.to_string())?;
                ensure(r.agree && r.fuzzy == convergent, || {
                    format!(
                        "{name} dim {dim} {}: fuzzy {} crisp {}",
                        kind.name(),
                        r.fuzzy,
                        r.crisp
                    )
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases agree"))
}

fn run_binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fuzznorm"))
        .args(args)
        .env_remove("FUZZNORM_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some_and(|c| c <= 2), || {
        format!("exit {:?}", out.status.code())
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let specs = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for name in ["standard", "shifted", "cosine", "min_precompose"] {
        let spec = specs.join(format!("{name}.json"));
        let spec = spec.to_str().unwrap();
        let mut outputs = Vec::new();
        for run in 0..2 {
            let report = dir.path().join(format!("{name}-{run}.json"));
            let table = dir.path().join(format!("{name}-{run}.csv"));
            let check = run_binary(&[
                "check",
                spec,
                "--axioms",
                "N1..N7,A0..A3,crisp-definite..ascending",
                "--samples",
                "500",
                "--seed",
                "123",
                "--report",
                report.to_str().unwrap(),
            ])?;
            let points = specs.join("points.csv");
            let decompose = if name == "cosine" {
                Vec::new()
            } else {
                run_binary(&[
                    "decompose",
                    spec,
                    "--alphas",
                    "0.1,0.3,0.5,0.7,0.9",
                    "--points",
                    points.to_str().unwrap(),
                    "--out",
                    table.to_str().unwrap(),
                ])?;
                fs::read(&table).map_err(|e| e.to_string())?
            };
            let report = fs::read(&report).map_err(|e| e.to_string())?;
            outputs.push((check, report, decompose));
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{name}: outputs differ between runs")
        })?;
        compared += 1;
    }
    Ok(format!(
        "{compared} specs: check stdout, JSON report and CSV table byte-identical"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 round trip", round_trip),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 decomposition norms", decomposition_norms),
        ("4 ascending family", ascending_family),
        ("5 axiom matrix", axiom_matrix),
        ("6 continuity probe", continuity),
        ("7 convergence equivalence", convergence),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use rand::Rng;

use super::crisp::{alpha_cut_norm, check_ascending_family, check_crisp_axiom};
use super::sampling::{log_spaced, raw_points, stream};
use super::{
    Axiom, CheckConfig, CheckReport, Verdict, Witness, Worst, LIMIT_SLACK, ROUNDING_SLACK,
};
use crate::correspondence::{FuzzyNormEval, Section};
use crate::decomposition::decompose_table;
use crate::generators::{convex, max_abs, scale, Membership, Vector};

/// Halvings below `max|xᵢ|` scanned by the N6 check.
const N6_DEPTH: i32 = 6;
/// Doubling/halving cap for the limit searches.
const LIMIT_STEPS: u32 = 200;
/// Extra halvings that must stay within the A2 threshold.
const A2_CONFIRM: u32 = 8;
/// Resolution of the N7 t-scan (relative range `[1e-3, 1e3]·max|xᵢ|`).
const N7_STEPS: usize = 400;
const N7_REFINE: usize = 60;
/// A0 ray scan: radii `kπ/8` for `k = 1..=RAY_STEPS` along ±eᵢ.
const RAY_STEPS: u32 = 64;
/// Points used for the ascending-family table.
const ASCENDING_POINTS: usize = 64;
const ASCENDING_ALPHAS: usize = 21;

const HOMOGENEITY_LAMBDAS: [f64; 5] = [-2.0, -0.5, 0.5, 3.0, -1.0];

fn is_zero(x: &[f64]) -> bool {
    x.iter().all(|&c| c == 0.0)
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn points_for(
    cfg: &CheckConfig,
    dim: usize,
    axiom: Axiom,
) -> (rand_chacha::ChaCha8Rng, Vec<Vec<f64>>) {
    let mut rng = stream(cfg, axiom.index() as u64);
    let pts = raw_points(cfg, dim, &mut rng);
    (rng, pts)
}

/// Runs the requested checks on a fuzzy norm. Generator labels (A0–A3) are
/// checked on the section `x ↦ N(x, 1)`; crisp labels on `p_α` with
/// `α = cfg.alpha`; `ascending` on an α-cut table over sampled points.
pub fn check_fuzzy_norm_axioms<N>(n: &N, cfg: &CheckConfig, which: &[Axiom]) -> Vec<CheckReport>
where
    N: FuzzyNormEval + Sync + ?Sized,
{
    which
        .iter()
        .map(|&axiom| match axiom {
            Axiom::N1 => check_n1(n, cfg),
            Axiom::N2 => check_n2(n, cfg),
            Axiom::N3 => check_n3(n, cfg),
            Axiom::N4 => check_n4(n, cfg),
            Axiom::N5 => check_n5(n, cfg),
            Axiom::N6 => check_n6(n, cfg),
            Axiom::N6Prime => check_n6_prime(n, cfg),
            Axiom::N7 => check_n7(n, cfg),
            Axiom::A0 | Axiom::A1 | Axiom::A2 | Axiom::A3 => {
                check_generator_axiom(&Section(n), cfg, axiom)
            }
            Axiom::CrispDefinite | Axiom::CrispHomogeneous | Axiom::CrispTriangle => {
                let p = alpha_cut_norm(n, cfg.alpha, cfg.tol);
                check_crisp_axiom(&p, n.dim(), cfg, axiom).with_note(format!(
                    "checked on the alpha-cut norm at alpha = {}",
                    cfg.alpha
                ))
            }
            Axiom::Ascending => check_ascending_on_samples(n, cfg),
        })
        .collect()
}

/// A0–A3 on an arbitrary membership function.
pub fn check_generator_axioms<M: Membership + ?Sized>(
    f: &M,
    cfg: &CheckConfig,
) -> Vec<CheckReport> {
    Axiom::GENERATOR
        .iter()
        .map(|&a| check_generator_axiom(f, cfg, a))
        .collect()
}

fn check_n1<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, n.dim(), Axiom::N1);
    let mut worst = Worst::new();
    for x in &pts {
        let value = n.value(x, 0.0);
        if value != 0.0 {
            worst.offer(value.abs(), || Witness::ZeroTime {
                x: x.clone(),
                value,
            });
        }
    }
    let report = CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N1, cfg)
    };
    worst.finish(report)
}

fn check_n2<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (mut rng, pts) = points_for(cfg, n.dim(), Axiom::N2);
    let origin = vec![0.0; n.dim()];
    let mut times = cfg.t_grid.clone();
    times.extend((0..64).map(|_| 10f64.powf(rng.gen_range(-6.0..6.0))));

    let mut worst = Worst::new();
    for &t in &times {
        let value = n.value(&origin, t);
        if value != 1.0 {
            worst.offer((value - 1.0).abs(), || Witness::OriginNotOne { t, value });
        }
    }

    // Reverse direction: every x ≠ 0 must have some t with N(x, t) < 1.
    let mut stuck: Option<Vec<f64>> = None;
    let mut used = times.len();
    for x in pts.iter().filter(|x| !is_zero(x)) {
        used += 1;
        let m = max_abs(x);
        let found = cfg.t_grid.iter().any(|&t| n.value(x, t) < 1.0)
            || (0..=64).any(|k| n.value(x, m * 2f64.powi(-k)) < 1.0);
        if !found && stuck.is_none() {
            stuck = Some(x.clone());
        }
    }

    let report = CheckReport {
        samples_used: used,
        ..CheckReport::new(Axiom::N2, cfg)
    };
    let report = worst.finish(report);
    match (report.verdict, stuck) {
        (Verdict::Pass, Some(x)) => CheckReport {
            verdict: Verdict::Inconclusive,
            ..report.with_note(format!("no t with N(x,t) < 1 found for x = {x:?}"))
        },
        (_, _) => report,
    }
}

fn check_n3<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (mut rng, pts) = points_for(cfg, n.dim(), Axiom::N3);
    let mut worst = Worst::new();
    let mut used = 0;
    for x in &pts {
        let mut lambdas = HOMOGENEITY_LAMBDAS.to_vec();
        let extra: f64 = rng.gen_range(0.01..5.0);
        lambdas.push(if rng.gen_bool(0.5) { extra } else { -extra });
        for lambda in lambdas {
            let t = cfg.t_grid[rng.gen_range(0..cfg.t_grid.len())];
            let scaled = n.value(&scale(x, lambda), t);
            let rescaled = n.value(x, t / lambda.abs());
            used += 1;
            let diff = (scaled - rescaled).abs();
            if !(diff <= ROUNDING_SLACK) {
                worst.offer(diff, || Witness::Scaling {
                    x: x.clone(),
                    lambda,
                    t,
                    scaled,
                    rescaled,
                });
            }
        }
    }
    worst.finish(CheckReport {
        samples_used: used,
        ..CheckReport::new(Axiom::N3, cfg)
    })
}

fn check_n4<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (mut rng, pts) = points_for(cfg, n.dim(), Axiom::N4);
    let mut worst = Worst::new();
    let grid = &cfg.t_grid;
    for x in &pts {
        let y = &pts[rng.gen_range(0..pts.len())];
        // Shrinking both points keeps some pairs inside the interesting part
        // of narrow level sets.
        let shrink = if rng.gen_bool(0.5) {
            10f64.powf(rng.gen_range(-3.0..0.0))
        } else {
            1.0
        };
        let (x, y) = (scale(x, shrink), scale(y, shrink));
        let t = grid[rng.gen_range(0..grid.len())];
        let s = grid[rng.gen_range(0..grid.len())];
        let combined = n.value(&add(&x, &y), t + s);
        let (left, right) = (n.value(&x, t), n.value(&y, s));
        let bound = left.min(right);
        if !(combined >= bound - ROUNDING_SLACK) {
            worst.offer(bound - combined, || Witness::Subadditive {
                x,
                y,
                t,
                s,
                combined,
                left,
                right,
            });
        }
    }
    worst.finish(CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N4, cfg)
    })
}

fn check_n5<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, n.dim(), Axiom::N5);
    let mut report = CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N5, cfg)
    };
    for x in &pts {
        let mut t = 1.0_f64;
        let mut reached = n.value(x, t) >= 1.0 - LIMIT_SLACK;
        for _ in 0..LIMIT_STEPS {
            if reached {
                break;
            }
            t *= 2.0;
            reached = n.value(x, t) >= 1.0 - LIMIT_SLACK;
        }
        if !reached {
            report.verdict = Verdict::Inconclusive;
            report.note = Some(format!(
                "N(x,t) stayed below 1 - {LIMIT_SLACK:e} up to t = {t:e} for x = {x:?} (value {})",
                n.value(x, t)
            ));
            break;
        }
    }
    report
}

fn check_n6<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, n.dim(), Axiom::N6);
    let mut worst = Worst::new();
    for x in pts.iter().filter(|x| !is_zero(x)) {
        let m = max_abs(x);
        // N(x, ·) is non-decreasing, so positivity at the smallest scanned t
        // means positivity across the whole scan.
        let t = m * 2f64.powi(-N6_DEPTH);
        let value = n.value(x, t);
        if value > 0.0 {
            worst.offer(value, || Witness::PositiveNearZero {
                x: x.clone(),
                t,
                value,
            });
        }
    }
    let report = CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N6, cfg)
    };
    worst.finish(report).with_note(format!(
        "scan t = max|x_i| * 2^-k, k = 0..={N6_DEPTH}; fail means N(x,t) > 0 throughout"
    ))
}

fn check_n6_prime<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, n.dim(), Axiom::N6Prime);
    let mut worst = Worst::new();
    for x in pts.iter().filter(|x| !is_zero(x)) {
        let mut t = max_abs(x);
        let mut value = n.value(x, t);
        for _ in 0..LIMIT_STEPS {
            if value <= LIMIT_SLACK {
                break;
            }
            t *= 0.5;
            value = n.value(x, t);
        }
        if value > LIMIT_SLACK {
            worst.offer(value, || Witness::NoDecay {
                x: x.clone(),
                t,
                value,
            });
        }
    }
    worst.finish(CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N6Prime, cfg)
    })
}

fn check_n7<N: FuzzyNormEval + ?Sized>(n: &N, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, n.dim(), Axiom::N7);
    let mut worst = Worst::new();
    let factors = log_spaced(1e-3, 1e3, N7_STEPS);
    for x in pts.iter().filter(|x| !is_zero(x)) {
        let m = max_abs(x);
        let ts: Vec<f64> = factors.iter().map(|g| g * m).collect();
        let vs: Vec<f64> = ts.iter().map(|&t| n.value(x, t)).collect();
        for k in 0..ts.len() - 1 {
            let (l, r) = (vs[k], vs[k + 1]);
            if r - l > cfg.gap {
                let (a, b, fa, fb) = refine_jump(n, x, ts[k], ts[k + 1], l, r);
                if fb - fa > cfg.gap {
                    worst.offer(fb - fa, || Witness::Jump {
                        x: x.clone(),
                        t_left: a,
                        t_right: b,
                        left: fa,
                        right: fb,
                    });
                }
            }
            let inside = |v: f64| v > 0.0 && v < 1.0;
            if inside(l) && inside(r) && r <= l {
                worst.offer(l - r, || Witness::NotIncreasing {
                    x: x.clone(),
                    t_left: ts[k],
                    t_right: ts[k + 1],
                    left: l,
                    right: r,
                });
            }
        }
    }
    worst.finish(CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::N7, cfg)
    })
}

/// Narrows `[a, b]` by always keeping the half with the larger increase.
fn refine_jump<N: FuzzyNormEval + ?Sized>(
    n: &N,
    x: &[f64],
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> (f64, f64, f64, f64) {
    for _ in 0..N7_REFINE {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        let fm = n.value(x, mid);
        if fm - fa >= fb - fm {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    (a, b, fa, fb)
}

fn check_ascending_on_samples<N>(n: &N, cfg: &CheckConfig) -> CheckReport
where
    N: FuzzyNormEval + Sync + ?Sized,
{
    let (_, pts) = points_for(cfg, n.dim(), Axiom::Ascending);
    let points: Vec<Vector> = pts
        .into_iter()
        .take(ASCENDING_POINTS)
        .map(Vector::from_raw)
        .collect();
    let step = 0.96 / (ASCENDING_ALPHAS - 1) as f64;
    let alphas: Vec<f64> = (0..ASCENDING_ALPHAS)
        .map(|k| 0.02 + step * k as f64)
        .collect();
    match decompose_table(n, &alphas, &points, cfg.tol) {
        Ok(table) => CheckReport {
            seed: cfg.seed,
            ..check_ascending_family(&table)
        },
        Err(e) => CheckReport {
            verdict: Verdict::Inconclusive,
            samples_used: points.len(),
            ..CheckReport::new(Axiom::Ascending, cfg)
                .with_note(format!("alpha-cut table failed: {e}"))
        },
    }
}

pub(crate) fn check_generator_axiom<M: Membership + ?Sized>(
    f: &M,
    cfg: &CheckConfig,
    axiom: Axiom,
) -> CheckReport {
    match axiom {
        Axiom::A0 => check_a0(f, cfg),
        Axiom::A1 => check_a1(f, cfg),
        Axiom::A2 => check_a2(f, cfg),
        Axiom::A3 => check_a3(f, cfg),
        other => unreachable!("{other} is not a generator axiom"),
    }
}

fn check_a0<M: Membership + ?Sized>(f: &M, cfg: &CheckConfig) -> CheckReport {
    let dim = f.dim();
    let (mut rng, pts) = points_for(cfg, dim, Axiom::A0);
    let mut worst = Worst::new();
    let mut used = 0;
    let probe = |x: Vec<f64>, y: Vec<f64>, lambda: f64, worst: &mut Worst| {
        let combined = f.membership(&convex(&x, &y, lambda));
        let (left, right) = (f.membership(&x), f.membership(&y));
        let bound = left.min(right);
        if !(combined >= bound - ROUNDING_SLACK) {
            worst.offer(bound - combined, || Witness::Quasiconcave {
                x,
                y,
                lambda,
                combined,
                left,
                right,
            });
        }
    };

    // Deterministic ray scan: midpoints of (0, ρ·(±eᵢ)).
    let origin = vec![0.0; dim];
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            for k in 1..=RAY_STEPS {
                let rho = k as f64 * std::f64::consts::PI / 8.0;
                let mut a = origin.clone();
                a[i] = sign * rho;
                probe(a, origin.clone(), 0.5, &mut worst);
                used += 1;
            }
        }
    }

    for x in &pts {
        let y = &pts[rng.gen_range(0..pts.len())];
        let shrink = if rng.gen_bool(0.5) {
            10f64.powf(rng.gen_range(-3.0..0.0))
        } else {
            1.0
        };
        let (x, y) = (scale(x, shrink), scale(y, shrink));
        for &lambda in &cfg.lambda_grid {
            probe(x.clone(), y.clone(), lambda, &mut worst);
            used += 1;
        }
    }
    worst.finish(CheckReport {
        samples_used: used,
        ..CheckReport::new(Axiom::A0, cfg)
    })
}

fn check_a1<M: Membership + ?Sized>(f: &M, cfg: &CheckConfig) -> CheckReport {
    let dim = f.dim();
    let (_, pts) = points_for(cfg, dim, Axiom::A1);
    let mut worst = Worst::new();
    let at_origin = f.membership(&vec![0.0; dim]);
    if at_origin != 1.0 {
        worst.offer(f64::INFINITY, || Witness::GeneratorOrigin {
            value: at_origin,
        });
    }
    for x in pts.iter().filter(|x| !is_zero(x)) {
        let escapes = (0..=LIMIT_STEPS).any(|k| f.membership(&scale(x, 2f64.powi(k as i32))) < 1.0);
        if !escapes {
            worst.offer(0.0, || Witness::RayDegenerate {
                x: x.clone(),
                max_power: LIMIT_STEPS,
            });
        }
    }
    worst.finish(CheckReport {
        samples_used: pts.len() + 1,
        ..CheckReport::new(Axiom::A1, cfg)
    })
}

fn check_a2<M: Membership + ?Sized>(f: &M, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, f.dim(), Axiom::A2);
    let mut report = CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::A2, cfg)
    };
    let close = |x: &[f64], t: f64| f.membership(&scale(x, t)) >= 1.0 - LIMIT_SLACK;
    for x in &pts {
        let mut t = 1.0_f64;
        let mut settled = false;
        for _ in 0..=LIMIT_STEPS {
            if close(x, t) && (1..=A2_CONFIRM).all(|k| close(x, t * 2f64.powi(-(k as i32)))) {
                settled = true;
                break;
            }
            t *= 0.5;
        }
        if !settled {
            report.verdict = Verdict::Inconclusive;
            report.note = Some(format!(
                "f(t x) did not settle near 1 down to t = {t:e} for x = {x:?}"
            ));
            break;
        }
    }
    report
}

fn check_a3<M: Membership + ?Sized>(f: &M, cfg: &CheckConfig) -> CheckReport {
    let (_, pts) = points_for(cfg, f.dim(), Axiom::A3);
    let mut worst = Worst::new();
    for x in &pts {
        let neg: Vec<f64> = x.iter().map(|c| -c).collect();
        let (value, mirrored) = (f.membership(x), f.membership(&neg));
        if value != mirrored {
            worst.offer((value - mirrored).abs(), || Witness::Asymmetric {
                x: x.clone(),
                value,
                mirrored,
            });
        }
    }
    worst.finish(CheckReport {
        samples_used: pts.len(),
        ..CheckReport::new(Axiom::A3, cfg)
    })
}

use rand::Rng;

use super::sampling::{raw_points, stream};
use super::{Axiom, CheckConfig, CheckReport, Verdict, Witness, Worst};
use crate::correspondence::FuzzyNormEval;
use crate::decomposition::{alpha_cut_unchecked, AlphaCutTable};
use crate::generators::scale;

const HOMOGENEITY_LAMBDAS: [f64; 4] = [-2.0, -0.5, 0.5, 3.0];

/// `x ↦ p_α(x)` as a plain function. Failed α-cuts evaluate to NaN, which
/// every crisp check treats as a violation.
pub fn alpha_cut_norm<N: FuzzyNormEval + ?Sized>(
    n: &N,
    alpha: f64,
    tol: f64,
) -> impl Fn(&[f64]) -> f64 + '_ {
    move |x: &[f64]| {
        alpha_cut_unchecked(n, x, alpha, tol)
            .map(|c| c.value)
            .unwrap_or(f64::NAN)
    }
}

/// Definiteness, absolute homogeneity and the triangle inequality of a
/// candidate norm `p` on ℝ^dim, each within the `cfg.tol` budgets.
pub fn check_crisp_norm_axioms(
    p: &dyn Fn(&[f64]) -> f64,
    dim: usize,
    cfg: &CheckConfig,
) -> Vec<CheckReport> {
    Axiom::CRISP
        .iter()
        .map(|&a| check_crisp_axiom(p, dim, cfg, a))
        .collect()
}

pub(crate) fn check_crisp_axiom(
    p: &dyn Fn(&[f64]) -> f64,
    dim: usize,
    cfg: &CheckConfig,
    axiom: Axiom,
) -> CheckReport {
    let mut rng = stream(cfg, axiom.index() as u64);
    let pts = raw_points(cfg, dim, &mut rng);
    let tol = cfg.tol;
    let mut worst = Worst::new();
    let mut used = 0;
    match axiom {
        Axiom::CrispDefinite => {
            for x in &pts {
                let value = p(x);
                used += 1;
                if x.iter().all(|&c| c == 0.0) {
                    if !(value <= tol) {
                        worst.offer(value, || Witness::CrispValue {
                            x: x.clone(),
                            value,
                        });
                    }
                } else if !(value > tol) {
                    worst.offer(tol - value, || Witness::CrispValue {
                        x: x.clone(),
                        value,
                    });
                }
            }
        }
        Axiom::CrispHomogeneous => {
            for x in &pts {
                let base = p(x);
                for lambda in HOMOGENEITY_LAMBDAS {
                    let scaled = p(&scale(x, lambda));
                    used += 1;
                    let excess = (scaled - lambda.abs() * base).abs() - (1.0 + lambda.abs()) * tol;
                    if !(excess <= 0.0) {
                        worst.offer(excess, || Witness::CrispScaling {
                            x: x.clone(),
                            lambda,
                            scaled,
                            base,
                        });
                    }
                }
            }
        }
        Axiom::CrispTriangle => {
            for x in &pts {
                let y = &pts[rng.gen_range(0..pts.len())];
                let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                let (combined, left, right) = (p(&sum), p(x), p(y));
                used += 1;
                let excess = combined - (left + right + 3.0 * tol);
                if !(excess <= 0.0) {
                    worst.offer(excess, || Witness::CrispTriangle {
                        x: x.clone(),
                        y: y.clone(),
                        combined,
                        left,
                        right,
                    });
                }
            }
        }
        other => unreachable!("{other} is not a crisp-norm axiom"),
    }
    worst.finish(CheckReport {
        samples_used: used,
        ..CheckReport::new(axiom, cfg)
    })
}

/// Passes iff every column of the table is non-decreasing in α within
/// `2·tol`.
pub fn check_ascending_family(table: &AlphaCutTable) -> CheckReport {
    let tol = table.tol();
    let mut worst = Worst::new();
    let rows = table.rows();
    for j in 0..table.points().len() {
        for i in 0..rows.len().saturating_sub(1) {
            let (lower, upper) = (rows[i][j], rows[i + 1][j]);
            if !(upper >= lower - 2.0 * tol) {
                worst.offer(lower - upper, || Witness::Descending {
                    point_index: j,
                    alpha_low: table.alphas()[i],
                    alpha_high: table.alphas()[i + 1],
                    lower,
                    upper,
                });
            }
        }
    }
    let report = CheckReport {
        axiom: Axiom::Ascending,
        verdict: Verdict::Pass,
        witness: None,
        samples_used: rows.len() * table.points().len(),
        seed: 0,
        note: None,
    };
    worst.finish(report)
}

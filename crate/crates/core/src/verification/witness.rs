use serde::Serialize;

use super::{CheckConfig, LIMIT_SLACK, ROUNDING_SLACK};
use crate::correspondence::{FuzzyNormEval, Section};
use crate::decomposition::AlphaCutTable;
use crate::generators::{convex, scale, Membership};

/// Concrete inputs exhibiting a violation, with the values observed when
/// the check ran.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `N(x, 0) ≠ 0`.
    ZeroTime { x: Vec<f64>, value: f64 },
    /// `N(0, t) ≠ 1` for some `t > 0`.
    OriginNotOne { t: f64, value: f64 },
    /// `N(λx, t) ≠ N(x, t/|λ|)`.
    Scaling {
        x: Vec<f64>,
        lambda: f64,
        t: f64,
        scaled: f64,
        rescaled: f64,
    },
    /// `N(x+y, t+s) < min(N(x,t), N(y,s))`.
    Subadditive {
        x: Vec<f64>,
        y: Vec<f64>,
        t: f64,
        s: f64,
        combined: f64,
        left: f64,
        right: f64,
    },
    /// `N(x, t) > 0` for `x ≠ 0` down to the smallest scanned `t`.
    PositiveNearZero { x: Vec<f64>, t: f64, value: f64 },
    /// `N(x, t)` still far from 0 at a tiny `t`.
    NoDecay { x: Vec<f64>, t: f64, value: f64 },
    /// The t-curve jumps by more than the gap threshold inside a
    /// negligibly small interval.
    Jump {
        x: Vec<f64>,
        t_left: f64,
        t_right: f64,
        left: f64,
        right: f64,
    },
    /// The t-curve fails to increase strictly inside `{0 < N < 1}`.
    NotIncreasing {
        x: Vec<f64>,
        t_left: f64,
        t_right: f64,
        left: f64,
        right: f64,
    },
    /// `f(λx + (1−λ)y) < min(f(x), f(y))`.
    Quasiconcave {
        x: Vec<f64>,
        y: Vec<f64>,
        lambda: f64,
        combined: f64,
        left: f64,
        right: f64,
    },
    /// `f(0) ≠ 1`.
    GeneratorOrigin { value: f64 },
    /// `f(2ᵏ x) = 1` for every `k ≤ max_power` although `x ≠ 0`.
    RayDegenerate { x: Vec<f64>, max_power: u32 },
    /// `f(−x) ≠ f(x)`.
    Asymmetric {
        x: Vec<f64>,
        value: f64,
        mirrored: f64,
    },
    /// `p(x) ≤ tol` for `x ≠ 0`, or `p(0) > tol`.
    CrispValue { x: Vec<f64>, value: f64 },
    /// `|p(λx) − |λ| p(x)| > (1 + |λ|)·tol`.
    CrispScaling {
        x: Vec<f64>,
        lambda: f64,
        scaled: f64,
        base: f64,
    },
    /// `p(x+y) > p(x) + p(y) + 3·tol`.
    CrispTriangle {
        x: Vec<f64>,
        y: Vec<f64>,
        combined: f64,
        left: f64,
        right: f64,
    },
    /// `p_{α_high}(x_j) < p_{α_low}(x_j) − 2·tol`.
    Descending {
        point_index: usize,
        alpha_low: f64,
        alpha_high: f64,
        lower: f64,
        upper: f64,
    },
}

fn is_zero(x: &[f64]) -> bool {
    x.iter().all(|&c| c == 0.0)
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

impl Witness {
    /// Re-evaluates a fuzzy-norm (or generator) witness on `n`.
    pub fn replays_on_norm<N: FuzzyNormEval + ?Sized>(&self, n: &N, cfg: &CheckConfig) -> bool {
        match self {
            Witness::ZeroTime { x, .. } => n.value(x, 0.0) != 0.0,
            Witness::OriginNotOne { t, .. } => *t > 0.0 && n.value(&vec![0.0; n.dim()], *t) != 1.0,
            Witness::Scaling { x, lambda, t, .. } => {
                let scaled = n.value(&scale(x, *lambda), *t);
                let rescaled = n.value(x, t / lambda.abs());
                !((scaled - rescaled).abs() <= ROUNDING_SLACK)
            }
            Witness::Subadditive { x, y, t, s, .. } => {
                let combined = n.value(&add(x, y), t + s);
                let bound = n.value(x, *t).min(n.value(y, *s));
                !(combined >= bound - ROUNDING_SLACK)
            }
            Witness::PositiveNearZero { x, t, .. } => !is_zero(x) && n.value(x, *t) > 0.0,
            Witness::NoDecay { x, t, .. } => !is_zero(x) && n.value(x, *t) > LIMIT_SLACK,
            Witness::Jump {
                x, t_left, t_right, ..
            } => t_left < t_right && n.value(x, *t_right) - n.value(x, *t_left) > cfg.gap,
            Witness::NotIncreasing {
                x, t_left, t_right, ..
            } => {
                let (l, r) = (n.value(x, *t_left), n.value(x, *t_right));
                t_left < t_right && l > 0.0 && l < 1.0 && r > 0.0 && r < 1.0 && r <= l
            }
            _ => self.replays_on_generator(&Section(n), cfg),
        }
    }

    /// Re-evaluates a generator witness on `f`.
    pub fn replays_on_generator<M: Membership + ?Sized>(&self, f: &M, _cfg: &CheckConfig) -> bool {
        match self {
            Witness::Quasiconcave { x, y, lambda, .. } => {
                let combined = f.membership(&convex(x, y, *lambda));
                let bound = f.membership(x).min(f.membership(y));
                !(combined >= bound - ROUNDING_SLACK)
            }
            Witness::GeneratorOrigin { .. } => f.membership(&vec![0.0; f.dim()]) != 1.0,
            Witness::RayDegenerate { x, max_power } => {
                !is_zero(x)
                    && (0..=*max_power).all(|k| f.membership(&scale(x, 2f64.powi(k as i32))) == 1.0)
            }
            Witness::Asymmetric { x, .. } => {
                let neg: Vec<f64> = x.iter().map(|c| -c).collect();
                f.membership(x) != f.membership(&neg)
            }
            _ => false,
        }
    }

    /// Re-evaluates a crisp-norm witness on `p`.
    pub fn replays_on_crisp(&self, p: &dyn Fn(&[f64]) -> f64, cfg: &CheckConfig) -> bool {
        let tol = cfg.tol;
        match self {
            Witness::CrispValue { x, .. } => {
                let value = p(x);
                if is_zero(x) {
                    !(value <= tol)
                } else {
                    !(value > tol)
                }
            }
            Witness::CrispScaling { x, lambda, .. } => {
                let scaled = p(&scale(x, *lambda));
                let base = p(x);
                !((scaled - lambda.abs() * base).abs() <= (1.0 + lambda.abs()) * tol)
            }
            Witness::CrispTriangle { x, y, .. } => {
                let combined = p(&add(x, y));
                !(combined <= p(x) + p(y) + 3.0 * tol)
            }
            _ => false,
        }
    }

    /// Re-reads an ascending-family witness from `table`.
    pub fn replays_on_table(&self, table: &AlphaCutTable) -> bool {
        match self {
            Witness::Descending {
                point_index,
                alpha_low,
                alpha_high,
                ..
            } => {
                let find = |a: f64| table.alphas().iter().position(|&x| x == a);
                match (find(*alpha_low), find(*alpha_high)) {
                    (Some(i), Some(k)) if i < k && *point_index < table.points().len() => {
                        table.value(k, *point_index)
                            < table.value(i, *point_index) - 2.0 * table.tol()
                    }
                    _ => false,
                }
            }
            _ => false,
        }
    }
}

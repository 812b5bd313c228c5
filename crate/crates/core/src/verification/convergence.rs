use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::CheckConfig;
use crate::correspondence::FuzzyNormEval;
use crate::error::{Error, Result};
use crate::generators::{check_dim, max_abs, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// `x_n = v / n`
    InverseN,
    /// `x_n = v`
    Constant,
    /// `x_n = v` for odd `n`, `v / n` for even `n`.
    Alternating,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::InverseN => "inverse_n",
            SequenceKind::Constant => "constant",
            SequenceKind::Alternating => "alternating",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse_n" => Ok(SequenceKind::InverseN),
            "constant" => Ok(SequenceKind::Constant),
            "alternating" => Ok(SequenceKind::Alternating),
            other => Err(Error::InvalidParameter {
                name: "sequence",
                reason: format!(
                    "unknown rule {other:?} (expected inverse_n, constant or alternating)"
                ),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceRule {
    kind: SequenceKind,
    base: Vector,
}

impl SequenceRule {
    pub fn new(kind: SequenceKind, base: Vector) -> Result<Self> {
        if kind != SequenceKind::InverseN && base.is_zero() {
            return Err(Error::InvalidParameter {
                name: "vector",
                reason: format!("{kind} needs a nonzero base vector"),
            });
        }
        Ok(SequenceRule { kind, base })
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn base(&self) -> &Vector {
        &self.base
    }

    /// The `n`-th term, `n ≥ 1`.
    pub fn term(&self, n: usize) -> Vec<f64> {
        let v = self.base.components();
        let shrunk = || v.iter().map(|c| c / n as f64).collect();
        match self.kind {
            SequenceKind::InverseN => shrunk(),
            SequenceKind::Constant => v.to_vec(),
            SequenceKind::Alternating if n % 2 == 1 => v.to_vec(),
            SequenceKind::Alternating => shrunk(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeVerdict {
    pub t: f64,
    /// First index from which every term satisfies `N(x_n, t) ≥ 1 − ε`;
    /// `None` if the last term fails.
    pub threshold: Option<usize>,
    pub converged: bool,
    /// Last failing index and its value, if any term failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_miss: Option<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rule: SequenceKind,
    pub n_max: usize,
    /// Largest coordinate magnitude along the sequence; times and the crisp
    /// threshold are expressed relative to it.
    pub scale: f64,
    pub per_t: Vec<TimeVerdict>,
    pub fuzzy: bool,
    pub crisp: bool,
    pub crisp_threshold: Option<usize>,
    pub agree: bool,
}

/// First index after the last `n` failing `ok`, if it leaves a nonempty tail.
fn threshold(n_max: usize, ok: impl Fn(usize) -> bool) -> (Option<usize>, Option<usize>) {
    let last_miss = (1..=n_max).rev().find(|&n| !ok(n));
    match last_miss {
        None => (Some(1), None),
        Some(m) if m < n_max => (Some(m + 1), Some(m)),
        Some(m) => (None, Some(m)),
    }
}

/// Compares fuzzy convergence `N(x_n, t) → 1` with crisp convergence
/// `x_n → 0` on the finite horizon `1..=n_max`.
///
/// A verdict is "convergent" when the tolerance band is entered no later
/// than `n_max / 2` and never left, so that at least the second half of the
/// horizon supports it. Times are `scale · c` for `c` in `cfg.conv_scales`.
pub fn check_fuzzy_convergence<N: FuzzyNormEval + ?Sized>(
    n: &N,
    rule: &SequenceRule,
    n_max: usize,
    cfg: &CheckConfig,
) -> Result<ConvergenceReport> {
    check_dim(n.dim(), rule.base.dim())?;
    if n_max < 10 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            reason: format!("must be at least 10, got {n_max}"),
        });
    }
    let terms: Vec<Vec<f64>> = (1..=n_max).map(|k| rule.term(k)).collect();
    let term = |k: usize| &terms[k - 1];
    let mut scale = terms.iter().map(|x| max_abs(x)).fold(0.0, f64::max);
    if scale == 0.0 {
        scale = 1.0;
    }
    let half = n_max / 2;
    let eps = cfg.eps_conv;

    let per_t: Vec<TimeVerdict> = cfg
        .conv_scales
        .iter()
        .map(|&c| {
            let t = scale * c;
            let (threshold, miss) = threshold(n_max, |k| n.value(term(k), t) >= 1.0 - eps);
            TimeVerdict {
                t,
                threshold,
                converged: threshold.is_some_and(|k| k <= half),
                last_miss: miss.map(|k| (k, n.value(term(k), t))),
            }
        })
        .collect();
    let fuzzy = per_t.iter().all(|v| v.converged);

    let (crisp_threshold, _) = threshold(n_max, |k| max_abs(term(k)) <= eps * scale);
    let crisp = crisp_threshold.is_some_and(|k| k <= half);

    Ok(ConvergenceReport {
        rule: rule.kind,
        n_max,
        scale,
        per_t,
        fuzzy,
        crisp,
        crisp_threshold,
        agree: fuzzy == crisp,
    })
}

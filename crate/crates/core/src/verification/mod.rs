//! Seeded property checks for the fuzzy-norm and generator axioms.
//!
//! Every check draws its inputs from a ChaCha stream derived from
//! `(seed, axiom)`, so identical configurations give identical reports.
//! Limit axioms (N5, N6, N6′, A1, A2) can only be observed on a finite
//! horizon; where a finite search cannot decide, the verdict is
//! [`Verdict::Inconclusive`] rather than a guess.
//!
//! A failing report always carries a [`Witness`] that can be replayed
//! against the same subject in isolation.

mod axioms;
mod continuity;
mod convergence;
mod crisp;
mod roundtrip;
mod sampling;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use axioms::{check_fuzzy_norm_axioms, check_generator_axioms};
pub use continuity::{probe_continuity, probe_t_continuity, Continuity, ContinuityProbe};
pub use convergence::{
    check_fuzzy_convergence, ConvergenceReport, SequenceKind, SequenceRule, TimeVerdict,
};
pub use crisp::{alpha_cut_norm, check_ascending_family, check_crisp_norm_axioms};
pub use roundtrip::{check_round_trip, RoundTripReport};
pub use sampling::{log_spaced, sample_points};
pub use witness::Witness;

use crate::error::{Error, Result};

/// Violations smaller than this are attributed to rounding in N3, N4 and A0.
pub const ROUNDING_SLACK: f64 = 1e-12;

/// Distance from the limit value accepted by the finite-horizon limit
/// checks (N5, N6′, A2).
pub const LIMIT_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub samples: usize,
    /// Tolerance for α-cut evaluations and crisp-norm checks.
    pub tol: f64,
    pub t_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    /// Vectors are sampled uniformly from `[-box, box]^dim`.
    #[serde(rename = "box")]
    pub box_radius: f64,
    /// Jump threshold for N7 and the continuity probe.
    pub gap: f64,
    /// α used when crisp-norm labels are requested on a fuzzy norm.
    pub alpha: f64,
    /// Closeness to 1 required by the fuzzy convergence verdict.
    pub eps_conv: f64,
    /// Convergence is judged at `t = scale · c` for each factor `c`, where
    /// `scale` is the largest coordinate magnitude along the sequence.
    pub conv_scales: Vec<f64>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            samples: 2000,
            tol: 1e-9,
            t_grid: log_spaced(1e-4, 1e4, 16),
            lambda_grid: (1..=9).map(|k| k as f64 / 10.0).collect(),
            box_radius: 10.0,
            gap: 0.1,
            alpha: 0.5,
            eps_conv: 1e-3,
            conv_scales: vec![1.0, 10.0, 100.0, 1000.0],
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: &str| {
            Err(Error::InvalidParameter {
                name,
                reason: reason.to_string(),
            })
        };
        if self.samples == 0 {
            return bad("samples", "must be at least 1");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidTolerance(self.tol));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return bad("t_grid", "must be a nonempty list of positive reals");
        }
        if self.lambda_grid.is_empty() || self.lambda_grid.iter().any(|l| !(*l > 0.0 && *l < 1.0)) {
            return bad("lambda_grid", "must be a nonempty list of reals in (0,1)");
        }
        if !(self.box_radius.is_finite() && self.box_radius > 0.0) {
            return bad("box", "must be positive and finite");
        }
        if !(self.gap > 0.0 && self.gap < 1.0) {
            return bad("gap", "must lie in (0,1)");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !(self.eps_conv > 0.0 && self.eps_conv < 1.0) {
            return bad("eps_conv", "must lie in (0,1)");
        }
        if self.conv_scales.is_empty()
            || self
                .conv_scales
                .iter()
                .any(|c| !(c.is_finite() && *c > 0.0))
        {
            return bad("conv_scales", "must be a nonempty list of positive reals");
        }
        Ok(())
    }
}

/// Labels of every property the harness can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    N1,
    N2,
    N3,
    N4,
    N5,
    N6,
    #[serde(rename = "N6'")]
    N6Prime,
    N7,
    A0,
    A1,
    A2,
    A3,
    #[serde(rename = "crisp-definite")]
    CrispDefinite,
    #[serde(rename = "crisp-homogeneous")]
    CrispHomogeneous,
    #[serde(rename = "crisp-triangle")]
    CrispTriangle,
    #[serde(rename = "ascending")]
    Ascending,
}

impl Axiom {
    /// Catalogue order; label ranges such as `N1..N5` follow it.
    pub const ALL: [Axiom; 16] = [
        Axiom::N1,
        Axiom::N2,
        Axiom::N3,
        Axiom::N4,
        Axiom::N5,
        Axiom::N6,
        Axiom::N6Prime,
        Axiom::N7,
        Axiom::A0,
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::CrispDefinite,
        Axiom::CrispHomogeneous,
        Axiom::CrispTriangle,
        Axiom::Ascending,
    ];

    pub const FUZZY_NORM: [Axiom; 8] = [
        Axiom::N1,
        Axiom::N2,
        Axiom::N3,
        Axiom::N4,
        Axiom::N5,
        Axiom::N6,
        Axiom::N6Prime,
        Axiom::N7,
    ];

    pub const GENERATOR: [Axiom; 4] = [Axiom::A0, Axiom::A1, Axiom::A2, Axiom::A3];

    pub const CRISP: [Axiom; 3] = [
        Axiom::CrispDefinite,
        Axiom::CrispHomogeneous,
        Axiom::CrispTriangle,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::N1 => "N1",
            Axiom::N2 => "N2",
            Axiom::N3 => "N3",
            Axiom::N4 => "N4",
            Axiom::N5 => "N5",
            Axiom::N6 => "N6",
            Axiom::N6Prime => "N6'",
            Axiom::N7 => "N7",
            Axiom::A0 => "A0",
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::CrispDefinite => "crisp-definite",
            Axiom::CrispHomogeneous => "crisp-homogeneous",
            Axiom::CrispTriangle => "crisp-triangle",
            Axiom::Ascending => "ascending",
        }
    }

    fn index(self) -> usize {
        Axiom::ALL.iter().position(|&a| a == self).expect("listed")
    }

    /// Parses a comma-separated list of labels and `A..B` ranges.
    pub fn parse_list(text: &str) -> Result<Vec<Axiom>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((a, b)) = item.split_once("..") {
                let (a, b) = (a.trim().parse::<Axiom>()?, b.trim().parse::<Axiom>()?);
                if a.index() > b.index() {
                    return Err(Error::InvalidParameter {
                        name: "axioms",
                        reason: format!("empty range {item}"),
                    });
                }
                out.extend_from_slice(&Axiom::ALL[a.index()..=b.index()]);
            } else {
                out.push(item.parse()?);
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|a| seen.insert(*a));
        Ok(out)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().replace('′', "'");
        match normalized.as_str() {
            "N6p" | "N6prime" => return Ok(Axiom::N6Prime),
            _ => {}
        }
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.label().eq_ignore_ascii_case(&normalized))
            .ok_or_else(|| Error::InvalidParameter {
                name: "axioms",
                reason: format!("unknown label {s:?}"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples_used: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn new(axiom: Axiom, cfg: &CheckConfig) -> Self {
        CheckReport {
            axiom,
            verdict: Verdict::Pass,
            witness: None,
            samples_used: 0,
            seed: cfg.seed,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Keeps the most severe violation offered so far. Ties keep the earliest.
struct Worst {
    severity: f64,
    witness: Option<Witness>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            severity: f64::NEG_INFINITY,
            witness: None,
        }
    }

    /// Records a violation; callers only offer actual violations.
    fn offer(&mut self, severity: f64, witness: impl FnOnce() -> Witness) {
        let severity = if severity.is_nan() {
            f64::INFINITY
        } else {
            severity
        };
        if self.witness.is_none() || severity > self.severity {
            self.severity = severity;
            self.witness = Some(witness());
        }
    }

    fn finish(self, mut report: CheckReport) -> CheckReport {
        if self.witness.is_some() {
            report.verdict = Verdict::Fail;
            report.witness = self.witness;
        }
        report
    }
}

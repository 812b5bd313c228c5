use rand::Rng;
use serde::Serialize;

use super::sampling::{raw_points, stream};
use super::CheckConfig;
use crate::correspondence::{FuzzyNorm, FuzzyNormEval, Induced, Section};
use crate::generators::{scale, Generator, GeneratorKind, Membership};

/// Substream for round-trip sampling, outside the axiom streams.
const ROUND_TRIP_STREAM: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub generator: &'static str,
    pub samples: usize,
    /// Points where `f_{N_f}(x) ≠ f(x)`.
    pub generator_mismatches: usize,
    /// Pairs where `N_{f_N}(x, t) ≠ N(x, t)`.
    pub norm_mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<(Vec<f64>, f64)>,
    pub seed: u64,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.generator_mismatches == 0 && self.norm_mismatches == 0
    }
}

/// Checks both round trips with exact equality on `cfg.samples` points,
/// plus level-set boundary points for indicator generators. Times include
/// `t = 0`, the grid and log-uniform draws.
pub fn check_round_trip(g: &Generator, cfg: &CheckConfig) -> RoundTripReport {
    let mut rng = stream(cfg, ROUND_TRIP_STREAM);
    let mut pts = raw_points(cfg, g.dim(), &mut rng);
    if let GeneratorKind::Indicator { norm, radius } = g.kind() {
        let boundary: Vec<Vec<f64>> = pts
            .iter()
            .filter(|x| x.iter().any(|&c| c != 0.0))
            .take(cfg.samples.div_ceil(10))
            .map(|x| scale(x, radius / norm.value(x)))
            .collect();
        pts.extend(boundary);
    }

    let n = FuzzyNorm::unchecked(g.clone());
    let f_back = Section(&n);
    let n_back = Induced(Section(&n));

    let mut report = RoundTripReport {
        generator: g.kind_name(),
        samples: pts.len(),
        generator_mismatches: 0,
        norm_mismatches: 0,
        first_mismatch: None,
        seed: cfg.seed,
    };
    for (i, x) in pts.iter().enumerate() {
        if f_back.membership(x) != g.membership(x) {
            report.generator_mismatches += 1;
            report.first_mismatch.get_or_insert((x.clone(), 1.0));
        }
        let t = match i % 3 {
            0 if i % 9 == 0 => 0.0,
            0 => cfg.t_grid[rng.gen_range(0..cfg.t_grid.len())],
            _ => 10f64.powf(rng.gen_range(-4.0..4.0)),
        };
        if n_back.value(x, t) != n.value(x, t) {
            report.norm_mismatches += 1;
            report.first_mismatch.get_or_insert((x.clone(), t));
        }
    }
    report
}

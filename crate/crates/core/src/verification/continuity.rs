use serde::Serialize;

use super::CheckConfig;
use crate::correspondence::FuzzyNormEval;
use crate::error::{check_finite_decreasing, Result};
use crate::generators::{check_dim, FnMembership, Membership, Vector};

/// Classification of a function near a point from shrinking shells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Continuity {
    /// Deviation at the smallest radius fell below `100·tol`.
    Continuous {
        deviation: f64,
    },
    /// Deviation stayed above the gap threshold on the smaller half of the
    /// radii; `gap` is the smallest deviation seen there.
    Jump {
        gap: f64,
    },
    Inconclusive {
        deviation: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityProbe {
    pub classification: Continuity,
    pub radii: Vec<f64>,
    /// `max_d |f(x0 + r·d) − f(x0)|` per radius.
    pub deviations: Vec<f64>,
}

/// Samples `f` at `x0 ± r·d` for the coordinate directions and the
/// all-ones diagonal, for each radius `r`.
pub fn probe_continuity<M: Membership + ?Sized>(
    f: &M,
    x0: &Vector,
    radii: &[f64],
    cfg: &CheckConfig,
) -> Result<ContinuityProbe> {
    check_dim(f.dim(), x0.dim())?;
    check_finite_decreasing(radii, 1e-8)?;
    let dim = f.dim();
    let mut directions: Vec<Vec<f64>> = Vec::with_capacity(2 * dim + 2);
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        directions.push(e);
    }
    if dim > 1 {
        directions.push(vec![1.0; dim]);
    }
    let negated: Vec<Vec<f64>> = directions
        .iter()
        .map(|d| d.iter().map(|c| -c).collect())
        .collect();
    directions.extend(negated);

    let x = x0.components();
    let centre = f.membership(x);
    let deviations: Vec<f64> = radii
        .iter()
        .map(|&r| {
            directions
                .iter()
                .map(|d| {
                    let shifted: Vec<f64> = x.iter().zip(d).map(|(a, b)| a + r * b).collect();
                    (f.membership(&shifted) - centre).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect();

    let tail = &deviations[deviations.len() / 2..];
    let last = *deviations.last().expect("radii are nonempty");
    let classification = if tail.iter().all(|&d| d > cfg.gap) {
        Continuity::Jump {
            gap: tail.iter().copied().fold(f64::INFINITY, f64::min),
        }
    } else if last < 100.0 * cfg.tol {
        Continuity::Continuous { deviation: last }
    } else {
        Continuity::Inconclusive { deviation: last }
    };
    Ok(ContinuityProbe {
        classification,
        radii: radii.to_vec(),
        deviations,
    })
}

/// Probes `t ↦ N(x, t)` at `t0`. Times below 0 evaluate to 0, the usual
/// extension of a fuzzy norm to negative `t`.
pub fn probe_t_continuity<N: FuzzyNormEval + ?Sized>(
    n: &N,
    x: &Vector,
    t0: f64,
    radii: &[f64],
    cfg: &CheckConfig,
) -> Result<ContinuityProbe> {
    check_dim(n.dim(), x.dim())?;
    let curve = FnMembership::new(1, |s: &[f64]| {
        if s[0] < 0.0 {
            0.0
        } else {
            n.value(x.components(), s[0])
        }
    });
    probe_continuity(&curve, &Vector::from_raw(vec![t0]), radii, cfg)
}

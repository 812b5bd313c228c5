use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vector::{check_dim, Vector};
use crate::error::{Error, Result};

/// Description of a crisp (weighted) p-norm as read from a spec file.
///
/// `p` is a number `≥ 1` or the string `"inf"`; `weights` scale the
/// coordinates before the p-norm is taken, so the weighted norm is
/// `‖(w₁x₁, …, wₙxₙ)‖_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSpec {
    #[serde(default = "default_p", with = "p_value")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

fn default_p() -> f64 {
    2.0
}

impl Default for NormSpec {
    fn default() -> Self {
        NormSpec {
            p: 2.0,
            weights: None,
        }
    }
}

impl NormSpec {
    pub fn p(p: f64) -> Self {
        NormSpec { p, weights: None }
    }

    pub fn weighted(p: f64, weights: Vec<f64>) -> Self {
        NormSpec {
            p,
            weights: Some(weights),
        }
    }
}

/// A validated crisp norm on ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrispNorm {
    p: f64,
    weights: Option<Vec<f64>>,
}

impl CrispNorm {
    pub fn new(spec: &NormSpec, dim: usize) -> Result<Self> {
        let p = spec.p;
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter {
                name: "p",
                reason: format!("must be ≥ 1 (or inf), got {p}"),
            });
        }
        if let Some(w) = &spec.weights {
            check_dim(dim, w.len())?;
            if let Some(bad) = w.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::InvalidParameter {
                    name: "weights",
                    reason: format!("every weight must be positive and finite, got {bad}"),
                });
            }
        }
        Ok(CrispNorm {
            p,
            weights: spec.weights.clone(),
        })
    }

    pub fn euclidean() -> Self {
        CrispNorm {
            p: 2.0,
            weights: None,
        }
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Evaluates the norm without a dimension check.
    pub(crate) fn value(&self, x: &[f64]) -> f64 {
        let weighted = |i: usize, c: f64| match &self.weights {
            Some(w) => w[i] * c.abs(),
            None => c.abs(),
        };
        if self.p == 1.0 {
            return x.iter().enumerate().map(|(i, &c)| weighted(i, c)).sum();
        }
        let m = x
            .iter()
            .enumerate()
            .fold(0.0_f64, |m, (i, &c)| m.max(weighted(i, c)));
        if m == 0.0 || self.p.is_infinite() {
            return m;
        }
        // Scaling by the largest term keeps tiny and huge inputs away from
        // underflow/overflow in the power sum.
        let sum: f64 = if self.p == 2.0 {
            x.iter()
                .enumerate()
                .map(|(i, &c)| {
                    let r = weighted(i, c) / m;
                    r * r
                })
                .sum()
        } else {
            x.iter()
                .enumerate()
                .map(|(i, &c)| (weighted(i, c) / m).powf(self.p))
                .sum()
        };
        if self.p == 2.0 {
            m * sum.sqrt()
        } else {
            m * sum.powf(1.0 / self.p)
        }
    }
}

/// `‖x‖` for the given crisp norm description.
pub fn crisp_eval(spec: &NormSpec, x: &Vector) -> Result<f64> {
    let norm = CrispNorm::new(spec, x.dim())?;
    Ok(norm.value(x.components()))
}

mod p_value {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Number(p) => Ok(p),
            Raw::Text(t) => match t.to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "max" => Ok(f64::INFINITY),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\" for p, got {other:?}"
                ))),
            },
        }
    }
}

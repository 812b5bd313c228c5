//! Vectors, crisp norms and the catalogue of quasiconcave generators.
//!
//! Every catalogue family except [`GeneratorKind::CosineControl`] is
//! quasiconcave, equals 1 at the origin, tends to 1 along every ray towards
//! the origin and is centrally symmetric. The cosine control deliberately
//! breaks quasiconcavity so the verification harness always has an input
//! that must fail.

mod crisp;
mod vector;

use serde::{Deserialize, Serialize};

pub use crisp::{crisp_eval, CrispNorm, NormSpec};
pub use vector::Vector;

pub(crate) use vector::{check_dim, convex, max_abs, scale};

use crate::error::{Error, Result};

/// Matrices with `|det|` at or below this are rejected as singular.
pub const SINGULAR_DET: f64 = 1e-12;

/// Anything that can be evaluated as a membership function `ℝⁿ → [0,1]`.
pub trait Membership {
    fn dim(&self) -> usize;

    /// Evaluates at `x`; callers guarantee `x.len() == self.dim()`.
    fn membership(&self, x: &[f64]) -> f64;
}

impl<M: Membership + ?Sized> Membership for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn membership(&self, x: &[f64]) -> f64 {
        (**self).membership(x)
    }
}

/// Wraps an arbitrary closure so it can be handed to the checkers.
pub struct FnMembership<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnMembership<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnMembership { dim, f }
    }
}

impl<F: Fn(&[f64]) -> f64> Membership for FnMembership<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn membership(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Serializable description of a generator, mirroring [`GeneratorKind`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Standard {
        #[serde(default)]
        norm: NormSpec,
    },
    Indicator {
        #[serde(default)]
        norm: NormSpec,
        radius: f64,
    },
    Exponential {
        #[serde(default)]
        norm: NormSpec,
    },
    PiecewiseLinear {
        #[serde(default)]
        norm: NormSpec,
    },
    Shifted {
        #[serde(default)]
        norm: NormSpec,
        beta: f64,
    },
    MinCombination {
        children: Vec<GeneratorSpec>,
    },
    LinearPrecompose {
        matrix: Vec<Vec<f64>>,
        inner: Box<GeneratorSpec>,
    },
    CosineControl {
        #[serde(default)]
        norm: NormSpec,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    /// `1 / (1 + ‖x‖)`
    Standard { norm: CrispNorm },
    /// `1` on the open ball `‖x‖ < radius`, `0` elsewhere.
    Indicator { norm: CrispNorm, radius: f64 },
    /// `exp(−‖x‖)`
    Exponential { norm: CrispNorm },
    /// `max(0, 1 − ‖x‖)`
    PiecewiseLinear { norm: CrispNorm },
    /// `β + (1 − β) / (1 + ‖x‖)`
    Shifted { norm: CrispNorm, beta: f64 },
    /// Pointwise minimum of the children.
    MinCombination { children: Vec<Generator> },
    /// `inner(A·x)` for an invertible row-major `A`.
    LinearPrecompose {
        matrix: Vec<Vec<f64>>,
        inner: Box<Generator>,
    },
    /// `max(0, cos ‖x‖)`: not quasiconcave.
    CosineControl { norm: CrispNorm },
}

/// A validated generator on ℝ^dim.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    dim: usize,
    kind: GeneratorKind,
}

impl Generator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            GeneratorKind::Standard { .. } => "standard",
            GeneratorKind::Indicator { .. } => "indicator",
            GeneratorKind::Exponential { .. } => "exponential",
            GeneratorKind::PiecewiseLinear { .. } => "piecewise_linear",
            GeneratorKind::Shifted { .. } => "shifted",
            GeneratorKind::MinCombination { .. } => "min_combination",
            GeneratorKind::LinearPrecompose { .. } => "linear_precompose",
            GeneratorKind::CosineControl { .. } => "cosine_control",
        }
    }

    /// Whether the generator belongs to the admissible class, i.e. contains
    /// no cosine control anywhere in its tree.
    pub fn is_admissible(&self) -> bool {
        match &self.kind {
            GeneratorKind::CosineControl { .. } => false,
            GeneratorKind::MinCombination { children } => {
                children.iter().all(Generator::is_admissible)
            }
            GeneratorKind::LinearPrecompose { inner, .. } => inner.is_admissible(),
            _ => true,
        }
    }

    /// Evaluates without a dimension check.
    pub(crate) fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            GeneratorKind::Standard { norm } => 1.0 / (1.0 + norm.value(x)),
            GeneratorKind::Indicator { norm, radius } => {
                if norm.value(x) < *radius {
                    1.0
                } else {
                    0.0
                }
            }
            GeneratorKind::Exponential { norm } => (-norm.value(x)).exp(),
            GeneratorKind::PiecewiseLinear { norm } => (1.0 - norm.value(x)).max(0.0),
            GeneratorKind::Shifted { norm, beta } => beta + (1.0 - beta) / (1.0 + norm.value(x)),
            GeneratorKind::MinCombination { children } => children
                .iter()
                .map(|c| c.value(x))
                .fold(f64::INFINITY, f64::min),
            GeneratorKind::LinearPrecompose { matrix, inner } => {
                let y: Vec<f64> = matrix
                    .iter()
                    .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                    .collect();
                inner.value(&y)
            }
            GeneratorKind::CosineControl { norm } => norm.value(x).cos().max(0.0),
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim, x.dim())?;
        Ok(self.value(x.components()))
    }

    /// The description this generator was built from.
    pub fn spec(&self) -> GeneratorSpec {
        let norm_spec = |n: &CrispNorm| NormSpec {
            p: n.exponent(),
            weights: n.weights().map(<[f64]>::to_vec),
        };
        match &self.kind {
            GeneratorKind::Standard { norm } => GeneratorSpec::Standard {
                norm: norm_spec(norm),
            },
            GeneratorKind::Indicator { norm, radius } => GeneratorSpec::Indicator {
                norm: norm_spec(norm),
                radius: *radius,
            },
            GeneratorKind::Exponential { norm } => GeneratorSpec::Exponential {
                norm: norm_spec(norm),
            },
            GeneratorKind::PiecewiseLinear { norm } => GeneratorSpec::PiecewiseLinear {
                norm: norm_spec(norm),
            },
            GeneratorKind::Shifted { norm, beta } => GeneratorSpec::Shifted {
                norm: norm_spec(norm),
                beta: *beta,
            },
            GeneratorKind::MinCombination { children } => GeneratorSpec::MinCombination {
                children: children.iter().map(Generator::spec).collect(),
            },
            GeneratorKind::LinearPrecompose { matrix, inner } => GeneratorSpec::LinearPrecompose {
                matrix: matrix.clone(),
                inner: Box::new(inner.spec()),
            },
            GeneratorKind::CosineControl { norm } => GeneratorSpec::CosineControl {
                norm: norm_spec(norm),
            },
        }
    }
}

impl Membership for Generator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn membership(&self, x: &[f64]) -> f64 {
        self.value(x)
    }
}

/// Validates a description and builds the generator on ℝ^dim.
///
/// Cosine controls are accepted here; use [`Generator::is_admissible`] or the
/// checked [`crate::norm_from_generator`] to keep them out.
pub fn make_generator(spec: &GeneratorSpec, dim: usize) -> Result<Generator> {
    if dim == 0 {
        return Err(Error::InvalidParameter {
            name: "dim",
            reason: "must be positive".into(),
        });
    }
    let kind = match spec {
        GeneratorSpec::Standard { norm } => GeneratorKind::Standard {
            norm: CrispNorm::new(norm, dim)?,
        },
        GeneratorSpec::Indicator { norm, radius } => {
            if !(radius.is_finite() && *radius > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "radius",
                    reason: format!("must be positive and finite, got {radius}"),
                });
            }
            GeneratorKind::Indicator {
                norm: CrispNorm::new(norm, dim)?,
                radius: *radius,
            }
        }
        GeneratorSpec::Exponential { norm } => GeneratorKind::Exponential {
            norm: CrispNorm::new(norm, dim)?,
        },
        GeneratorSpec::PiecewiseLinear { norm } => GeneratorKind::PiecewiseLinear {
            norm: CrispNorm::new(norm, dim)?,
        },
        GeneratorSpec::Shifted { norm, beta } => {
            if !(0.0..1.0).contains(beta) {
                return Err(Error::InvalidParameter {
                    name: "beta",
                    reason: format!("must lie in [0,1), got {beta}"),
                });
            }
            GeneratorKind::Shifted {
                norm: CrispNorm::new(norm, dim)?,
                beta: *beta,
            }
        }
        GeneratorSpec::MinCombination { children } => {
            let built = children
                .iter()
                .map(|c| make_generator(c, dim))
                .collect::<Result<Vec<_>>>()?;
            return min_combine(built);
        }
        GeneratorSpec::LinearPrecompose { matrix, inner } => {
            check_dim(dim, matrix.len())?;
            for row in matrix {
                check_dim(dim, row.len())?;
                if row.iter().any(|a| !a.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "matrix",
                        reason: "entries must be finite".into(),
                    });
                }
            }
            let det = determinant(matrix);
            if det.abs() <= SINGULAR_DET {
                return Err(Error::SingularMatrix { det });
            }
            GeneratorKind::LinearPrecompose {
                matrix: matrix.clone(),
                inner: Box::new(make_generator(inner, dim)?),
            }
        }
        GeneratorSpec::CosineControl { norm } => GeneratorKind::CosineControl {
            norm: CrispNorm::new(norm, dim)?,
        },
    };
    Ok(Generator { dim, kind })
}

/// `f(x)` with a dimension check.
pub fn eval_generator(g: &Generator, x: &Vector) -> Result<f64> {
    g.eval(x)
}

/// Pointwise minimum of admissible generators of equal dimension.
pub fn min_combine(gs: Vec<Generator>) -> Result<Generator> {
    let dim = gs.first().ok_or(Error::EmptyCombination)?.dim;
    for g in &gs {
        check_dim(dim, g.dim)?;
        if !g.is_admissible() {
            return Err(Error::NotAdmissible {
                kind: g.kind_name(),
            });
        }
    }
    Ok(Generator {
        dim,
        kind: GeneratorKind::MinCombination { children: gs },
    })
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= factor * src;
            }
        }
    }
    det
}

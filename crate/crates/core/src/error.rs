use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one component")]
    EmptyVector,

    #[error("vector component {index} is not finite ({value})")]
    NonFiniteComponent { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("min_combination needs at least one child")]
    EmptyCombination,

    #[error("generator `{kind}` is not an admissible quasiconcave generator")]
    NotAdmissible { kind: &'static str },

    #[error("t must be finite and non-negative, got {0}")]
    InvalidTime(f64),

    #[error("t-grid must be strictly increasing (index {index})")]
    UnsortedGrid { index: usize },

    #[error("t-curve decreases between t={t_left} ({left}) and t={t_right} ({right})")]
    CurveNotMonotone {
        t_left: f64,
        t_right: f64,
        left: f64,
        right: f64,
    },

    #[error("alpha must lie in (0,1), got {0}")]
    InvalidAlpha(f64),

    #[error("alphas must be strictly increasing (index {index})")]
    UnsortedAlphas { index: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("no t ≤ {t_hi:e} with N(x,t) > {alpha} after {doublings} doublings")]
    BracketExhausted {
        alpha: f64,
        t_hi: f64,
        doublings: u32,
    },

    #[error("alpha-cut failed at alpha index {alpha_index}, point {point_index}: {source}")]
    Cell {
        alpha_index: usize,
        point_index: usize,
        source: Box<Error>,
    },

    #[error("no closed-form alpha-cut for generator kind `{0}`")]
    NoClosedForm(&'static str),

    #[error("point is not a scalar multiple of any tabulated point")]
    UntabulatedPoint,
}

/// Radii for probes: nonempty, positive, strictly decreasing, ending below
/// `floor`.
pub(crate) fn check_finite_decreasing(radii: &[f64], floor: f64) -> Result<()> {
    let invalid = |reason: String| {
        Err(Error::InvalidParameter {
            name: "radii",
            reason,
        })
    };
    let Some(&last) = radii.last() else {
        return invalid("must be nonempty".into());
    };
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return invalid("must be positive and finite".into());
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return invalid("must be strictly decreasing".into());
    }
    if last >= floor {
        return invalid(format!("must decrease below {floor:e}"));
    }
    Ok(())
}

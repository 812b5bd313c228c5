//! Fuzzy norms on ℝⁿ generated by quasiconcave membership functions.
//!
//! A generator `f: ℝⁿ → [0,1]` that is quasiconcave, equals 1 at the origin, is
//! not identically 1 along any ray, tends to 1 near the origin and is
//! centrally symmetric induces the fuzzy norm `N(x, t) = f(x / t)` (and `N(x, 0) = 0`).
//! Conversely every fuzzy norm is recovered from its section `x ↦ N(x, 1)`.
//!
//! The crate is split along that correspondence:
//!
//! * [`generators`]: vectors, crisp norms and the catalogue of generators.
//! * [`correspondence`]: the two directions of the bijection and t-curves.
//! * [`decomposition`]: the α-cut norms `p_α(x) = inf{t > 0 : N(x,t) > α}`.
//! * [`verification`]: seeded property checks producing replayable witnesses.

// Negated comparisons are deliberate: a NaN must count as a violation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correspondence;
pub mod decomposition;
mod error;
pub mod generators;
pub mod verification;

pub use correspondence::{
    eval_norm, generator_from_norm, norm_from_generator, t_curve, FuzzyNorm, FuzzyNormEval,
    Induced, Section,
};
pub use decomposition::{
    alpha_cut, alpha_cut_oracle, decompose_table, reconstruct_norm, AlphaCut, AlphaCutTable,
    Reconstruction, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use generators::{
    crisp_eval, eval_generator, make_generator, min_combine, CrispNorm, FnMembership, Generator,
    GeneratorKind, GeneratorSpec, Membership, NormSpec, Vector,
};

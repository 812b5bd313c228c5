//! The bijection between admissible generators and fuzzy norms.
//!
//! A generator `f` induces `N_f(x, t) = f(x / t)` for `t > 0` and
//! `N_f(x, 0) = 0`; a fuzzy norm `N` is recovered from its section
//! `f_N(x) = N(x, 1)`. Both directions use the same arithmetic, so round
//! trips are exact rather than approximate.

use crate::error::{Error, Result};
use crate::generators::{check_dim, Generator, Membership, Vector};

/// Slack allowed when asserting that a t-curve is non-decreasing.
pub const CURVE_SLACK: f64 = 1e-12;

/// Evaluation interface shared by every fuzzy norm in the crate.
pub trait FuzzyNormEval {
    fn dim(&self) -> usize;

    /// `N(x, t)` for `t ≥ 0` finite and `x.len() == dim()`; unchecked.
    fn value(&self, x: &[f64], t: f64) -> f64;
}

impl<N: FuzzyNormEval + ?Sized> FuzzyNormEval for &N {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        (**self).value(x, t)
    }
}

fn induced_value<M: Membership + ?Sized>(f: &M, x: &[f64], t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let scaled: Vec<f64> = x.iter().map(|c| c / t).collect();
    f.membership(&scaled)
}

/// The fuzzy norm induced by an arbitrary membership function, with no
/// admissibility check.
#[derive(Debug, Clone)]
pub struct Induced<M>(pub M);

impl<M: Membership> FuzzyNormEval for Induced<M> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        induced_value(&self.0, x, t)
    }
}

/// The section `x ↦ N(x, 1)` of a fuzzy norm, viewed as a generator.
#[derive(Debug, Clone)]
pub struct Section<N>(pub N);

impl<N: FuzzyNormEval> Membership for Section<N> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn membership(&self, x: &[f64]) -> f64 {
        self.0.value(x, 1.0)
    }
}

impl<N: FuzzyNormEval> Section<N> {
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        check_dim(self.0.dim(), x.dim())?;
        Ok(self.membership(x.components()))
    }
}

/// A fuzzy norm `N_f` built from a catalogue generator.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNorm {
    generator: Generator,
    checked: bool,
}

impl FuzzyNorm {
    /// Wraps any generator, including non-admissible ones, so that the
    /// verification harness can watch axioms fail.
    pub fn unchecked(generator: Generator) -> Self {
        let checked = generator.is_admissible();
        FuzzyNorm { generator, checked }
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    /// True when the generator passed admissibility validation.
    pub fn is_checked(&self) -> bool {
        self.checked
    }

    pub fn eval(&self, x: &Vector, t: f64) -> Result<f64> {
        eval_norm(self, x, t)
    }
}

impl FuzzyNormEval for FuzzyNorm {
    fn dim(&self) -> usize {
        self.generator.dim()
    }

    fn value(&self, x: &[f64], t: f64) -> f64 {
        induced_value(&self.generator, x, t)
    }
}

/// `f ↦ N_f`, rejecting generators outside the admissible class.
pub fn norm_from_generator(g: Generator) -> Result<FuzzyNorm> {
    if !g.is_admissible() {
        return Err(Error::NotAdmissible {
            kind: g.kind_name(),
        });
    }
    Ok(FuzzyNorm {
        generator: g,
        checked: true,
    })
}

/// `N(x, t)` with input validation. Negative `t` is rejected rather than
/// mapped to 0.
pub fn eval_norm<N: FuzzyNormEval + ?Sized>(n: &N, x: &Vector, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidTime(t));
    }
    check_dim(n.dim(), x.dim())?;
    Ok(n.value(x.components(), t))
}

/// `N ↦ f_N = N(·, 1)`.
pub fn generator_from_norm<N: FuzzyNormEval>(n: N) -> Section<N> {
    Section(n)
}

/// Samples `t ↦ N(x, t)` on an increasing grid and asserts the result is
/// non-decreasing.
pub fn t_curve<N: FuzzyNormEval + ?Sized>(n: &N, x: &Vector, t_grid: &[f64]) -> Result<Vec<f64>> {
    check_dim(n.dim(), x.dim())?;
    for (i, &t) in t_grid.iter().enumerate() {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidTime(t));
        }
        if i > 0 && t <= t_grid[i - 1] {
            return Err(Error::UnsortedGrid { index: i });
        }
    }
    let values: Vec<f64> = t_grid.iter().map(|&t| n.value(x.components(), t)).collect();
    for i in 1..values.len() {
        if values[i] < values[i - 1] - CURVE_SLACK {
            return Err(Error::CurveNotMonotone {
                t_left: t_grid[i - 1],
                t_right: t_grid[i],
                left: values[i - 1],
                right: values[i],
            });
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_generator, GeneratorSpec, NormSpec};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn norm(spec: GeneratorSpec, dim: usize) -> FuzzyNorm {
        norm_from_generator(make_generator(&spec, dim).unwrap()).unwrap()
    }

    fn standard(dim: usize) -> FuzzyNorm {
        norm(
            GeneratorSpec::Standard {
                norm: NormSpec::default(),
            },
            dim,
        )
    }

    fn indicator() -> FuzzyNorm {
        norm(
            GeneratorSpec::Indicator {
                norm: NormSpec::default(),
                radius: 1.0,
            },
            1,
        )
    }

    #[test]
    fn standard_matches_closed_form() {
        let n = standard(2);
        assert!((n.eval(&v(&[3.0, 4.0]), 5.0).unwrap() - 0.5).abs() < 1e-15);
        for (x, t) in [
            ([1.0_f64, 2.0], 0.7_f64),
            ([-3.0, 0.1], 12.0),
            ([0.0, 5.0], 1e-3),
        ] {
            let s = (x[0] * x[0] + x[1] * x[1]).sqrt();
            let expected = t / (t + s);
            assert!((n.eval(&v(&x), t).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_time_and_origin() {
        let n = standard(3);
        assert_eq!(n.eval(&v(&[1.0, 2.0, 3.0]), 0.0).unwrap(), 0.0);
        assert_eq!(n.eval(&v(&[0.0, 0.0, 0.0]), 0.0).unwrap(), 0.0);
        assert_eq!(n.eval(&v(&[0.0, 0.0, 0.0]), 7.0).unwrap(), 1.0);
    }

    #[test]
    fn exponential_value() {
        let n = norm(
            GeneratorSpec::Exponential {
                norm: NormSpec::default(),
            },
            1,
        );
        assert!((n.eval(&v(&[2.0]), 1.0).unwrap() - 0.135_335_283_236_612_7).abs() < 1e-15);
    }

    #[test]
    fn indicator_matches_absolute_value_norm() {
        let n = indicator();
        for (x, t, expected) in [
            (1.0, 1.0, 0.0),
            (1.0, 1.5, 1.0),
            (-2.0, 2.0, 0.0),
            (-2.0, 2.01, 1.0),
        ] {
            assert_eq!(n.eval(&v(&[x]), t).unwrap(), expected);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let n = standard(2);
        assert_eq!(n.eval(&v(&[1.0, 1.0]), -1.0), Err(Error::InvalidTime(-1.0)));
        assert!(n.eval(&v(&[1.0, 1.0]), f64::INFINITY).is_err());
        assert!(n.eval(&v(&[1.0]), 1.0).is_err());
        let cos = make_generator(
            &GeneratorSpec::CosineControl {
                norm: NormSpec::default(),
            },
            1,
        )
        .unwrap();
        assert!(matches!(
            norm_from_generator(cos.clone()),
            Err(Error::NotAdmissible {
                kind: "cosine_control"
            })
        ));
        assert!(!FuzzyNorm::unchecked(cos).is_checked());
    }

    #[test]
    fn section_recovers_generator() {
        let n = standard(1);
        let f = generator_from_norm(&n);
        assert!((f.eval(&v(&[3.0])).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(f.eval(&v(&[0.0])).unwrap(), 1.0);
        let ind = indicator();
        let f = generator_from_norm(&ind);
        for x in [-1.5, -1.0, -0.5, 0.0, 0.999_999, 1.0, 3.0] {
            assert_eq!(
                f.eval(&v(&[x])).unwrap(),
                ind.generator().eval(&v(&[x])).unwrap()
            );
        }
    }

    #[test]
    fn curves() {
        let n = standard(1);
        assert_eq!(
            t_curve(&n, &v(&[1.0]), &[0.0, 1.0, 3.0]).unwrap(),
            vec![0.0, 0.5, 0.75]
        );
        assert_eq!(
            t_curve(&n, &v(&[0.0]), &[0.0, 0.1, 2.0]).unwrap(),
            vec![0.0, 1.0, 1.0]
        );
        assert_eq!(
            t_curve(&indicator(), &v(&[1.0]), &[0.5, 1.0, 1.5]).unwrap(),
            vec![0.0, 0.0, 1.0]
        );
        assert_eq!(
            t_curve(&n, &v(&[1.0]), &[1.0, 0.5]),
            Err(Error::UnsortedGrid { index: 1 })
        );
        assert_eq!(
            t_curve(&n, &v(&[1.0]), &[-1.0, 0.5]),
            Err(Error::InvalidTime(-1.0))
        );
    }

    #[test]
    fn curve_detects_decrease() {
        let cos = make_generator(
            &GeneratorSpec::CosineControl {
                norm: NormSpec::default(),
            },
            1,
        )
        .unwrap();
        let n = FuzzyNorm::unchecked(cos);
        // cos(2π/t) dips to 0 at t = 2 and returns to 1 at t = 1
        let err = t_curve(&n, &v(&[2.0 * std::f64::consts::PI]), &[1.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::CurveNotMonotone { .. }));
    }
}

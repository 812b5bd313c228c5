//! α-cut norms `p_α(x) = inf{t > 0 : N(x, t) > α}`.
//!
//! `t ↦ N(x, t)` is non-decreasing, so the predicate `N(x, t) > α` is a
//! monotone step in `t` and the infimum is found by bracketing (doubling
//! from `t = 1`) followed by bisection. The bisection always keeps the
//! certified-true endpoint, so results overshoot the infimum by at most
//! `tol` and never undershoot it.

use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::FuzzyNormEval;
use crate::error::{Error, Result};
use crate::generators::{check_dim, max_abs, Generator, GeneratorKind, Vector};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const MAX_DOUBLINGS: u32 = 200;

/// Relative tolerance used to decide that a query point is a scalar
/// multiple of a tabulated point.
const MULTIPLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaCut {
    pub value: f64,
    /// `N(x, t) > α` held for every probed `t > 0`: the α-cut collapsed to
    /// 0 even though `x ≠ 0`, so the level `α` lies at or below
    /// `lim_{t→0} N(x, t)`.
    pub degenerate: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// `p_α(x)` to within `tol`.
pub fn alpha_cut<N: FuzzyNormEval + ?Sized>(
    n: &N,
    x: &Vector,
    alpha: f64,
    tol: f64,
) -> Result<AlphaCut> {
    check_dim(n.dim(), x.dim())?;
    check_alpha(alpha)?;
    check_tol(tol)?;
    alpha_cut_unchecked(n, x.components(), alpha, tol)
}

pub(crate) fn alpha_cut_unchecked<N: FuzzyNormEval + ?Sized>(
    n: &N,
    x: &[f64],
    alpha: f64,
    tol: f64,
) -> Result<AlphaCut> {
    if x.iter().all(|&c| c == 0.0) {
        return Ok(AlphaCut {
            value: 0.0,
            degenerate: false,
        });
    }
    let above = |t: f64| n.value(x, t) > alpha;

    let mut hi = 1.0_f64;
    let mut doublings = 0;
    while !above(hi) {
        if doublings == MAX_DOUBLINGS {
            return Err(Error::BracketExhausted {
                alpha,
                t_hi: hi,
                doublings,
            });
        }
        hi *= 2.0;
        doublings += 1;
    }

    let mut lo = 0.0_f64;
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    if lo == 0.0 && hi <= tol {
        Ok(AlphaCut {
            value: 0.0,
            degenerate: true,
        })
    } else {
        Ok(AlphaCut {
            value: hi,
            degenerate: false,
        })
    }
}

/// Closed-form `p_α` for the scalar families, given `s = ‖x‖` in the
/// generator's own crisp norm.
pub fn alpha_cut_oracle(g: &Generator, alpha: f64, s: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("norm value must be finite and non-negative, got {s}"),
        });
    }
    match g.kind() {
        GeneratorKind::Standard { .. } => Ok(alpha * s / (1.0 - alpha)),
        GeneratorKind::Indicator { radius, .. } => Ok(s / radius),
        GeneratorKind::Exponential { .. } => Ok(s / -alpha.ln()),
        GeneratorKind::PiecewiseLinear { .. } => Ok(s / (1.0 - alpha)),
        GeneratorKind::Shifted { beta, .. } => {
            if alpha > *beta {
                Ok(s * (alpha - beta) / (1.0 - alpha))
            } else {
                Ok(0.0)
            }
        }
        _ => Err(Error::NoClosedForm(g.kind_name())),
    }
}

/// Sampled α-cut norms: entry `(i, j)` is `p_{α_i}(x_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaCutTable {
    alphas: Vec<f64>,
    points: Vec<Vector>,
    values: Vec<Vec<f64>>,
    degenerate: Vec<Vec<bool>>,
    tol: f64,
}

impl AlphaCutTable {
    /// Assembles a table from parts, checking only its shape.
    pub fn from_parts(
        alphas: Vec<f64>,
        points: Vec<Vector>,
        values: Vec<Vec<f64>>,
        degenerate: Vec<Vec<bool>>,
        tol: f64,
    ) -> Result<Self> {
        check_dim(alphas.len(), values.len())?;
        check_dim(alphas.len(), degenerate.len())?;
        for (row, flags) in values.iter().zip(&degenerate) {
            check_dim(points.len(), row.len())?;
            check_dim(points.len(), flags.len())?;
        }
        Ok(AlphaCutTable {
            alphas,
            points,
            values,
            degenerate,
            tol,
        })
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn value(&self, alpha_index: usize, point_index: usize) -> f64 {
        self.values[alpha_index][point_index]
    }

    pub fn value_mut(&mut self, alpha_index: usize, point_index: usize) -> &mut f64 {
        &mut self.values[alpha_index][point_index]
    }

    pub fn is_degenerate(&self, alpha_index: usize, point_index: usize) -> bool {
        self.degenerate[alpha_index][point_index]
    }

    /// `p_α(x_j)` for every α, in α order.
    pub fn column(&self, point_index: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[point_index]).collect()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// Tabulates `p_α(x)` over `alphas × points`. Cells are evaluated in
/// parallel; the table layout does not depend on scheduling.
pub fn decompose_table<N>(
    n: &N,
    alphas: &[f64],
    points: &[Vector],
    tol: f64,
) -> Result<AlphaCutTable>
where
    N: FuzzyNormEval + Sync + ?Sized,
{
    check_tol(tol)?;
    for (i, &a) in alphas.iter().enumerate() {
        check_alpha(a)?;
        if i > 0 && a <= alphas[i - 1] {
            return Err(Error::UnsortedAlphas { index: i });
        }
    }
    for p in points {
        check_dim(n.dim(), p.dim())?;
    }

    let width = points.len();
    let cells: Vec<Result<AlphaCut>> = (0..alphas.len() * width)
        .into_par_iter()
        .map(|k| alpha_cut_unchecked(n, points[k % width].components(), alphas[k / width], tol))
        .collect();

    let mut values = vec![vec![0.0; width]; alphas.len()];
    let mut degenerate = vec![vec![false; width]; alphas.len()];
    for (k, cell) in cells.into_iter().enumerate() {
        let (i, j) = (k / width, k % width);
        let cut = cell.map_err(|e| Error::Cell {
            alpha_index: i,
            point_index: j,
            source: Box::new(e),
        })?;
        values[i][j] = cut.value;
        degenerate[i][j] = cut.degenerate;
    }
    Ok(AlphaCutTable {
        alphas: alphas.to_vec(),
        points: points.to_vec(),
        values,
        degenerate,
        tol,
    })
}

/// Grid approximation `Ñ(x, t) = max{α_i : p_{α_i}(x) < t}` (0 if none),
/// defined on scalar multiples of the tabulated points.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    table: AlphaCutTable,
}

pub fn reconstruct_norm(table: AlphaCutTable) -> Reconstruction {
    Reconstruction { table }
}

impl Reconstruction {
    pub fn table(&self) -> &AlphaCutTable {
        &self.table
    }

    pub fn eval(&self, x: &Vector, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidTime(t));
        }
        if x.is_zero() {
            if let Some(p) = self.table.points.first() {
                check_dim(p.dim(), x.dim())?;
            }
            let best = if t > 0.0 {
                self.table.alphas.last().copied()
            } else {
                None
            };
            return Ok(best.unwrap_or(0.0));
        }
        let (j, lambda) = self.locate(x)?;
        let factor = lambda.abs();
        let best = self
            .table
            .alphas
            .iter()
            .zip(&self.table.values)
            .filter(|(_, row)| factor * row[j] < t)
            .map(|(&a, _)| a)
            .fold(0.0_f64, f64::max);
        Ok(best)
    }

    /// Finds a tabulated point `x_j` and `λ` with `x = λ·x_j`.
    fn locate(&self, x: &Vector) -> Result<(usize, f64)> {
        let xs = x.components();
        let slack = MULTIPLE_TOL * max_abs(xs).max(1.0);
        for (j, p) in self.table.points.iter().enumerate() {
            if p.dim() != x.dim() || p.is_zero() {
                continue;
            }
            let ps = p.components();
            let k = (0..ps.len())
                .max_by(|&a, &b| ps[a].abs().total_cmp(&ps[b].abs()))
                .expect("non-empty vector");
            let lambda = xs[k] / ps[k];
            if xs
                .iter()
                .zip(ps)
                .all(|(a, b)| (a - lambda * b).abs() <= slack)
            {
                return Ok((j, lambda));
            }
        }
        Err(Error::UntabulatedPoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{norm_from_generator, FuzzyNorm};
    use crate::generators::{make_generator, GeneratorSpec, NormSpec};

    const TOL: f64 = DEFAULT_TOL;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn build(spec: GeneratorSpec, dim: usize) -> FuzzyNorm {
        norm_from_generator(make_generator(&spec, dim).unwrap()).unwrap()
    }

    fn standard(dim: usize) -> FuzzyNorm {
        build(
            GeneratorSpec::Standard {
                norm: NormSpec::default(),
            },
            dim,
        )
    }

    fn indicator(dim: usize) -> FuzzyNorm {
        build(
            GeneratorSpec::Indicator {
                norm: NormSpec::default(),
                radius: 1.0,
            },
            dim,
        )
    }

    fn shifted(beta: f64) -> FuzzyNorm {
        build(
            GeneratorSpec::Shifted {
                norm: NormSpec::default(),
                beta,
            },
            1,
        )
    }

    #[test]
    fn worked_alpha_cuts() {
        let cut = alpha_cut(&standard(2), &v(&[3.0, 0.0]), 0.5, TOL).unwrap();
        assert!((cut.value - 3.0).abs() <= TOL && !cut.degenerate);
        let cut = alpha_cut(&indicator(1), &v(&[2.0]), 0.3, TOL).unwrap();
        assert!((cut.value - 2.0).abs() <= TOL);
        assert!(cut.value >= 2.0);
        let cut = alpha_cut(&standard(2), &v(&[0.0, 0.0]), 0.7, TOL).unwrap();
        assert_eq!(
            cut,
            AlphaCut {
                value: 0.0,
                degenerate: false
            }
        );
        let cut = alpha_cut(&shifted(0.5), &v(&[1.0]), 0.25, TOL).unwrap();
        assert_eq!(
            cut,
            AlphaCut {
                value: 0.0,
                degenerate: true
            }
        );
    }

    #[test]
    fn argument_errors() {
        let n = standard(1);
        assert_eq!(
            alpha_cut(&n, &v(&[1.0]), 0.0, TOL),
            Err(Error::InvalidAlpha(0.0))
        );
        assert_eq!(
            alpha_cut(&n, &v(&[1.0]), 1.0, TOL),
            Err(Error::InvalidAlpha(1.0))
        );
        assert_eq!(
            alpha_cut(&n, &v(&[1.0]), 0.5, 0.0),
            Err(Error::InvalidTolerance(0.0))
        );
        assert!(matches!(
            alpha_cut(&n, &v(&[1.0, 1.0]), 0.5, TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bracket_cap_is_an_error() {
        // A generator that never exceeds 0.5 away from the origin.
        let flat = crate::correspondence::Induced(crate::generators::FnMembership::new(
            1,
            |x: &[f64]| {
                if x[0] == 0.0 {
                    1.0
                } else {
                    0.5
                }
            },
        ));
        let err = alpha_cut(&flat, &v(&[1.0]), 0.6, TOL).unwrap_err();
        assert!(matches!(
            err,
            Error::BracketExhausted {
                doublings: MAX_DOUBLINGS,
                ..
            }
        ));
    }

    #[test]
    fn oracle_values() {
        let g = |spec| make_generator(&spec, 1).unwrap();
        let d = NormSpec::default;
        let std = g(GeneratorSpec::Standard { norm: d() });
        assert!((alpha_cut_oracle(&std, 0.9, 2.0).unwrap() - 18.0).abs() < 1e-13);
        let exp = g(GeneratorSpec::Exponential { norm: d() });
        assert!((alpha_cut_oracle(&exp, (-1.0_f64).exp(), 5.0).unwrap() - 5.0).abs() < 1e-14);
        let sh = g(GeneratorSpec::Shifted {
            norm: d(),
            beta: 0.5,
        });
        assert_eq!(alpha_cut_oracle(&sh, 0.75, 4.0).unwrap(), 4.0);
        assert_eq!(alpha_cut_oracle(&sh, 0.5, 4.0).unwrap(), 0.0);
        let ind = g(GeneratorSpec::Indicator {
            norm: d(),
            radius: 2.0,
        });
        assert_eq!(alpha_cut_oracle(&ind, 0.1, 3.0).unwrap(), 1.5);
        let pl = g(GeneratorSpec::PiecewiseLinear { norm: d() });
        assert_eq!(alpha_cut_oracle(&pl, 0.5, 3.0).unwrap(), 6.0);
        let mix = g(GeneratorSpec::MinCombination {
            children: vec![GeneratorSpec::Standard { norm: d() }],
        });
        assert_eq!(
            alpha_cut_oracle(&mix, 0.5, 1.0),
            Err(Error::NoClosedForm("min_combination"))
        );
    }

    #[test]
    fn table_columns() {
        let t = decompose_table(
            &standard(2),
            &[0.25, 0.5, 0.75],
            &[v(&[0.0, 1.0]), v(&[0.0, 0.0])],
            TOL,
        )
        .unwrap();
        for (got, want) in t.column(0).iter().zip([1.0 / 3.0, 1.0, 3.0]) {
            assert!((got - want).abs() <= TOL);
        }
        assert_eq!(t.column(1), vec![0.0; 3]);

        let t = decompose_table(&indicator(2), &[0.1, 0.4, 0.9], &[v(&[1.0, 0.0])], TOL).unwrap();
        for got in t.column(0) {
            assert!((got - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn table_validation() {
        let n = standard(1);
        let p = [v(&[1.0])];
        assert_eq!(
            decompose_table(&n, &[0.5, 0.5], &p, TOL),
            Err(Error::UnsortedAlphas { index: 1 })
        );
        assert_eq!(
            decompose_table(&n, &[0.5, 1.5], &p, TOL),
            Err(Error::InvalidAlpha(1.5))
        );
        assert!(decompose_table(&n, &[0.5], &[v(&[1.0, 2.0])], TOL).is_err());
    }

    #[test]
    fn table_flags_degenerate_cells() {
        let t = decompose_table(&shifted(0.5), &[0.25, 0.75], &[v(&[1.0])], TOL).unwrap();
        assert!(t.is_degenerate(0, 0));
        assert_eq!(t.value(0, 0), 0.0);
        assert!(!t.is_degenerate(1, 0));
        assert!((t.value(1, 0) - 1.0).abs() <= TOL);
    }

    #[test]
    fn reconstruction() {
        let alphas: Vec<f64> = (1..100).map(|k| k as f64 * 0.01).collect();
        let n = standard(2);
        let table = decompose_table(&n, &alphas, &[v(&[1.0, 0.0])], TOL).unwrap();
        let r = reconstruct_norm(table);
        let approx = r.eval(&v(&[1.0, 0.0]), 1.0).unwrap();
        assert!((approx - 0.5).abs() <= 0.01 + 1e-12);
        assert_eq!(r.eval(&v(&[1.0, 0.0]), 0.001).unwrap(), 0.0);
        // homogeneity: (−3, 0) = −3·(1, 0)
        let approx = r.eval(&v(&[-3.0, 0.0]), 2.0).unwrap();
        assert!((approx - 0.4).abs() <= 0.01 + 1e-12);
        assert_eq!(r.eval(&v(&[0.0, 0.0]), 1.0).unwrap(), 0.99);
        assert_eq!(r.eval(&v(&[0.0, 0.0]), 0.0).unwrap(), 0.0);
        assert_eq!(r.eval(&v(&[1.0, 1.0]), 1.0), Err(Error::UntabulatedPoint));

        let table = decompose_table(&indicator(1), &alphas, &[v(&[1.0])], TOL).unwrap();
        assert_eq!(reconstruct_norm(table).eval(&v(&[1.0]), 2.0).unwrap(), 0.99);
    }
}

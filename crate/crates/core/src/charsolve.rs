//! The characteristic hypersingular equation
//! `FP int_a^b g(t) / (x - t)^2 dt = f'(x)`.
//!
//! Two independent routes: the closed-form inversion for the solution that
//! is bounded at both ends, and midpoint collocation with a
//! piecewise-constant unknown on each cell.
//!
//! The collocation unknown `g_j` is the constant value of `g` on the cell
//! `(t_{j-1}, t_j)`; it is reported at the cell centre `x_j`.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Grid, Interval, SampledFunction, Site};
use crate::linalg::{lu_solve, norm_inf, residual_norm, DenseMatrix};
use crate::quadrature::{pv_weighted_integral, PvQuadSpec};
use crate::RealFn;

/// Right-hand side `f'` of the characteristic equation, with an optional
/// antiderivative `f` for the inversion route.
#[derive(Clone)]
pub struct CharacteristicProblem {
    interval: Interval,
    fprime: RealFn,
    f: Option<RealFn>,
}

impl std::fmt::Debug for CharacteristicProblem {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("CharacteristicProblem")
            .field("interval", &self.interval)
            .field("has_antiderivative", &self.f.is_some())
            .finish()
    }
}

impl CharacteristicProblem {
    pub fn new(interval: Interval, fprime: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { interval, fprime: Arc::new(fprime), f: None }
    }

    /// Attaches `f`, checking `(f(x+d) - f(x-d)) / 2d` against `f'` at the
    /// quarter points of the interval.
    pub fn with_antiderivative(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        check_derivative(self.interval, &f, &*self.fprime, "f' does not match the derivative of f")?;
        self.f = Some(Arc::new(f));
        Ok(self)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn fprime(&self) -> &RealFn {
        &self.fprime
    }

    pub fn antiderivative(&self) -> Option<&RealFn> {
        self.f.as_ref()
    }
}

pub(crate) fn check_derivative(
    interval: Interval,
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    what: &str,
) -> Result<()> {
    let d = 1e-4 * interval.length();
    for frac in [0.25, 0.5, 0.75] {
        let x = interval.a() + frac * interval.length();
        let fd = (f(x + d) - f(x - d)) / (2.0 * d);
        let exact = df(x);
        if !(fd.is_finite() && exact.is_finite()) {
            return Err(Error::NonFinite { context: "derivative probe" });
        }
        if (fd - exact).abs() > 1e-5 * (1.0 + exact.abs()) {
            return Err(Error::Inconsistent(format!("{what} at x = {x}: {fd} vs {exact}")));
        }
    }
    Ok(())
}

/// Collocation matrix with `(i, j)` entry `1/(x_i - t_j) - 1/(x_i - t_{j-1})`,
/// the exact finite-part integral of `1/(x_i - t)^2` over cell `j`.
pub fn assemble_characteristic(grid: &Grid) -> DenseMatrix {
    let n = grid.n();
    let t = grid.nodes();
    let data: Vec<f64> = grid
        .colloc()
        .par_iter()
        .flat_map_iter(|&x| (1..=n).map(move |j| 1.0 / (x - t[j]) - 1.0 / (x - t[j - 1])))
        .collect();
    DenseMatrix::from_row_major(n, n, data).expect("collocation entries are finite")
}

pub(crate) fn sample_rhs(grid: &Grid, fprime: &dyn Fn(f64) -> f64) -> Result<Vec<f64>> {
    let rhs: Vec<f64> = grid.colloc().iter().map(|&x| fprime(x)).collect();
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { context: "right-hand side f'" });
    }
    Ok(rhs)
}

pub(crate) fn solve_checked(matrix: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let g = lu_solve(matrix, rhs)?;
    let residual = residual_norm(matrix, &g, rhs)?;
    let tolerance = 1e-9 * norm_inf(rhs);
    if residual > tolerance {
        return Err(Error::ResidualTooLarge { residual, tolerance });
    }
    Ok(g)
}

pub(crate) fn require_same_interval(problem: Interval, grid: &Grid) -> Result<()> {
    if problem != grid.interval() {
        return Err(Error::InvalidArgument(format!(
            "grid interval {:?} differs from problem interval {:?}",
            grid.interval(),
            problem
        )));
    }
    Ok(())
}

/// Solves the collocation system; values are reported at cell centres.
pub fn solve_characteristic(problem: &CharacteristicProblem, grid: &Grid) -> Result<SampledFunction> {
    require_same_interval(problem.interval, grid)?;
    let rhs = sample_rhs(grid, &*problem.fprime)?;
    let matrix = assemble_characteristic(grid);
    let g = solve_checked(&matrix, &rhs)?;
    SampledFunction::new(grid.clone(), g, Site::AtColloc)
}

/// Bounded solution at `x` from the inversion formula
/// `g(x) = sqrt((x-a)(b-x)) / pi^2 * PV int f(t) / (sqrt((t-a)(b-t)) (x-t)) dt`.
pub fn invert_characteristic(problem: &CharacteristicProblem, x: f64, spec: &PvQuadSpec) -> Result<f64> {
    let f = problem.f.as_ref().ok_or(Error::MissingAntiderivative)?;
    invert(problem.interval, &**f, x, spec)
}

pub(crate) fn invert(
    interval: Interval,
    f: &(dyn Fn(f64) -> f64 + Send + Sync),
    x: f64,
    spec: &PvQuadSpec,
) -> Result<f64> {
    interval.require_inside(x)?;
    let pv = pv_weighted_integral(f, interval, x, spec)?;
    Ok(interval.edge_weight(x) / (PI * PI) * pv)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub max_error: f64,
}

/// Collocation error against `reference` for each grid size, measured on
/// cell centres within 90% of the half-width from the midpoint.
pub fn convergence_study(
    problem: &CharacteristicProblem,
    n_list: &[usize],
    reference: impl Fn(f64) -> f64,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("n_list must be strictly increasing".into()));
    }
    let iv = problem.interval;
    let (mid, cutoff) = (iv.midpoint(), 0.9 * iv.half_width());
    n_list
        .iter()
        .map(|&n| {
            let grid = Grid::new(iv, n)?;
            let g = solve_characteristic(problem, &grid)?;
            let max_error = g.max_error_where(&reference, |x| (x - mid).abs() <= cutoff);
            Ok(ConvergenceRow { n, max_error })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::quadrature::special::chebyshev_u;
    use approx::assert_abs_diff_eq;

    fn unit() -> Interval {
        Interval::new(-1.0, 1.0).unwrap()
    }

    fn semicircle(x: f64) -> f64 {
        (1.0 - x * x).max(0.0).sqrt()
    }

    #[test]
    fn single_cell_matrix() {
        let m = assemble_characteristic(&build_grid(0.0, 1.0, 1).unwrap());
        assert_eq!(m.as_slice(), &[-4.0]);
    }

    #[test]
    fn two_cell_matrix_entries() {
        let m = assemble_characteristic(&build_grid(-1.0, 1.0, 2).unwrap());
        assert_abs_diff_eq!(m[(0, 0)], -4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)], 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn matrix_is_persymmetric() {
        // Reflecting x -> -x maps cell j to cell n+1-j and keeps each
        // cell integral of 1/(x-t)^2 unchanged.
        let m = assemble_characteristic(&build_grid(-1.0, 1.0, 4).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(m[(i, j)], m[(3 - i, 3 - j)], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn constant_rhs_gives_semicircle() {
        let p = CharacteristicProblem::new(unit(), |_| -PI);
        let g = solve_characteristic(&p, &build_grid(-1.0, 1.0, 100).unwrap()).unwrap();
        assert_eq!(g.site(), Site::AtColloc);
        let err = g.max_error_where(semicircle, |x| x.abs() <= 0.9);
        assert!(err <= 2e-2, "error {err}");
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let p = CharacteristicProblem::new(unit(), |_| 0.0);
        let g = solve_characteristic(&p, &build_grid(-1.0, 1.0, 40).unwrap()).unwrap();
        assert!(g.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linear_rhs_gives_u1_profile() {
        let p = CharacteristicProblem::new(unit(), |x| -4.0 * PI * x);
        let g = solve_characteristic(&p, &build_grid(-1.0, 1.0, 100).unwrap()).unwrap();
        let exact = 2.0 * 0.5 * 0.75f64.sqrt();
        assert!((g.interpolate(0.5) - exact).abs() <= 2e-2);
    }

    #[test]
    fn inversion_examples() {
        let s = PvQuadSpec::default();
        let p = CharacteristicProblem::new(unit(), |_| -PI).with_antiderivative(|t| -PI * t).unwrap();
        assert_abs_diff_eq!(invert_characteristic(&p, 0.0, &s).unwrap(), 1.0, epsilon = 1e-12);
        let c = CharacteristicProblem::new(unit(), |_| 0.0).with_antiderivative(|_| 2.5).unwrap();
        for &x in &[-0.7, 0.1, 0.9] {
            assert_abs_diff_eq!(invert_characteristic(&c, x, &s).unwrap(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn inversion_vanishes_at_the_ends() {
        let s = PvQuadSpec::default();
        let p = CharacteristicProblem::new(unit(), |_| -PI).with_antiderivative(|t| -PI * t).unwrap();
        let mut last = f64::INFINITY;
        for &x in &[0.99, 0.9999, 0.999999] {
            let v = invert_characteristic(&p, x, &s).unwrap().abs();
            assert!(v < last);
            last = v;
            let v = invert_characteristic(&p, -x, &s).unwrap().abs();
            assert!(v <= last * (1.0 + 1e-9));
        }
        assert!(last < 2e-3);
    }

    #[test]
    fn additive_constant_in_f_drops_out() {
        let s = PvQuadSpec::default();
        let base = CharacteristicProblem::new(unit(), |x| -2.0 * PI * x).with_antiderivative(|t| -PI * t * t).unwrap();
        let shifted =
            CharacteristicProblem::new(unit(), |x| -2.0 * PI * x).with_antiderivative(|t| -PI * t * t + 17.0).unwrap();
        for &x in &[-0.8, -0.2, 0.3, 0.75] {
            let a = invert_characteristic(&base, x, &s).unwrap();
            let b = invert_characteristic(&shifted, x, &s).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            assert_abs_diff_eq!(a, x * semicircle(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn inversion_errors() {
        let s = PvQuadSpec::default();
        let p = CharacteristicProblem::new(unit(), |_| -PI);
        assert_eq!(invert_characteristic(&p, 0.0, &s), Err(Error::MissingAntiderivative));
        let p = p.with_antiderivative(|t| -PI * t).unwrap();
        assert!(matches!(invert_characteristic(&p, -1.0, &s), Err(Error::OutsideOpenInterval { .. })));
        let bad = CharacteristicProblem::new(unit(), |_| -PI).with_antiderivative(|t| PI * t);
        assert!(matches!(bad, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn inversion_agrees_with_collocation() {
        let s = PvQuadSpec::new(200).unwrap();
        let p = CharacteristicProblem::new(unit(), |_| -PI).with_antiderivative(|t| -PI * t).unwrap();
        let grid = build_grid(-1.0, 1.0, 100).unwrap();
        let g = solve_characteristic(&p, &grid).unwrap();
        for &x in grid.colloc().iter().filter(|x| x.abs() <= 0.9) {
            let inv = invert_characteristic(&p, x, &s).unwrap();
            assert!((inv - g.interpolate(x)).abs() <= 5e-2);
        }
    }

    #[test]
    fn collocation_is_linear() {
        let grid = build_grid(-1.0, 1.0, 60).unwrap();
        let f1 = |x: f64| (3.0 * x).sin();
        let f2 = |x: f64| 1.0 + x * x;
        let (alpha, beta) = (0.7, -2.3);
        let s1 = solve_characteristic(&CharacteristicProblem::new(unit(), f1), &grid).unwrap();
        let s2 = solve_characteristic(&CharacteristicProblem::new(unit(), f2), &grid).unwrap();
        let mix = CharacteristicProblem::new(unit(), move |x| alpha * f1(x) + beta * f2(x));
        let s = solve_characteristic(&mix, &grid).unwrap();
        for k in 0..60 {
            let lin = alpha * s1.values()[k] + beta * s2.values()[k];
            assert_abs_diff_eq!(s.values()[k], lin, epsilon = 1e-10);
        }
    }

    #[test]
    fn endpoint_decay_and_reflection() {
        let p = CharacteristicProblem::new(unit(), |_| -PI);
        let mut prev: Option<(f64, f64)> = None;
        for n in [50, 100, 200] {
            let grid = build_grid(-1.0, 1.0, n).unwrap();
            let g = solve_characteristic(&p, &grid).unwrap();
            let v = g.values();
            let gmax = norm_inf(v);
            let bound = 3.0 * (grid.h() * 2.0).sqrt() * gmax;
            let (first, near_last) = (v[0].abs(), v[n - 2].abs());
            assert!(first <= bound && near_last <= bound);
            if let Some((pf, pl)) = prev {
                assert!(first < pf && near_last < pl);
            }
            prev = Some((first, near_last));
            for j in 0..n {
                assert_abs_diff_eq!(v[j], v[n - 1 - j], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn convergence_table() {
        let p = CharacteristicProblem::new(unit(), |_| -PI);
        let rows = convergence_study(&p, &[25, 50, 100, 200], semicircle).unwrap();
        assert!(rows.windows(2).all(|w| w[1].max_error < w[0].max_error));

        let zero = CharacteristicProblem::new(unit(), |_| 0.0);
        let rows = convergence_study(&zero, &[10, 20], |_| 0.0).unwrap();
        assert!(rows.iter().all(|r| r.max_error == 0.0));

        let fine = solve_characteristic(&p, &build_grid(-1.0, 1.0, 80).unwrap()).unwrap();
        let rows = convergence_study(&p, &[40, 80], |x| fine.interpolate(x)).unwrap();
        assert_eq!(rows[1].max_error, 0.0);

        assert!(convergence_study(&p, &[50, 25], semicircle).is_err());
    }

    #[test]
    fn chebyshev_family_matches_oracle_profile() {
        for k in 0..3usize {
            let p = CharacteristicProblem::new(unit(), move |x| -PI * (k + 1) as f64 * chebyshev_u(k, x));
            let g = solve_characteristic(&p, &build_grid(-1.0, 1.0, 200).unwrap()).unwrap();
            let err = g.max_error_where(|x| chebyshev_u(k, x) * semicircle(x), |x| x.abs() <= 0.9);
            assert!(err <= 3e-2, "k = {k}: {err}");
        }
    }

    #[test]
    fn rejects_mismatched_grid_and_bad_rhs() {
        let p = CharacteristicProblem::new(unit(), |_| -PI);
        assert!(solve_characteristic(&p, &build_grid(0.0, 1.0, 4).unwrap()).is_err());
        let p = CharacteristicProblem::new(unit(), |x| 1.0 / x);
        let r = solve_characteristic(&p, &build_grid(-1.0, 1.0, 3).unwrap());
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }
}

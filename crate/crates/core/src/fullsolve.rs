//! The full equation `FP int_a^b [1/(x-t)^2 + K0(x,t)] g(t) dt = f'(x)`.
//!
//! Solved either by direct collocation, or by inverting the characteristic
//! part to obtain `g(x) + int N1(x,t) g(t) dt = f1(x)` with `K0 = dK1/dx`,
//! which is discretized by the Nyström method on Chebyshev nodes.

use std::sync::Arc;

use rayon::prelude::*;

use crate::charsolve::{
    assemble_characteristic, check_derivative, invert, require_same_interval, sample_rhs, solve_checked,
};
use crate::error::{Error, Result};
use crate::grid::{Grid, Interval, SampledFunction, Site};
use crate::linalg::{lu_solve, DenseMatrix};
use crate::quadrature::{nystrom_rule, PvQuadSpec};
use crate::{KernelFn, RealFn};

#[derive(Clone)]
pub struct FullProblem {
    interval: Interval,
    k0: KernelFn,
    k1: Option<KernelFn>,
    fprime: RealFn,
    f: Option<RealFn>,
}

impl std::fmt::Debug for FullProblem {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("FullProblem")
            .field("interval", &self.interval)
            .field("has_k1", &self.k1.is_some())
            .field("has_antiderivative", &self.f.is_some())
            .finish()
    }
}

impl FullProblem {
    pub fn new(
        interval: Interval,
        k0: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        fprime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { interval, k0: Arc::new(k0), k1: None, fprime: Arc::new(fprime), f: None }
    }

    /// Attaches `K1` with `dK1/dx = K0`, checked by central differences in
    /// `x` at a few probe points.
    pub fn with_k1(mut self, k1: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let iv = self.interval;
        for frac in [0.2, 0.5, 0.8] {
            let t = iv.a() + frac * iv.length();
            let k0 = &self.k0;
            check_derivative(iv, &|x| k1(x, t), &|x| k0(x, t), "K0 is not dK1/dx")?;
        }
        self.k1 = Some(Arc::new(k1));
        Ok(self)
    }

    pub fn with_antiderivative(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        check_derivative(self.interval, &f, &*self.fprime, "f' does not match the derivative of f")?;
        self.f = Some(Arc::new(f));
        Ok(self)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn k0(&self) -> &KernelFn {
        &self.k0
    }
}

/// Characteristic matrix plus `h * K0(x_i, t_j)`.
pub fn assemble_full(grid: &Grid, k0: &(dyn Fn(f64, f64) -> f64 + Send + Sync)) -> Result<DenseMatrix> {
    let mut m = assemble_characteristic(grid);
    let n = grid.n();
    let h = grid.h();
    let (x, t) = (grid.colloc(), grid.nodes());
    let regular: Vec<f64> = (0..n * n).into_par_iter().map(|k| h * k0(x[k / n], t[k % n + 1])).collect();
    if regular.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { context: "regular kernel K0" });
    }
    for (k, r) in regular.into_iter().enumerate() {
        m[(k / n, k % n)] += r;
    }
    Ok(m)
}

/// Direct collocation; values are reported at cell centres.
pub fn solve_full_collocation(problem: &FullProblem, grid: &Grid) -> Result<SampledFunction> {
    require_same_interval(problem.interval, grid)?;
    let rhs = sample_rhs(grid, &*problem.fprime)?;
    let matrix = assemble_full(grid, &*problem.k0)?;
    let g = solve_checked(&matrix, &rhs)?;
    SampledFunction::new(grid.clone(), g, Site::AtColloc)
}

/// Sampled kernel `N1` and right side `f1` of the regularized equation.
#[derive(Debug, Clone, PartialEq)]
pub struct FredholmSystem {
    pub nodes: Vec<f64>,
    pub n1: DenseMatrix,
    pub f1: Vec<f64>,
}

/// Values of a Nyström solution at its quadrature nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalSolution {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

/// Samples `N1(x_k, t_l)` and `f1(x_k)` at the given nodes. Both are the
/// characteristic inversion applied to `K1(., t)` and `f`.
pub fn fredholm_reduce(problem: &FullProblem, spec: &PvQuadSpec, nodes: &[f64]) -> Result<FredholmSystem> {
    let k1 = problem.k1.as_ref().ok_or(Error::MissingK1)?;
    let f = problem.f.as_ref().ok_or(Error::MissingAntiderivative)?;
    let iv = problem.interval;
    for &x in nodes {
        iv.require_inside(x)?;
    }
    let f1 = nodes.iter().map(|&x| invert(iv, &**f, x, spec)).collect::<Result<Vec<_>>>()?;
    let m = nodes.len();
    let data = (0..m * m)
        .into_par_iter()
        .map(|k| {
            let (x, t) = (nodes[k / m], nodes[k % m]);
            invert(iv, &|tau| k1(tau, t), x, spec)
        })
        .collect::<Result<Vec<_>>>()?;
    let n1 = DenseMatrix::from_row_major(m, m, data)?;
    Ok(FredholmSystem { nodes: nodes.to_vec(), n1, f1 })
}

/// Solves `(I + N1 diag(weights)) g = f1`.
pub fn solve_fredholm(system: &FredholmSystem, weights: &[f64]) -> Result<NodalSolution> {
    let m = system.nodes.len();
    if weights.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: weights.len() });
    }
    if system.f1.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: system.f1.len() });
    }
    if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidArgument("Nyström weights must be positive".into()));
    }
    let mut a = DenseMatrix::identity(m);
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] += system.n1[(i, j)] * weights[j];
        }
    }
    let values = lu_solve(&a, &system.f1)?;
    Ok(NodalSolution { nodes: system.nodes.clone(), values })
}

/// Regularized route end to end on the Chebyshev Nyström rule with
/// `nodes` points; also returns the rule's weights.
pub fn solve_fredholm_route(
    problem: &FullProblem,
    spec: &PvQuadSpec,
    nodes: usize,
) -> Result<(NodalSolution, Vec<f64>)> {
    let (x, w) = nystrom_rule(problem.interval, nodes);
    let system = fredholm_reduce(problem, spec, &x)?;
    Ok((solve_fredholm(&system, &w)?, w))
}

/// Nyström interpolant `g(x) = f1(x) - sum_l w_l N1(x, t_l) g_l` at any
/// interior `x`.
pub fn nystrom_interpolate(
    problem: &FullProblem,
    spec: &PvQuadSpec,
    solution: &NodalSolution,
    weights: &[f64],
    x: f64,
) -> Result<f64> {
    let k1 = problem.k1.as_ref().ok_or(Error::MissingK1)?;
    let f = problem.f.as_ref().ok_or(Error::MissingAntiderivative)?;
    let iv = problem.interval;
    let mut g = invert(iv, &**f, x, spec)?;
    for ((&t, &w), &gl) in solution.nodes.iter().zip(weights).zip(&solution.values) {
        g -= w * invert(iv, &|tau| k1(tau, t), x, spec)? * gl;
    }
    Ok(g)
}

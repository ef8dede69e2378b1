//! Numerical solvers for hypersingular integral equations on an interval.
//!
//! Three routes are provided for equations with the `1/(x - t)^2` kernel:
//! the closed-form bounded-solution inversion, midpoint collocation with
//! piecewise-constant unknowns, and reduction to a second-kind Fredholm
//! equation solved by Nyström discretization. The [`cowin`] module applies
//! them to a plane-strain crack in a porous elastic (Cowin–Nunziato) medium.

pub mod charsolve;
pub mod cowin;
pub mod error;
pub mod fullsolve;
pub mod grid;
pub mod linalg;
pub mod quadrature;
pub mod table;

pub use error::{Error, Result};
pub use grid::{build_grid, Grid, Interval, SampledFunction, Site};
pub use linalg::{lu_solve, residual_norm, DenseMatrix};

use std::sync::Arc;

/// Shared real function of one variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Shared real function of two variables `(x, t)`.
pub type KernelFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

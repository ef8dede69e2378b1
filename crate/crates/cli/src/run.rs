//! Dispatch from a validated configuration to the solvers.

use std::f64::consts::PI;

use hypersingular::charsolve::{convergence_study, invert_characteristic, solve_characteristic, CharacteristicProblem};
use hypersingular::cowin::{porosity_sweep, solve_crack, MaterialParams};
use hypersingular::fullsolve::{solve_fredholm_route, solve_full_collocation, FullProblem};
use hypersingular::quadrature::special::{chebyshev_t, chebyshev_u};
use hypersingular::quadrature::{OscIntSpec, PvQuadSpec, TailOrder};
use hypersingular::table::ResultTable;
use hypersingular::{Error, Grid, Interval};

use crate::config::{Command, Method, Rhs, RunConfig, Tail};

/// Right-hand side family mapped onto `(a, b)`, with its antiderivative and
/// the exact bounded solution of the characteristic equation.
#[derive(Debug, Clone, Copy)]
pub struct RhsFamily {
    rhs: Rhs,
    coeff: f64,
    mid: f64,
    r: f64,
}

impl RhsFamily {
    pub fn new(rhs: Rhs, coeff: f64, interval: Interval) -> Self {
        Self { rhs, coeff, mid: interval.midpoint(), r: interval.half_width() }
    }

    fn u(&self, x: f64) -> f64 {
        (x - self.mid) / self.r
    }

    pub fn fprime(&self, x: f64) -> f64 {
        let u = self.u(x);
        -self.coeff
            * PI
            * match self.rhs {
                Rhs::ConstantPi => 1.0,
                Rhs::LinearPi => u,
                Rhs::ChebyshevU(k) => (k + 1) as f64 * chebyshev_u(k, u),
            }
    }

    pub fn f(&self, x: f64) -> f64 {
        let u = self.u(x);
        -self.coeff
            * PI
            * self.r
            * match self.rhs {
                Rhs::ConstantPi => u,
                Rhs::LinearPi => 0.5 * u * u,
                Rhs::ChebyshevU(k) => chebyshev_t(k + 1, u),
            }
    }

    pub fn exact(&self, x: f64) -> f64 {
        let u = self.u(x);
        let w = self.r * (1.0 - u * u).max(0.0).sqrt();
        self.coeff
            * w
            * match self.rhs {
                Rhs::ConstantPi => 1.0,
                Rhs::LinearPi => 0.5 * u,
                Rhs::ChebyshevU(k) => chebyshev_u(k, u),
            }
    }
}

fn osc_spec(cfg: &RunConfig) -> Result<OscIntSpec, Error> {
    let tail = match cfg.tail_order {
        Tail::None => TailOrder::None,
        Tail::InverseCube => TailOrder::InverseCube,
    };
    OscIntSpec::new(cfg.s_max, cfg.panels_per_period, tail)
}

fn material(cfg: &RunConfig) -> Result<MaterialParams, Error> {
    MaterialParams::new(cfg.lambda, cfg.mu, cfg.alpha, cfg.beta, cfg.xi, cfg.sigma0)
}

fn characteristic_problem(cfg: &RunConfig, iv: Interval) -> Result<CharacteristicProblem, Error> {
    let fam = RhsFamily::new(cfg.rhs, cfg.rhs_coeff, iv);
    CharacteristicProblem::new(iv, move |x| fam.fprime(x)).with_antiderivative(move |x| fam.f(x))
}

/// Runs the configured command and returns its output table.
pub fn run(cfg: &RunConfig) -> Result<ResultTable, Error> {
    let iv = Interval::new(cfg.a, cfg.b)?;
    match cfg.command {
        Command::Characteristic => {
            let p = characteristic_problem(cfg, iv)?;
            let grid = Grid::new(iv, cfg.n)?;
            let mut t = ResultTable::new(["t", "g"]);
            match cfg.method {
                Method::Inversion => {
                    let spec = PvQuadSpec::new(cfg.m)?;
                    for &x in grid.colloc() {
                        t.push(vec![x, invert_characteristic(&p, x, &spec)?])?;
                    }
                }
                _ => {
                    for (x, g) in solve_characteristic(&p, &grid)?.points() {
                        t.push(vec![x, g])?;
                    }
                }
            }
            Ok(t)
        }
        Command::Full => {
            let fam = RhsFamily::new(cfg.rhs, cfg.rhs_coeff, iv);
            let c = cfg.kernel_coeff;
            let p = FullProblem::new(iv, move |x, t| c * (x * t).cos(), move |x| fam.fprime(x))
                .with_k1(move |x, t| if t == 0.0 { c * x } else { c * (x * t).sin() / t })?
                .with_antiderivative(move |x| fam.f(x))?;
            let mut t = ResultTable::new(["t", "g"]);
            match cfg.method {
                Method::Fredholm => {
                    let (sol, _) = solve_fredholm_route(&p, &PvQuadSpec::new(cfg.m)?, cfg.nystrom_nodes)?;
                    for (x, g) in sol.nodes.iter().zip(&sol.values) {
                        t.push(vec![*x, *g])?;
                    }
                }
                _ => {
                    for (x, g) in solve_full_collocation(&p, &Grid::new(iv, cfg.n)?)?.points() {
                        t.push(vec![x, g])?;
                    }
                }
            }
            Ok(t)
        }
        Command::Crack => {
            let sol = solve_crack(&material(cfg)?, cfg.half_length, cfg.n, &osc_spec(cfg)?)?;
            let mut t = ResultTable::new(["x", "opening"]);
            for (x, w) in sol.opening.points() {
                t.push(vec![x, w])?;
            }
            Ok(t)
        }
        Command::Sweep => {
            let rows = porosity_sweep(&material(cfg)?, &cfg.porosity_list, cfg.half_length, cfg.n, &osc_spec(cfg)?)?;
            let mut t = ResultTable::new(["N", "opening0", "tip_coeff"]);
            for r in rows {
                t.push(vec![r.n, r.opening0, r.tip_coeff])?;
            }
            Ok(t)
        }
        Command::Convergence => {
            let p = characteristic_problem(cfg, iv)?;
            let fam = RhsFamily::new(cfg.rhs, cfg.rhs_coeff, iv);
            let mut t = ResultTable::new(["n", "max_error"]);
            for r in convergence_study(&p, &cfg.n_list, move |x| fam.exact(x))? {
                t.push(vec![r.n as f64, r.max_error])?;
            }
            Ok(t)
        }
    }
}

/// Process exit status for a solver error. Input problems share the
/// configuration code; each numerical failure mode gets its own.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SingularMatrix { .. } => 4,
        Error::ResidualTooLarge { .. } => 5,
        Error::IntegrandNotDecaying { .. } => 6,
        Error::DegenerateFit(_) => 7,
        Error::NonFinite { .. } | Error::Inconsistent(_) => 8,
        _ => 2,
    }
}

/// Short machine-readable name of an error.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::SingularMatrix { .. } => "singular_matrix",
        Error::ResidualTooLarge { .. } => "residual_too_large",
        Error::IntegrandNotDecaying { .. } => "integrand_not_decaying",
        Error::DegenerateFit(_) => "degenerate_fit",
        Error::NonFinite { .. } => "non_finite",
        Error::Inconsistent(_) => "inconsistent",
        _ => "invalid_input",
    }
}

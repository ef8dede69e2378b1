//! Plane-strain crack under normal load in a Cowin–Nunziato porous elastic
//! medium.
//!
//! The crack-face opening `g` on `(-b, b)` satisfies
//! `int g(xi) K(x - xi) dxi = -(1 - N)^2 sigma0 / (2 mu)` with
//! `K(x) = (1/pi) int_0^inf L(s) cos(s x) ds`. Since `L(s) ~ A s - B/s`,
//! the kernel splits into the finite-part core `-A / (pi x^2)` and a
//! remainder (logarithmic at the origin) that is evaluated numerically.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fullsolve::{solve_full_collocation, FullProblem};
use crate::grid::{Grid, Interval, SampledFunction};
use crate::quadrature::special::{
    gauss_legendre_5, rational_cosine_transform, rational_cosine_transform_squared, rational_sine_transform,
};
use crate::quadrature::{oscillatory_halfline_integral, OscIntSpec};

/// Elastic and porosity constants of the medium plus the applied load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub sigma0: f64,
}

impl MaterialParams {
    /// Validates the constants. `sigma0 = 0` is accepted (unloaded crack).
    pub fn new(lambda: f64, mu: f64, alpha: f64, beta: f64, xi: f64, sigma0: f64) -> Result<Self> {
        let p = Self { lambda, mu, alpha, beta, xi, sigma0 };
        p.validate()?;
        Ok(p)
    }

    /// Classical elastic material (`beta = 0`) with unit porosity constants.
    pub fn classical(lambda: f64, mu: f64, sigma0: f64) -> Result<Self> {
        Self::new(lambda, mu, 1.0, 0.0, 1.0, sigma0)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.lambda, self.mu, self.alpha, self.beta, self.xi, self.sigma0];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMaterial("all constants must be finite".into()));
        }
        let checks = [
            (self.mu > 0.0, "mu > 0"),
            (self.lambda + 2.0 * self.mu > 0.0, "lambda + 2 mu > 0"),
            (self.xi > 0.0, "xi > 0"),
            (self.alpha > 0.0, "alpha > 0"),
            (self.beta >= 0.0, "beta >= 0"),
            (self.sigma0 >= 0.0, "sigma0 >= 0"),
        ];
        if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
            return Err(Error::InvalidMaterial(format!("constraint {what} violated")));
        }
        let n = self.porosity();
        if !(0.0..1.0).contains(&n) {
            return Err(Error::PorosityOutOfRange(n));
        }
        Ok(())
    }

    /// `N = beta^2 / (xi (lambda + 2 mu))`, equal to `(l2^2 / l1^2) H` for
    /// `beta > 0` and well defined at `beta = 0`.
    pub fn porosity(&self) -> f64 {
        self.beta * self.beta / (self.xi * (self.lambda + 2.0 * self.mu))
    }

    /// Copy with `beta` chosen so that the porosity parameter equals `n`.
    pub fn with_porosity(&self, n: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&n) {
            return Err(Error::PorosityOutOfRange(n));
        }
        let beta = (n * self.xi * (self.lambda + 2.0 * self.mu)).sqrt();
        Self::new(self.lambda, self.mu, self.alpha, beta, self.xi, self.sigma0)
    }
}

/// Dimensionless groups of the medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// `mu / (lambda + 2 mu)`.
    pub c2: f64,
    /// `beta / (lambda + 2 mu)`.
    pub h: f64,
    /// `alpha / beta`; undefined when `beta = 0`.
    pub l1sq: Option<f64>,
    /// `alpha / xi`.
    pub l2sq: f64,
    /// Porosity parameter in `[0, 1)`.
    pub n: f64,
}

impl DimensionlessParams {
    pub fn symbol(&self) -> KernelSymbol {
        KernelSymbol { n: self.n, c2: self.c2 }
    }
}

pub fn derive_dimensionless(params: &MaterialParams) -> Result<DimensionlessParams> {
    params.validate()?;
    let m = params.lambda + 2.0 * params.mu;
    let c2 = params.mu / m;
    let h = params.beta / m;
    let l1sq = (params.beta > 0.0).then(|| params.alpha / params.beta);
    let l2sq = params.alpha / params.xi;
    let n = params.porosity();
    Ok(DimensionlessParams { c2, h, l1sq, l2sq, n })
}

/// The transform symbol
/// `L(s) = (s/q) [2 N c^2 s^2 (q - s) + (1-N)(1-N-c^2) q]`,
/// `q = sqrt(s^2 + 1 - N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSymbol {
    pub n: f64,
    pub c2: f64,
}

/// `L(s) = a s - b / s + O(s^-3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptote {
    pub a: f64,
    pub b: f64,
    /// `b` recovered by Richardson extrapolation of `s (a s - L(s))`.
    pub b_fitted: f64,
    /// Set when the closed form and the fit disagree and `b` is the fitted value.
    pub used_fit: bool,
}

impl KernelSymbol {
    pub fn new(n: f64, c2: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&n) {
            return Err(Error::PorosityOutOfRange(n));
        }
        if !(c2 > 0.0 && c2 < 1.0) {
            return Err(Error::InvalidArgument(format!("c^2 must lie in (0, 1), got {c2}")));
        }
        Ok(Self { n, c2 })
    }

    pub fn eval(&self, s: f64) -> f64 {
        let (n, c2) = (self.n, self.c2);
        let e = 1.0 - n;
        let q = (s * s + e).sqrt();
        // q - s rewritten to avoid cancellation at large s.
        let q_minus_s = e / (q + s);
        s * (2.0 * n * c2 * s * s * q_minus_s / q + e * (e - c2))
    }

    /// `L(s) - A s` in the cancellation-free form
    /// `-N c^2 (1-N)^2 s (2s + q) / ((q + s)^2 q)`.
    pub fn excess(&self, s: f64) -> f64 {
        let (n, c2) = (self.n, self.c2);
        let e = 1.0 - n;
        let q = (s * s + e).sqrt();
        let qs = q + s;
        -n * c2 * e * e * s * (2.0 * s + q) / (qs * qs * q)
    }

    /// Leading slope `(1 - N)^2 (1 - c^2)`.
    pub fn slope(&self) -> f64 {
        let e = 1.0 - self.n;
        e * e * (1.0 - self.c2)
    }

    pub fn asymptote(&self) -> Asymptote {
        let a = self.slope();
        let e = 1.0 - self.n;
        let b = 0.75 * self.n * self.c2 * e * e;
        // v(s) = s (a s - L(s)) = b + O(s^-2).
        let v = |s: f64| -s * self.excess(s);
        let b_fitted = (4.0 * v(200.0) - v(100.0)) / 3.0;
        let used_fit = (b - b_fitted).abs() > 0.01 * b.abs() + 1e-9 * a;
        Asymptote { a, b: if used_fit { b_fitted } else { b }, b_fitted, used_fit }
    }

    pub fn split(&self, spec: OscIntSpec) -> KernelSplit {
        let asymptote = self.asymptote();
        let b = asymptote.b;
        // Third-order coefficient d of s^-3 left after the -B s / (1 + s^2)
        // proxy, by Richardson extrapolation. Any value keeps the split
        // exact; a good one makes the numerically integrated part decay
        // like s^-5.
        let w = |s: f64| s.powi(3) * (self.excess(s) + b * s / (1.0 + s * s));
        let d = (4.0 * w(200.0) - w(100.0)) / 3.0;
        KernelSplit { symbol: *self, asymptote, d, spec }
    }
}

/// `L(s)` at the given dimensionless parameters.
pub fn symbol_l(s: f64, dp: &DimensionlessParams) -> f64 {
    dp.symbol().eval(s)
}

pub fn kernel_asymptote(dp: &DimensionlessParams) -> Asymptote {
    dp.symbol().asymptote()
}

/// `K(x) = -A / (pi x^2) + K0_regular(x)`.
///
/// With `P`, `P2` the cosine transforms of `s / (1 + s^2)` and
/// `s / (1 + s^2)^2`,
/// `pi K0_regular(x) = int R(s) cos(s x) ds - B P(x) + d P2(x)` where
/// `R = L - A s + B s / (1 + s^2) - d s / (1 + s^2)^2`. The `-B P` part
/// carries the logarithmic singularity at `x = 0`; the rest is continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSplit {
    symbol: KernelSymbol,
    asymptote: Asymptote,
    d: f64,
    spec: OscIntSpec,
}

impl KernelSplit {
    /// Coefficient `A` of the hypersingular core.
    pub fn a(&self) -> f64 {
        self.asymptote.a
    }

    pub fn asymptote(&self) -> Asymptote {
        self.asymptote
    }

    fn is_classical(&self) -> bool {
        self.symbol.n == 0.0
    }

    /// `(1/pi) (int R cos(s x) ds + d P2(x))`, the continuous part.
    fn continuous_part(&self, x: f64) -> Result<f64> {
        let b = self.asymptote.b;
        let (sym, d) = (self.symbol, self.d);
        let remainder = move |s: f64| {
            let r = 1.0 + s * s;
            sym.excess(s) + b * s / r - d * s / (r * r)
        };
        let r = oscillatory_halfline_integral(remainder, x, &self.spec)?;
        Ok((r.value + d * rational_cosine_transform_squared(x)) / PI)
    }

    /// `(1/pi) int_0^inf (L(s) - A s) cos(s x) ds` for `x != 0`.
    pub fn k0_regular(&self, x: f64) -> Result<f64> {
        if self.is_classical() {
            return Ok(0.0);
        }
        if x == 0.0 {
            return Err(Error::InvalidArgument("regular kernel is log-singular at 0".into()));
        }
        let b = self.asymptote.b;
        Ok(self.continuous_part(x)? - b * rational_cosine_transform(x) / PI)
    }

    /// `int_lo^hi K0_regular(u) du`. The logarithmic part is integrated in
    /// closed form, the continuous part by five-point Gauss-Legendre, so
    /// the interval may contain the origin.
    pub fn cell_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        if self.is_classical() {
            return Ok(0.0);
        }
        let b = self.asymptote.b;
        let log_part = -b * (rational_sine_transform(hi) - rational_sine_transform(lo)) / PI;
        let (gx, gw) = gauss_legendre_5();
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let mut smooth = 0.0;
        for (u, w) in gx.iter().zip(&gw) {
            smooth += w * self.continuous_part(mid + half * u)?;
        }
        Ok(log_part + half * smooth)
    }
}

pub fn regular_kernel_k0(x: f64, dp: &DimensionlessParams, spec: &OscIntSpec) -> Result<f64> {
    dp.symbol().split(*spec).k0_regular(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrackSolution {
    pub half_length: f64,
    /// Opening sampled at cell centres of the grid on `(-b, b)`.
    pub opening: SampledFunction,
    pub params: MaterialParams,
    pub dimensionless: DimensionlessParams,
    /// Right-tip amplitude `C` in `opening ~ C sqrt(b^2 - x^2)`.
    pub tip_coefficient: f64,
}

impl CrackSolution {
    pub fn grid(&self) -> &Grid {
        self.opening.grid()
    }

    /// Opening at the crack centre.
    pub fn center_opening(&self) -> f64 {
        self.opening.interpolate(0.0)
    }
}

/// Right-hand side of the standard-form equation, computed without using
/// the cancellation of `(1 - N)^2`.
fn load_with_porosity_factor(p: &MaterialParams, dp: &DimensionlessParams, a: f64) -> f64 {
    let e = 1.0 - dp.n;
    PI * e * e * p.sigma0 / (2.0 * p.mu * a)
}

/// Right-hand side after cancelling `(1 - N)^2`, equal to the classical
/// amplitude times `pi`.
fn classical_amplitude(p: &MaterialParams, dp: &DimensionlessParams) -> f64 {
    p.sigma0 / (2.0 * p.mu * (1.0 - dp.c2))
}

/// Both forms of the standard-form load, for cross-checking.
pub fn effective_load(params: &MaterialParams) -> Result<(f64, f64)> {
    let dp = derive_dimensionless(params)?;
    let a = dp.symbol().slope();
    Ok((load_with_porosity_factor(params, &dp, a), PI * classical_amplitude(params, &dp)))
}

/// Solves the crack equation on `(-b, b)` with `n` cells.
///
/// Dividing by `-A / pi` gives unit finite-part coefficient, regular kernel
/// `-(pi / A) K0_regular(x - t)` and constant load
/// `pi sigma0 / (2 mu (1 - c^2))`. The regular kernel enters the collocation
/// matrix through its exact cell averages, which keeps the discrete system
/// reflection-symmetric despite the logarithmic singularity. The raw
/// solution is negative under tensile load and is negated.
pub fn solve_crack(params: &MaterialParams, b: f64, n: usize, spec: &OscIntSpec) -> Result<CrackSolution> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidArgument(format!("crack half-length must be positive, got {b}")));
    }
    if n < 10 {
        return Err(Error::InvalidArgument(format!("need at least 10 cells, got {n}")));
    }
    let dp = derive_dimensionless(params)?;
    let split = dp.symbol().split(*spec);
    let a = split.a();

    let rhs = load_with_porosity_factor(params, &dp, a);
    let rhs_cancelled = PI * classical_amplitude(params, &dp);
    if (rhs - rhs_cancelled).abs() > 1e-12 * rhs_cancelled.abs() {
        return Err(Error::Inconsistent(format!("load forms disagree: {rhs} vs {rhs_cancelled}")));
    }

    let interval = Interval::symmetric(b)?;
    let grid = Grid::new(interval, n)?;
    let h = grid.h();
    // Offsets x_i - t over cell j cover [(k - 1/2) h, (k + 1/2) h] with
    // k = i - j; the kernel is even, so |k| = 0..n-1 suffices.
    let cache: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let c = k as f64;
            split.cell_integral((c - 0.5) * h, (c + 0.5) * h).map(|v| -(PI / a) * v / h)
        })
        .collect::<Result<_>>()?;
    // Collocation samples the regular kernel at the right node t_j of cell
    // j; the cell average is returned there.
    let kernel = move |x: f64, t: f64| {
        let k = ((x - t) / h + 0.5).round().abs() as usize;
        cache[k.min(n - 1)]
    };
    let problem = FullProblem::new(interval, kernel, move |_| rhs_cancelled);
    let raw = solve_full_collocation(&problem, &grid)?;
    let opening: Vec<f64> = raw.values().iter().map(|v| -v).collect();
    let opening = SampledFunction::new(grid, opening, raw.site())?;

    let mut sol = CrackSolution { half_length: b, opening, params: *params, dimensionless: dp, tip_coefficient: 0.0 };
    sol.tip_coefficient = tip_amplitude(&sol, Tip::Right)?;
    Ok(sol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tip {
    Left,
    Right,
}

/// Least-squares amplitude `C` of `opening ~ C sqrt(b^2 - x^2)` over the
/// outer 10% of cells next to the tip, leaving out the cell at the tip.
pub fn tip_amplitude(sol: &CrackSolution, tip: Tip) -> Result<f64> {
    let n = sol.opening.values().len();
    let window = (0.1 * n as f64).round() as usize;
    if window < 3 {
        return Err(Error::DegenerateFit(format!("only {window} cells in the tip window")));
    }
    let idx: Vec<usize> = match tip {
        Tip::Right => (n - 1 - window..n - 1).collect(),
        Tip::Left => (1..=window).collect(),
    };
    let b2 = sol.half_length * sol.half_length;
    let xs = sol.opening.abscissae();
    let vs = sol.opening.values();
    let (mut num, mut den) = (0.0, 0.0);
    for k in idx {
        let s = (b2 - xs[k] * xs[k]).sqrt();
        num += vs[k] * s;
        den += s * s;
    }
    Ok(num / den)
}

/// Tip amplitude normalized by its classical value
/// `sigma0 / (2 mu (1 - c^2))`; equals 1 for a non-porous medium.
pub fn stress_concentration(sol: &CrackSolution) -> Result<f64> {
    let classical = classical_amplitude(&sol.params, &sol.dimensionless);
    if classical == 0.0 {
        return Err(Error::DegenerateFit("zero load gives no reference amplitude".into()));
    }
    Ok(sol.tip_coefficient / classical)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: f64,
    pub opening0: f64,
    pub tip_coeff: f64,
}

/// Re-solves the crack for each porosity value by adjusting `beta`.
pub fn porosity_sweep(
    base: &MaterialParams,
    n_values: &[f64],
    b: f64,
    cells: usize,
    spec: &OscIntSpec,
) -> Result<Vec<SweepRow>> {
    n_values
        .par_iter()
        .map(|&nv| {
            let params = base.with_porosity(nv)?;
            let sol = solve_crack(&params, b, cells, spec)?;
            Ok(SweepRow { n: nv, opening0: sol.center_opening(), tip_coeff: stress_concentration(&sol)? })
        })
        .collect()
}

use std::f64::consts::PI;

use super::special::gauss_legendre_5;
use crate::error::{Error, Result};

/// Declared decay of the integrand beyond the truncation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailOrder {
    /// No decay model: the tail is dropped without a bound.
    None,
    /// `|F(s)| <= C / s^3` for `s >= s_max`.
    #[default]
    InverseCube,
}

/// Truncated-panel rule for `int_0^inf F(s) cos(s x) ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscIntSpec {
    s_max: f64,
    panels_per_period: usize,
    tail_order: TailOrder,
}

impl OscIntSpec {
    pub fn new(s_max: f64, panels_per_period: usize, tail_order: TailOrder) -> Result<Self> {
        if !(s_max.is_finite() && s_max > 0.0) {
            return Err(Error::InvalidQuadrature(format!("s_max must be positive, got {s_max}")));
        }
        if panels_per_period < 4 {
            return Err(Error::InvalidQuadrature(format!("panels_per_period must be >= 4, got {panels_per_period}")));
        }
        Ok(Self { s_max, panels_per_period, tail_order })
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    pub fn panels_per_period(&self) -> usize {
        self.panels_per_period
    }

    pub fn tail_order(&self) -> TailOrder {
        self.tail_order
    }
}

impl Default for OscIntSpec {
    fn default() -> Self {
        Self { s_max: 200.0, panels_per_period: 8, tail_order: TailOrder::InverseCube }
    }
}

/// Truncated integral plus the bound on what was discarded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscIntegral {
    pub value: f64,
    /// `C / (2 s_max^2)` with `C` estimated from samples beyond `s_max`;
    /// `None` when no tail model is declared.
    pub tail_bound: Option<f64>,
}

/// `int_0^inf F(s) cos(s x) ds`, truncated at `s_max`.
///
/// `[0, s_max]` is split into equal panels no longer than
/// `2 pi / max(|x|, 1) / panels_per_period`, each integrated with
/// five-point Gauss-Legendre.
pub fn oscillatory_halfline_integral(f: impl Fn(f64) -> f64, x: f64, spec: &OscIntSpec) -> Result<OscIntegral> {
    if !x.is_finite() {
        return Err(Error::NonFinite { context: "transform argument" });
    }
    let s_max = spec.s_max();
    let target = 2.0 * PI / x.abs().max(1.0) / spec.panels_per_period() as f64;
    let panels = (s_max / target).ceil().max(1.0) as usize;
    let len = s_max / panels as f64;
    let (gx, gw) = gauss_legendre_5();

    let mut value = 0.0;
    for p in 0..panels {
        let lo = p as f64 * len;
        let mid = lo + 0.5 * len;
        let mut panel = 0.0;
        for (u, w) in gx.iter().zip(&gw) {
            let s = mid + 0.5 * len * u;
            let v = f(s);
            if !v.is_finite() {
                return Err(Error::NonFinite { context: "oscillatory integrand" });
            }
            panel += w * v * (s * x).cos();
        }
        value += 0.5 * len * panel;
    }

    let tail_bound = match spec.tail_order() {
        TailOrder::None => None,
        TailOrder::InverseCube => Some(inverse_cube_tail(&f, s_max)? / (2.0 * s_max * s_max)),
    };
    Ok(OscIntegral { value, tail_bound })
}

/// Estimates `C = sup |F(s)| s^3` on `[s_max, 2 s_max]` and rejects
/// integrands whose scaled magnitude keeps growing.
fn inverse_cube_tail(f: &impl Fn(f64) -> f64, s_max: f64) -> Result<f64> {
    let scaled = |s: f64| -> Result<f64> {
        let v = f(s);
        if v.is_finite() {
            Ok(v.abs() * s.powi(3))
        } else {
            Err(Error::NonFinite { context: "oscillatory integrand tail" })
        }
    };
    let probes = [1.0, 1.25, 1.5, 1.75, 2.0].map(|r| r * s_max);
    let mut c = 0.0f64;
    for s in probes {
        c = c.max(scaled(s)?);
    }
    let first = scaled(probes[0])?;
    let last = scaled(probes[4])?;
    if last > 1.5 * first + f64::MIN_POSITIVE {
        return Err(Error::IntegrandNotDecaying { s_max });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_integrand() {
        let r = oscillatory_halfline_integral(|_| 0.0, 3.0, &OscIntSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.tail_bound, Some(0.0));
    }

    #[test]
    fn exponential_closed_forms() {
        let spec = OscIntSpec::default();
        let r0 = oscillatory_halfline_integral(|s| (-s).exp(), 0.0, &spec).unwrap();
        assert_abs_diff_eq!(r0.value, 1.0, epsilon = 1e-11);
        let r1 = oscillatory_halfline_integral(|s| (-s).exp(), 1.0, &spec).unwrap();
        assert_abs_diff_eq!(r1.value, 0.5, epsilon = 1e-11);
    }

    #[test]
    fn exponential_against_fine_step_oracle() {
        // Composite midpoint rule with a tiny step, independent of Gauss panels.
        let x = 1.0;
        let h = 1e-4;
        let oracle: f64 = (0..400_000)
            .map(|i| {
                let s = (i as f64 + 0.5) * h;
                (-s).exp() * (s * x).cos()
            })
            .sum::<f64>()
            * h;
        assert_abs_diff_eq!(oracle, 0.5, epsilon = 1e-8);
        let r = oscillatory_halfline_integral(|s| (-s).exp(), x, &OscIntSpec::default()).unwrap();
        assert_abs_diff_eq!(r.value, oracle, epsilon = 1e-8);
    }

    #[test]
    fn error_at_least_halves_when_panels_double() {
        for &x in &[0.0, 1.0, 2.5] {
            let exact = 1.0 / (1.0 + x * x);
            let err = |ppp| {
                let spec = OscIntSpec::new(60.0, ppp, TailOrder::None).unwrap();
                (oscillatory_halfline_integral(|s| (-s).exp(), x, &spec).unwrap().value - exact).abs()
            };
            let (e4, e8) = (err(4), err(8));
            assert!(e8 <= 0.5 * e4, "x = {x}: {e4:e} -> {e8:e}");
        }
    }

    #[test]
    fn rejects_slow_decay() {
        let spec = OscIntSpec::default();
        let r = oscillatory_halfline_integral(|s| 1.0 / (1.0 + s), 1.0, &spec);
        assert!(matches!(r, Err(Error::IntegrandNotDecaying { .. })));
        let ok = oscillatory_halfline_integral(|s| 1.0 / (1.0 + s).powi(3), 1.0, &spec).unwrap();
        let bound = ok.tail_bound.unwrap();
        assert!(bound > 0.0 && bound <= 1.0 / (2.0 * 200.0f64.powi(2)));
        let none = OscIntSpec::new(200.0, 8, TailOrder::None).unwrap();
        let r = oscillatory_halfline_integral(|s| 1.0 / (1.0 + s), 1.0, &none).unwrap();
        assert_eq!(r.tail_bound, None);
    }

    #[test]
    fn rejects_bad_spec_and_samples() {
        assert!(OscIntSpec::new(0.0, 8, TailOrder::None).is_err());
        assert!(OscIntSpec::new(10.0, 3, TailOrder::None).is_err());
        let r = oscillatory_halfline_integral(|s| 1.0 / (s - s), 1.0, &OscIntSpec::default());
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn discarded_tail_within_bound() {
        // F = 1/(4+s)^3 at x = 0 has the closed form 1/32.
        for &s_max in &[20.0, 50.0, 200.0] {
            let spec = OscIntSpec::new(s_max, 8, TailOrder::InverseCube).unwrap();
            let r = oscillatory_halfline_integral(|s| (4.0 + s).powi(-3), 0.0, &spec).unwrap();
            assert!((r.value - 1.0 / 32.0).abs() <= r.tail_bound.unwrap() + 1e-13);
        }
    }
}

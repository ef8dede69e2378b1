use std::f64::consts::PI;

use super::special::chebyshev_u;
use crate::error::{Error, Result};
use crate::grid::Interval;

/// Number of first-kind Chebyshev nodes used for integrals against
/// `1 / sqrt((t - a)(b - t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PvQuadSpec {
    m: usize,
}

impl PvQuadSpec {
    pub fn new(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidQuadrature(format!("need m >= 4 quadrature nodes, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

impl Default for PvQuadSpec {
    fn default() -> Self {
        Self { m: 200 }
    }
}

/// Nodes `mid + half * cos((2k - 1) pi / 2m)` and the uniform weight `pi / m`.
///
/// The rule integrates `p(t) / sqrt((t - a)(b - t))` exactly for polynomials
/// `p` of degree below `2m`. Nodes are returned in increasing order.
pub fn chebyshev_rule(interval: Interval, m: usize) -> (Vec<f64>, f64) {
    let (mid, half) = (interval.midpoint(), interval.half_width());
    let nodes = (1..=m).rev().map(|k| mid + half * ((2 * k - 1) as f64 * PI / (2 * m) as f64).cos()).collect();
    (nodes, PI / m as f64)
}

/// Nodes and weights for plain integrals `int_a^b F(t) dt` whose integrand
/// behaves like `sqrt((t - a)(b - t))` times a smooth function: the
/// Chebyshev rule with the weight folded into each node weight.
pub fn nystrom_rule(interval: Interval, m: usize) -> (Vec<f64>, Vec<f64>) {
    let (nodes, w) = chebyshev_rule(interval, m);
    let weights = nodes.iter().map(|&t| w * interval.edge_weight(t)).collect();
    (nodes, weights)
}

fn sample(f: &impl Fn(f64) -> f64, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { context: "integrand sample" })
    }
}

/// `int_a^b f(t) / sqrt((t - a)(b - t)) dt`.
pub fn weighted_integral(f: impl Fn(f64) -> f64, interval: Interval, spec: &PvQuadSpec) -> Result<f64> {
    let (nodes, w) = chebyshev_rule(interval, spec.m());
    let mut acc = 0.0;
    for t in nodes {
        acc += sample(&f, t)?;
    }
    Ok(w * acc)
}

/// Principal value `PV int_a^b f(t) / (sqrt((t - a)(b - t)) (x - t)) dt`.
///
/// The singular part is removed by subtracting `f(x)`; the weighted
/// principal value of `1 / (x - t)` vanishes identically inside `(a, b)`,
/// so only the smooth difference quotient is integrated.
pub fn pv_weighted_integral(f: impl Fn(f64) -> f64, interval: Interval, x: f64, spec: &PvQuadSpec) -> Result<f64> {
    interval.require_inside(x)?;
    let fx = sample(&f, x)?;
    let (nodes, w) = chebyshev_rule(interval, spec.m());
    let collision = 1e-12 * interval.length();
    let mut acc = 0.0;
    for t in nodes {
        let d = x - t;
        let q = if d.abs() < collision {
            // Limit of the quotient at t = x is -f'(x).
            let room = (x - interval.a()).min(interval.b() - x);
            let delta = (1e-5 * interval.length()).min(0.5 * room);
            -(sample(&f, x + delta)? - sample(&f, x - delta)?) / (2.0 * delta)
        } else {
            (sample(&f, t)? - fx) / d
        };
        acc += q;
    }
    Ok(w * acc)
}

/// Closed form of `FP int_{-1}^{1} sqrt(1 - t^2) U_k(t) / (x - t)^2 dt`,
/// which equals `-pi (k + 1) U_k(x)`.
pub fn finite_part_chebyshev_oracle(k: usize, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::OutsideOpenInterval { x, a: -1.0, b: 1.0 });
    }
    Ok(-PI * (k + 1) as f64 * chebyshev_u(k, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit() -> Interval {
        Interval::new(-1.0, 1.0).unwrap()
    }

    /// Midpoint rule on `t = cos(theta)` with a symmetric ball of radius
    /// `eps` removed around `x`; independent of the Chebyshev node set.
    fn pv_oracle(f: impl Fn(f64) -> f64, x: f64, eps: f64) -> f64 {
        let seg = |lo: f64, hi: f64| {
            // Substitute t = cos(theta), so dt / sqrt(1 - t^2) = d(theta).
            let (th_hi, th_lo) = (lo.acos(), hi.acos());
            let k = 200_000;
            let h = (th_hi - th_lo) / k as f64;
            (0..k)
                .map(|i| {
                    let th = th_lo + (i as f64 + 0.5) * h;
                    let t = th.cos();
                    f(t) / (x - t)
                })
                .sum::<f64>()
                * h
        };
        seg(-1.0, x - eps) + seg(x + eps, 1.0)
    }

    #[test]
    fn spec_rejects_small_m() {
        assert!(PvQuadSpec::new(3).is_err());
        assert!(PvQuadSpec::new(4).is_ok());
    }

    #[test]
    fn weighted_moments() {
        let s = PvQuadSpec::new(16).unwrap();
        assert_abs_diff_eq!(weighted_integral(|_| 1.0, unit(), &s).unwrap(), PI, epsilon = 1e-14);
        assert_abs_diff_eq!(weighted_integral(|t| t, unit(), &s).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(weighted_integral(|t| t * t, unit(), &s).unwrap(), PI / 2.0, epsilon = 1e-14);
        // Independent check of the second moment.
        let k = 100_000;
        let mid: f64 = (0..k)
            .map(|i| {
                let th = (i as f64 + 0.5) * PI / k as f64;
                th.cos().powi(2)
            })
            .sum::<f64>()
            * PI
            / k as f64;
        assert_abs_diff_eq!(mid, PI / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn weighted_integral_on_shifted_interval() {
        let iv = Interval::new(2.0, 5.0).unwrap();
        let s = PvQuadSpec::new(8).unwrap();
        // int 1/w = pi on any interval; int t/w = pi * midpoint.
        assert_abs_diff_eq!(weighted_integral(|_| 1.0, iv, &s).unwrap(), PI, epsilon = 1e-13);
        assert_abs_diff_eq!(weighted_integral(|t| t, iv, &s).unwrap(), 3.5 * PI, epsilon = 1e-12);
    }

    #[test]
    fn pv_constant_vanishes() {
        let s = PvQuadSpec::default();
        for &x in &[-0.9, -0.3, 0.0, 0.41, 0.95] {
            assert_abs_diff_eq!(pv_weighted_integral(|_| 1.0, unit(), x, &s).unwrap(), 0.0);
        }
        assert!(pv_oracle(|_| 1.0, 0.3, 1e-4).abs() < 1e-3);
    }

    #[test]
    fn pv_linear_is_minus_pi() {
        let s = PvQuadSpec::default();
        for &x in &[-0.9, -0.3, 0.0, 0.41, 0.95] {
            assert_abs_diff_eq!(pv_weighted_integral(|t| t, unit(), x, &s).unwrap(), -PI, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(pv_oracle(|t| t, 0.3, 1e-4), -PI, epsilon = 1e-3);
    }

    #[test]
    fn pv_quadratic() {
        let s = PvQuadSpec::default();
        let v = pv_weighted_integral(|t| t * t, unit(), 0.3, &s).unwrap();
        assert_abs_diff_eq!(v, -PI * 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(pv_oracle(|t| t * t, 0.3, 1e-4), -0.3 * PI, epsilon = 1e-3);
    }

    #[test]
    fn pv_exact_for_low_degree_polynomials() {
        // PV int U-type reductions: PV int T_k(t) / (w (x - t)) = -pi U_{k-1}(x).
        let s = PvQuadSpec::new(12).unwrap();
        let t3 = |t: f64| 4.0 * t.powi(3) - 3.0 * t;
        let t5 = |t: f64| 16.0 * t.powi(5) - 20.0 * t.powi(3) + 5.0 * t;
        for &x in &[-0.77, -0.1, 0.2, 0.63] {
            let v = pv_weighted_integral(t3, unit(), x, &s).unwrap();
            assert_abs_diff_eq!(v, -PI * chebyshev_u(2, x), epsilon = 1e-12);
            let v = pv_weighted_integral(t5, unit(), x, &s).unwrap();
            assert_abs_diff_eq!(v, -PI * chebyshev_u(4, x), epsilon = 1e-12);
        }
    }

    #[test]
    fn pv_continuous_in_x() {
        let s = PvQuadSpec::default();
        let f = |t: f64| t.powi(3) - 0.5 * t;
        for &x in &[-0.6, 0.0, 0.37] {
            let a = pv_weighted_integral(f, unit(), x, &s).unwrap();
            let b = pv_weighted_integral(f, unit(), x + 1e-6, &s).unwrap();
            assert!((a - b).abs() <= 1e-4);
        }
    }

    #[test]
    fn pv_antisymmetric_for_even_f() {
        let s = PvQuadSpec::default();
        let f = |t: f64| t * t + (2.0 * t).cos();
        for &x in &[0.15, 0.5, 0.88] {
            let p = pv_weighted_integral(f, unit(), x, &s).unwrap();
            let m = pv_weighted_integral(f, unit(), -x, &s).unwrap();
            assert_abs_diff_eq!(p, -m, epsilon = 1e-12);
        }
    }

    #[test]
    fn pv_at_a_quadrature_node() {
        let s = PvQuadSpec::new(9).unwrap();
        let (nodes, _) = chebyshev_rule(unit(), 9);
        // The middle node of an odd rule is exactly 0 up to rounding.
        let x = nodes[4];
        let v = pv_weighted_integral(|t| t * t, unit(), x, &s).unwrap();
        assert_abs_diff_eq!(v, -PI * x, epsilon = 1e-8);
    }

    #[test]
    fn pv_rejects_outside() {
        let s = PvQuadSpec::default();
        assert!(matches!(pv_weighted_integral(|t| t, unit(), 1.0, &s), Err(Error::OutsideOpenInterval { .. })));
        assert!(matches!(
            pv_weighted_integral(|t| if t > 0.2 { f64::NAN } else { t }, unit(), 0.1, &PvQuadSpec::new(5).unwrap()),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn finite_part_oracle_values() {
        assert_abs_diff_eq!(finite_part_chebyshev_oracle(0, 0.5).unwrap(), -PI, epsilon = 1e-15);
        assert_abs_diff_eq!(finite_part_chebyshev_oracle(1, 0.5).unwrap(), -2.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(finite_part_chebyshev_oracle(2, 0.0).unwrap(), 3.0 * PI, epsilon = 1e-14);
        assert!(finite_part_chebyshev_oracle(0, 1.0).is_err());
    }

    #[test]
    fn finite_part_oracle_matches_derivative_of_cauchy_identity() {
        // FP int sqrt(1-t^2) U_k(t)/(x-t)^2 = -d/dx PV int sqrt(1-t^2) U_k(t)/(x-t)
        // and sqrt(1-t^2) U_k = (1 - t^2) U_k / w, so the PV rule applies.
        let s = PvQuadSpec::default();
        for k in 0..3 {
            let g = move |t: f64| (1.0 - t * t) * chebyshev_u(k, t);
            for &x in &[-0.4, 0.1, 0.5] {
                let d = 1e-5;
                let hp = pv_weighted_integral(g, unit(), x + d, &s).unwrap();
                let hm = pv_weighted_integral(g, unit(), x - d, &s).unwrap();
                let fp = -(hp - hm) / (2.0 * d);
                assert_abs_diff_eq!(fp, finite_part_chebyshev_oracle(k, x).unwrap(), epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn nystrom_rule_integrates_semicircle() {
        let (nodes, w) = nystrom_rule(unit(), 64);
        let s: f64 = nodes.iter().zip(&w).map(|(t, wi)| wi * (1.0 - t * t).sqrt()).sum();
        // int sqrt(1 - t^2) dt = pi / 2.
        assert_abs_diff_eq!(s, PI / 2.0, epsilon = 1e-13);
        assert!(nodes.windows(2).all(|p| p[0] < p[1]));
        assert!(nodes.iter().all(|&t| t > -1.0 && t < 1.0));
    }
}

//! Small special-function toolkit: Chebyshev polynomials, exponential
//! integrals and a closed-form cosine transform.

/// Chebyshev polynomial of the second kind `U_k(x)` by the three-term
/// recurrence.
pub fn chebyshev_u(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind `T_k(x)`.
pub fn chebyshev_t(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `e^x E_1(x)` for `x > 0`.
pub fn e1_scaled(x: f64) -> f64 {
    assert!(x > 0.0, "e1_scaled needs x > 0");
    if x < 1.0 {
        // E_1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        (-EULER_GAMMA - x.ln() - sum) * x.exp()
    } else {
        // Modified Lentz on the continued fraction
        // e^x E_1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h
    }
}

/// `e^{-x} Ei(x)` for `x > 0`.
pub fn ei_scaled(x: f64) -> f64 {
    assert!(x > 0.0, "ei_scaled needs x > 0");
    if x < 40.0 {
        // Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..400 {
            term *= x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add < 1e-17 * sum {
                break;
            }
        }
        (EULER_GAMMA + x.ln() + sum) * (-x).exp()
    } else {
        // Asymptotic series, truncated at its smallest term.
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..(x as usize) {
            let next = term * k as f64 / x;
            if next > term {
                break;
            }
            term = next;
            sum += term;
            if term < 1e-17 {
                break;
            }
        }
        sum / x
    }
}

/// `int_0^inf s cos(s x) / (1 + s^2) ds` for `x != 0`, as an Abel-summed
/// improper integral:
/// `-(e^{-|x|} Ei(|x|) - e^{|x|} E_1(|x|)) / 2`. Behaves like `-ln|x|` near 0
/// and like `-1/x^2` for large `|x|`.
pub fn rational_cosine_transform(x: f64) -> f64 {
    let y = x.abs();
    assert!(y > 0.0, "transform is singular at x = 0");
    if y > 40.0 {
        // Difference of the two asymptotic series keeps only odd terms:
        // -(1/y^2)(1! + 3!/y^2 + 5!/y^4 + ...)
        let y2 = y * y;
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 1.0;
        while k < y {
            sum += term;
            term *= (k + 1.0) * (k + 2.0) / y2;
            k += 2.0;
            if term < 1e-17 * sum {
                break;
            }
        }
        return -sum / y2;
    }
    -0.5 * (ei_scaled(y) - e1_scaled(y))
}

/// `int_0^inf sin(s x) / (1 + s^2) ds = (e^{-|x|} Ei(|x|) + e^{|x|} E_1(|x|)) / 2`,
/// odd in `x`; its derivative is [`rational_cosine_transform`].
pub fn rational_sine_transform(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let y = x.abs();
    let v = if y > 40.0 {
        // (1/y)(0! + 2!/y^2 + 4!/y^4 + ...)
        let y2 = y * y;
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 0.0;
        while k < y {
            sum += term;
            term *= (k + 1.0) * (k + 2.0) / y2;
            k += 2.0;
            if term < 1e-17 * sum {
                break;
            }
        }
        sum / y
    } else {
        0.5 * (ei_scaled(y) + e1_scaled(y))
    };
    v.copysign(x)
}

/// `int_0^inf s cos(s x) / (1 + s^2)^2 ds = (1 - |x| Q(|x|)) / 2` where `Q` is
/// [`rational_sine_transform`].
pub fn rational_cosine_transform_squared(x: f64) -> f64 {
    let y = x.abs();
    0.5 * (1.0 - y * rational_sine_transform(y))
}

/// Five-point Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre_5() -> ([f64; 5], [f64; 5]) {
    let r = (10.0f64 / 7.0).sqrt();
    let inner = (5.0 - 2.0 * r).sqrt() / 3.0;
    let outer = (5.0 + 2.0 * r).sqrt() / 3.0;
    let s70 = 70.0f64.sqrt();
    let wi = (322.0 + 13.0 * s70) / 900.0;
    let wo = (322.0 - 13.0 * s70) / 900.0;
    ([-outer, -inner, 0.0, inner, outer], [wo, wi, 128.0 / 225.0, wi, wo])
}

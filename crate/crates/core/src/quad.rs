//! One-dimensional quadrature on finite, logarithmic and half-infinite ranges.

use quadrature::double_exponential;

/// `int_a^b f` by tanh-sinh quadrature.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> f64 {
    double_exponential::integrate(f, a, b, abs_tol).integral
}

/// `int_a^b f(k) dk` for `0 < a < b`, evaluated in the variable `u = ln k`; suited to integrands
/// with power-law behaviour spread over many decades.
pub fn integrate_log(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> f64 {
    assert!(a > 0.0 && b > a);
    let (ua, ub) = (a.ln(), b.ln());
    // Split into unit-width pieces in u so each panel sees a modest dynamic range.
    let pieces = ((ub - ua).ceil() as usize).max(1);
    let du = (ub - ua) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = ua + i as f64 * du;
            integrate(|u| { let k = u.exp(); f(k) * k }, lo, lo + du, abs_tol / pieces as f64)
        })
        .sum()
}

/// `int_a^inf f` via `x = a + t / (1 - t)`.
pub fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64, abs_tol: f64) -> f64 {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let v = f(a + t / s) / (s * s);
            if v.is_finite() { v } else { 0.0 }
        },
        0.0,
        1.0,
        abs_tol,
    )
}

/// `int_R f`.
pub fn integrate_line(f: impl Fn(f64) -> f64, abs_tol: f64) -> f64 {
    integrate_to_infinity(&f, 0.0, 0.5 * abs_tol) + integrate_to_infinity(|x| f(-x), 0.0, 0.5 * abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial() {
        assert!((integrate(|x| x * x, 0.0, 3.0, 1e-14) - 9.0).abs() < 1e-11);
    }

    #[test]
    fn lorentzian_over_line() {
        // int dx / (x^2 + 4) = pi / 2
        assert!((integrate_line(|x| 1.0 / (x * x + 4.0), 1e-13) - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn gaussian_over_line() {
        let got = integrate_line(|x| (-x * x).exp(), 1e-14);
        assert!((got - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn log_range() {
        // int_1^1e6 dk / k^2 = 1 - 1e-6
        let got = integrate_log(|k| 1.0 / (k * k), 1.0, 1e6, 1e-14);
        assert!((got - (1.0 - 1e-6)).abs() < 1e-12);
    }
}

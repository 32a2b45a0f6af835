//! Free resolvent kernels and the closed forms they imply.

use crate::error::{Error, Result};
use crate::spectral::FourierField;

/// Underlying space of a kernel evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    Line,
    Circle { period: f64 },
}

pub(crate) fn check_kappa(kappa: f64) -> Result<()> {
    if kappa.is_finite() && kappa > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("kappa must be positive, got {kappa}")))
    }
}

/// `1 - exp(-x)` without cancellation.
fn one_minus_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Kernel of `(-d^2/dx^2 + kappa^2)^{-1}`.
///
/// On the circle of period `L` the line kernel is periodized (method of images):
/// `(1/2k) (1 - e^{-kL})^{-1} [e^{-kd} + e^{-k(L-d)}]`, with `d` the distance from `x - y` to `L Z`.
pub fn resolvent_kernel(x: f64, y: f64, kappa: f64, geometry: Geometry) -> Result<f64> {
    check_kappa(kappa)?;
    match geometry {
        Geometry::Line => Ok((-kappa * (x - y).abs()).exp() / (2.0 * kappa)),
        Geometry::Circle { period } => {
            if !(period > 0.0) {
                return Err(Error::Domain(format!("period must be positive, got {period}")));
            }
            let r = (x - y).rem_euclid(period);
            let d = r.min(period - r);
            let num = (-kappa * d).exp() + (-kappa * (period - d)).exp();
            Ok(num / (2.0 * kappa * one_minus_exp(kappa * period)))
        }
    }
}

/// Coefficients `(a, b)` of the circle identity `R_k(x,y)^2 = a R_{2k}(x,y) + b`.
///
/// `a = (1 - e^{-2kL}) / (k (1 - e^{-kL})^2)`, `b = e^{-kL} / (2 k^2 (1 - e^{-kL})^2)`.
/// On the line the identity reads `R_k^2 = R_{2k} / k`.
pub fn square_identity_coefficients(kappa: f64, geometry: Geometry) -> Result<(f64, f64)> {
    check_kappa(kappa)?;
    match geometry {
        Geometry::Line => Ok((1.0 / kappa, 0.0)),
        Geometry::Circle { period } => {
            let kl = kappa * period;
            let d = one_minus_exp(kl);
            let a = one_minus_exp(2.0 * kl) / (kappa * d * d);
            let b = (-kl).exp() / (2.0 * kappa * kappa * d * d);
            Ok((a, b))
        }
    }
}

/// The two pieces of the circle Hilbert-Schmidt closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HsClosedForm {
    /// `b L^2 |c_0|^2`, the contribution of the constant in the squared kernel.
    pub mean_term: f64,
    /// `a L sum_k |c_k|^2 / (xi_k^2 + 4 kappa^2)`.
    pub resolvent_term: f64,
}

impl HsClosedForm {
    pub fn total(&self) -> f64 {
        self.mean_term + self.resolvent_term
    }
}

/// Exact `||sqrt(R0) q sqrt(R0)||_HS^2` on the circle, obtained by integrating the squared kernel
/// against `q(x) q(y)`.
pub fn hs_closed_form(q: &FourierField, kappa: f64) -> Result<HsClosedForm> {
    let period = q.grid().period();
    let (a, b) = square_identity_coefficients(kappa, Geometry::Circle { period })?;
    let four_k2 = 4.0 * kappa * kappa;
    let resolvent = period * q.weighted_sum(|xi| 1.0 / (xi * xi + four_k2));
    Ok(HsClosedForm {
        mean_term: b * period * period * q.coeff(0).norm_sqr(),
        resolvent_term: a * resolvent,
    })
}

/// `sum_{n in Z} 1 / (xi_n^2 + kappa^2) = L coth(kappa L / 2) / (2 kappa)`: the (constant)
/// diagonal of the circle resolvent kernel times `L`.
pub fn resolvent_diagonal_sum(kappa: f64, period: f64) -> f64 {
    period / (2.0 * kappa * (0.5 * kappa * period).tanh())
}

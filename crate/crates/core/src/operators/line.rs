//! Continuum (line) versions of the trace and Hilbert-Schmidt formulas, for static comparison
//! with large-period tori.
//!
//! `density` is `|q^(xi)|^2` for the unitary transform `q^(xi) = (2 pi)^{-1/2} int e^{-i xi x} q dx`,
//! so that `int |q^|^2 d xi = int |q|^2 dx`. A torus of period `L` carrying the same function has
//! `c_n = (2 pi)^{1/2} q^(xi_n) / L`, and `L sum_n g(xi_n) |c_n|^2` is a Riemann sum of
//! `int g |q^|^2 d xi`.

use super::kernel::check_kappa;
use crate::error::Result;
use crate::quad;

const TOL: f64 = 1e-14;

/// `||R0^{1/2} q R0^{1/2}||_HS^2 = (1/kappa) int |q^|^2 / (xi^2 + 4 kappa^2)`.
pub fn hs_sq(density: impl Fn(f64) -> f64, kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let k4 = 4.0 * kappa * kappa;
    Ok(quad::integrate_line(|xi| density(xi) / (xi * xi + k4), TOL) / kappa)
}

/// `Re tr{(k - d)^{-1} q (k + d)^{-1} conj(q)} = int 2 kappa |q^|^2 / (4 kappa^2 + xi^2)`.
pub fn akns_trace(density: impl Fn(f64) -> f64, kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let k4 = 4.0 * kappa * kappa;
    Ok(quad::integrate_line(|xi| 2.0 * kappa * density(xi) / (k4 + xi * xi), TOL))
}

/// `int log(4 + xi^2/kappa^2) |q^|^2 / sqrt(4 kappa^2 + xi^2)`, the size of the AKNS half block.
pub fn akns_block_size(density: impl Fn(f64) -> f64, kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let k2 = kappa * kappa;
    Ok(quad::integrate_line(
        |xi| (4.0 + xi * xi / k2).ln() * density(xi) / (4.0 * k2 + xi * xi).sqrt(),
        TOL,
    ))
}

/// `|q^|^2` for `q(x) = a exp(-(x - x0)^2 / (2 w^2))`: `(a w)^2 exp(-w^2 xi^2)`.
pub fn gaussian_density(amplitude: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |xi| (amplitude * width).powi(2) * (-(width * xi).powi(2)).exp()
}

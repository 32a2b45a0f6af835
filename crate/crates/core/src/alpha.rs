//! The renormalized perturbation determinant `alpha(kappa; q)` for the KdV and AKNS families.
//!
//! KdV: `alpha = -log det2(1 + A) = sum_{ell >= 2} (-1)^ell tr(A^ell) / ell` with
//! `A = R0^{1/2} q R0^{1/2}`. AKNS: `alpha = Re sum_{ell >= 1} sigma^{ell-1} tr(B^ell) / ell` with
//! `B = (k - d)^{-1/2} q (k + d)^{-1} conj(q) (k - d)^{-1/2}` and `sigma = -1` for the `+` flows,
//! `+1` for the `-` flows.
//!
//! The quadratic term of each series is taken from the infinite operator (closed-form HS norm
//! for KdV, the exact lattice trace for AKNS); higher terms come from the retained matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::norms::h_minus_one_sq;
use crate::operators::{akns_trace_complex, build_akns_block, build_akns_half_block, build_sandwich, hs_closed_form};
use crate::spectral::FourierField;

/// Default stopping tolerance of the trace series.
pub const DEFAULT_TOL: f64 = 1e-13;
/// Maximal number of terms summed.
pub const MAX_TERMS: usize = 200;
/// Convergence gate on `||A||_HS` (KdV) and on the squared HS norm of the AKNS half block.
pub const DEFAULT_GATE: f64 = 1.0 / 3.0;

/// Value and convergence data of one determinant evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaReport {
    pub value: f64,
    /// `tr(A^2) / 2` for KdV, `Re tr(B)` for AKNS.
    pub leading: f64,
    /// HS norm of the base operator (`A`, or the AKNS half block).
    pub hs: f64,
    /// Highest power included.
    pub terms_used: usize,
    /// Bound on the omitted terms.
    pub tail_bound: f64,
    pub converged: bool,
    /// Imaginary part of the AKNS series before projection; zero for KdV.
    pub imaginary: f64,
}

/// Sign of the cubic term in the AKNS flows, which fixes the sign pattern of the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AknsSign {
    /// `+2|q|^2 q` / `+6|q|^2 q'`: alternating series.
    Plus,
    /// `-2|q|^2 q` / `-6|q|^2 q'`: all terms with sign `+`.
    Minus,
}

impl AknsSign {
    fn ratio(self) -> f64 {
        match self {
            AknsSign::Plus => -1.0,
            AknsSign::Minus => 1.0,
        }
    }
}

/// `sum_{ell > n} x^ell / ell` for `0 <= x < 1`.
pub fn series_tail(x: f64, n: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    let mut ell = n + 1;
    let mut p = x.powi(ell as i32);
    loop {
        let t = p / ell as f64;
        sum += t;
        if t <= 1e-18 * sum || p == 0.0 {
            // the remaining terms are at most t x / (1 - x)
            return sum + t * x / (1.0 - x);
        }
        ell += 1;
        p *= x;
    }
}

/// Powers of a fixed matrix, one at a time.
struct PowerTraces<'a> {
    base: &'a DMatrix<Complex64>,
    current: DMatrix<Complex64>,
}

impl<'a> PowerTraces<'a> {
    /// Starts at `base^start`.
    fn new(base: &'a DMatrix<Complex64>, start: usize) -> Self {
        let mut current = base.clone();
        for _ in 1..start {
            current = &current * base;
        }
        Self { base, current }
    }

    fn trace(&self) -> Complex64 {
        self.current.trace()
    }

    fn advance(&mut self) {
        self.current = &self.current * self.base;
    }
}

/// KdV `alpha` by the trace series, summed until the tail bound drops below `tol` (or
/// [`MAX_TERMS`]). Returns a divergence error when `||A||_HS >= 1`; for `1/3 <= ||A||_HS < 1` the
/// partial data are returned with `converged = false`.
pub fn alpha_kdv_series(q: &FourierField, kappa: f64, tol: f64) -> Result<AlphaReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let a = build_sandwich(q, kappa)?;
    let hs_sq = hs_closed_form(q, kappa)?.total();
    let hs = hs_sq.sqrt();
    if hs >= 1.0 {
        return Err(Error::Divergence { hs });
    }
    let leading = 0.5 * hs_sq;
    let mut value = leading;
    let mut ell = 2;
    let mut tail = series_tail(hs, ell);
    let mut powers = PowerTraces::new(a.entries(), 3);
    while tail > tol && ell < MAX_TERMS {
        ell += 1;
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        value += sign * powers.trace().re / ell as f64;
        powers.advance();
        tail = series_tail(hs, ell);
    }
    Ok(AlphaReport {
        value,
        leading,
        hs,
        terms_used: ell,
        tail_bound: tail,
        converged: hs < DEFAULT_GATE && tail <= tol,
        imaginary: 0.0,
    })
}

/// Eigenvalues of the retained KdV sandwich.
pub fn kdv_eigenvalues(q: &FourierField, kappa: f64) -> Result<Vec<f64>> {
    if !q.is_real() {
        return Err(Error::Domain("the spectral path needs a real potential".into()));
    }
    let a = build_sandwich(q, kappa)?;
    Ok(a.entries().clone().symmetric_eigen().eigenvalues.iter().copied().collect())
}

/// KdV `alpha = -sum_i [log(1 + lambda_i) - lambda_i]` over the eigenvalues of the retained
/// sandwich, with the quadratic part completed to the infinite operator as in the series.
pub fn alpha_kdv_det2(q: &FourierField, kappa: f64) -> Result<f64> {
    let eig = kdv_eigenvalues(q, kappa)?;
    let mut retained = 0.0;
    let mut frob_sq = 0.0;
    for &l in &eig {
        if !(l > -1.0) {
            return Err(Error::DeterminantDomain { eigenvalue: l });
        }
        retained -= l.ln_1p() - l;
        frob_sq += l * l;
    }
    let hs_sq = hs_closed_form(q, kappa)?.total();
    Ok(retained + 0.5 * (hs_sq - frob_sq))
}

/// AKNS `alpha` by the trace series with the default gate.
pub fn alpha_akns(q: &FourierField, kappa: f64, sign: AknsSign, tol: f64) -> Result<AlphaReport> {
    alpha_akns_gated(q, kappa, sign, tol, DEFAULT_GATE)
}

/// AKNS `alpha`; `converged` requires the squared HS norm of the half block to stay below `gate`.
pub fn alpha_akns_gated(q: &FourierField, kappa: f64, sign: AknsSign, tol: f64, gate: f64) -> Result<AlphaReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let half = build_akns_half_block(q, kappa)?;
    let hs = half.frobenius();
    let x = hs * hs;
    let lead = akns_trace_complex(q, kappa)?;
    let mut total = lead;
    let mut ell = 1;
    let mut tail = series_tail(x, ell);
    if tail > tol {
        let b = build_akns_block(q, kappa)?;
        let mut powers = PowerTraces::new(b.entries(), 2);
        let ratio = sign.ratio();
        while tail > tol && ell < MAX_TERMS {
            ell += 1;
            total += powers.trace() * ratio.powi(ell as i32 - 1) / ell as f64;
            powers.advance();
            tail = series_tail(x, ell);
        }
    }
    Ok(AlphaReport {
        value: total.re,
        leading: lead.re,
        hs,
        terms_used: ell,
        tail_bound: tail,
        converged: x < gate && tail <= tol,
        imaginary: total.im,
    })
}

/// What an admissible `kappa` is needed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GatePurpose {
    /// Conservation of the KdV determinant: `1 + 45 ||q||_{H^-1}^2`.
    KdvConserve,
    /// A priori bounds for KdV: `1 + 90 ||q||_{H^-1}^2`.
    KdvBound,
    /// Smallest dyadic `kappa` at which the AKNS block-size integral drops below the gate.
    Akns,
}

/// `L sum log(4 + xi^2/kappa^2) |c|^2 / sqrt(4 kappa^2 + xi^2)`, comparable to the squared HS
/// norm of the AKNS half block.
pub fn akns_block_size(q: &FourierField, kappa: f64) -> f64 {
    let k2 = kappa * kappa;
    q.grid().period() * q.weighted_sum(|xi| (4.0 + xi * xi / k2).ln() / (4.0 * k2 + xi * xi).sqrt())
}

/// Smallest admissible `kappa` with the default AKNS gate.
pub fn kappa_gate(q: &FourierField, purpose: GatePurpose) -> f64 {
    kappa_gate_with(q, purpose, DEFAULT_GATE)
}

/// Smallest admissible `kappa`; `gate` only affects [`GatePurpose::Akns`].
pub fn kappa_gate_with(q: &FourierField, purpose: GatePurpose, gate: f64) -> f64 {
    match purpose {
        GatePurpose::KdvConserve => 1.0 + 45.0 * h_minus_one_sq(q),
        GatePurpose::KdvBound => 1.0 + 90.0 * h_minus_one_sq(q),
        GatePurpose::Akns => {
            let mut kappa = 1.0;
            // the integral decays like log(kappa)/kappa, so this terminates
            while akns_block_size(q, kappa) >= gate && kappa < 1e300 {
                kappa *= 2.0;
            }
            kappa
        }
    }
}

/// Constant of the `H^sigma` envelope: `D <= 2 (1 + sqrt 2) kappa^3 ||A(0)||^3_HS` combined with
/// `||A||_HS^2 <= (5/kappa) <q, (-d^2 + 4 kappa^2)^{-1} q>`.
pub fn d_envelope_constant() -> f64 {
    2.0 * (1.0 + 2f64.sqrt()) * 5f64.powf(1.5)
}

/// The diagnostic `D(t; kappa) = kappa^3 |tr A(t)^2 - tr A(0)^2|` and its a priori envelopes.
#[derive(Clone, Debug, PartialEq)]
pub struct DReport {
    pub kappa: f64,
    pub d: f64,
    /// `C kappa^{3/2} ||q(0)||^3_{H^-1}`.
    pub envelope_h_minus_one: f64,
    /// `C kappa^{-3/2} ||q(0)||^3_{L2} / 8`.
    pub envelope_l2: f64,
    /// `(5/2) kappa^{-2} (||q(t)||_inf + ||q(0)||_inf) ||q(0)||^2_{L2}`.
    pub envelope_sup: f64,
}

/// `D(t; kappa)` for real `q_t`, `q_0` with `kappa >= 1 + 90 ||q_0||_{H^-1}^2`.
pub fn d_diagnostic(q_t: &FourierField, q_0: &FourierField, kappa: f64) -> Result<DReport> {
    if q_t.grid() != q_0.grid() {
        return Err(Error::Config("grid mismatch between q(t) and q(0)".into()));
    }
    let need = kappa_gate(q_0, GatePurpose::KdvBound);
    if kappa < need {
        return Err(Error::Domain(format!("D needs kappa >= {need}, got {kappa}")));
    }
    let now = hs_closed_form(q_t, kappa)?.total();
    let then = hs_closed_form(q_0, kappa)?.total();
    let c = d_envelope_constant();
    let h1 = h_minus_one_sq(q_0).sqrt();
    let l2 = q_0.l2_norm();
    Ok(DReport {
        kappa,
        d: kappa.powi(3) * (now - then).abs(),
        envelope_h_minus_one: c * kappa.powf(1.5) * h1.powi(3),
        envelope_l2: c * kappa.powf(-1.5) * l2.powi(3) / 8.0,
        envelope_sup: 2.5 * kappa.powi(-2) * (q_t.sup_norm() + q_0.sup_norm()) * l2 * l2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::TorusGrid;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos2(amp: f64) -> FourierField {
        let g = TorusGrid::new(1.0, 16).unwrap();
        FourierField::from_modes(&g, &[(1, c(amp, 0.0)), (-1, c(amp, 0.0))], true).unwrap()
    }

    #[test]
    fn zero_field() {
        let z = FourierField::zeros(&TorusGrid::new(1.0, 8).unwrap());
        let r = alpha_kdv_series(&z, 1.0, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
        assert_eq!(alpha_kdv_det2(&z, 1.0).unwrap(), 0.0);
        assert_eq!(alpha_akns(&z, 1.0, AknsSign::Plus, DEFAULT_TOL).unwrap().value, 0.0);
        assert_eq!(kappa_gate(&z, GatePurpose::KdvConserve), 1.0);
        assert_eq!(kappa_gate(&z, GatePurpose::KdvBound), 1.0);
        assert_eq!(kappa_gate(&z, GatePurpose::Akns), 1.0);
    }

    #[test]
    fn cosine_at_kappa_five() {
        let q = cos2(1.0);
        let r = alpha_kdv_series(&q, 5.0, DEFAULT_TOL).unwrap();
        let hs2 = r.hs * r.hs;
        assert!((hs2 - 2.9068e-3).abs() < 1e-7, "{hs2}");
        assert!(r.value >= hs2 / 3.0 && r.value <= 2.0 * hs2 / 3.0);
        assert!(r.converged);
        let det = alpha_kdv_det2(&q, 5.0).unwrap();
        assert!((det - r.value).abs() < 1e-12);
    }

    #[test]
    fn gate_reports_non_convergence() {
        let base = cos2(1.0);
        let hs = alpha_kdv_series(&base, 1.0, DEFAULT_TOL).unwrap().hs;
        let q = base.scale(0.5 / hs);
        let r = alpha_kdv_series(&q, 1.0, DEFAULT_TOL).unwrap();
        assert!((r.hs - 0.5).abs() < 1e-12);
        assert!(!r.converged);
        let big = base.scale(1.2 / hs);
        assert!(matches!(alpha_kdv_series(&big, 1.0, DEFAULT_TOL), Err(Error::Divergence { .. })));
    }

    #[test]
    fn scalar_det2() {
        let l: f64 = 0.1;
        assert!((-(l.ln_1p() - l) - 4.6898e-3).abs() < 1e-7);
    }

    #[test]
    fn det2_domain_error() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(-3.0, 0.0))], true).unwrap();
        assert!(matches!(alpha_kdv_det2(&q, 1.0), Err(Error::DeterminantDomain { .. })));
    }

    #[test]
    fn series_tail_matches_log() {
        for &x in &[0.1f64, 0.3, 0.9] {
            let partial: f64 = (1..=5).map(|l| x.powi(l) / l as f64).sum();
            let want = -(1.0 - x).ln() - partial;
            assert!((series_tail(x, 5) - want).abs() < 1e-14 * want.max(1e-300) + 1e-16);
        }
    }

    #[test]
    fn akns_constant_example() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(0.1, 0.0))], true).unwrap();
        for sign in [AknsSign::Plus, AknsSign::Minus] {
            let r = alpha_akns(&q, 2.0, sign, DEFAULT_TOL).unwrap();
            assert!((r.leading - 3.2826e-3).abs() < 1e-7);
            assert!((r.value - r.leading).abs() <= series_tail(r.hs * r.hs, 1));
            assert!(r.converged);
        }
    }

    #[test]
    fn akns_sign_flips_even_terms() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(0.4, 0.1)), (1, c(0.3, -0.2)), (-2, c(0.1, 0.3))], false).unwrap();
        let p = alpha_akns(&q, 2.0, AknsSign::Plus, DEFAULT_TOL).unwrap();
        let m = alpha_akns(&q, 2.0, AknsSign::Minus, DEFAULT_TOL).unwrap();
        assert_eq!(p.leading, m.leading);
        // (plus + minus)/2 keeps the odd powers only; its difference from the leading term is O(B^3)
        let odd = 0.5 * (p.value + m.value) - p.leading;
        let even = 0.5 * (m.value - p.value);
        assert!(even.abs() > 10.0 * odd.abs());
    }

    #[test]
    fn akns_realness_for_real_potential() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(0.5, 0.0)), (1, c(0.3, -0.2)), (-1, c(0.3, 0.2))], true).unwrap();
        let r = alpha_akns(&q, 1.5, AknsSign::Minus, DEFAULT_TOL).unwrap();
        assert!(r.imaginary.abs() < 1e-12);
    }

    #[test]
    fn gate_examples() {
        let q = cos2(1.0);
        let h = 2.0 / (1.0 + 4.0 * PI * PI);
        assert!((kappa_gate(&q, GatePurpose::KdvConserve) - (1.0 + 45.0 * h)).abs() < 1e-12);
        assert!((kappa_gate(&q, GatePurpose::KdvConserve) - 3.2234).abs() < 1e-4);
        assert!((kappa_gate(&q, GatePurpose::KdvBound) - 5.4468).abs() < 1e-4);
        let k = kappa_gate(&q, GatePurpose::Akns);
        assert!(akns_block_size(&q, k) < DEFAULT_GATE && akns_block_size(&q, k / 2.0) >= DEFAULT_GATE);
    }

    #[test]
    fn d_of_identical_data_vanishes() {
        let q = cos2(0.2);
        let r = d_diagnostic(&q, &q, 8.0).unwrap();
        assert_eq!(r.d, 0.0);
        assert!(d_diagnostic(&q, &cos2(3.0), 2.0).is_err());
    }
}

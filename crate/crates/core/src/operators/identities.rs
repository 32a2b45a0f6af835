//! Trace identities behind the conservation of the perturbation determinant.
//!
//! Each function evaluates both sides as traces of infinite-dimensional operators
//! ([`OperatorChain::trace`]) for a band-limited potential. Writing `R0 = (-d^2 + k^2)^{-1}`,
//! `D- = (k - d)^{-1}`, `D+ = (k + d)^{-1}` and `B = D- q D+ conj(q)`:
//!
//! - KdV telescoping, `ell >= 2`: `tr{(R0 q)^{ell-1} R0 (-q''')} = tr{(R0 q)^{ell-2} R0 (6 q q')}`
//! - KdV base case: `tr{R0 (6 q q')} = 0`
//! - NLS base case: `tr{D- q'' D+ conj(q) - D- q D+ conj(q)''} = 0`
//! - NLS telescoping, `ell >= 1`:
//!   `tr{B^ell D- q'' D+ conj(q) - B^ell D- q D+ conj(q)''}
//!    = tr{B^{ell-1} D- q D+ (2|q|^2 conj(q))} - tr{B^{ell-1} D- (2|q|^2 q) D+ conj(q)}`
//! - Hirota base case: `tr{D- q''' D+ conj(q) + D- q D+ conj(q)'''} = 0`
//! - Hirota telescoping, `ell >= 1`:
//!   `tr{B^ell D- q''' D+ conj(q) + B^ell D- q D+ conj(q)'''}
//!    = -tr{B^{ell-1} D- (6|q|^2 q') D+ conj(q)} - tr{B^{ell-1} D- q D+ (6|q|^2 conj(q)')}`
//!
//! The NLS telescoping identity holds with these signs for either sign of the flow; combined with
//! the flow it forces the AKNS series sign `(-1)^{ell-1}` for `+2|q|^2 q` and `+1` for `-2|q|^2 q`.

use num_complex::Complex64;

use super::chain::OperatorChain;
use super::kernel::check_kappa;
use crate::error::{Error, Result};
use crate::spectral::FourierField;

/// Both sides of one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

struct Ops {
    kappa: f64,
}

impl Ops {
    fn r0(&self) -> impl Fn(f64) -> Complex64 + 'static {
        let k2 = self.kappa * self.kappa;
        move |xi| Complex64::new(1.0 / (xi * xi + k2), 0.0)
    }
    fn dminus(&self) -> impl Fn(f64) -> Complex64 + 'static {
        let k = self.kappa;
        move |xi| Complex64::new(k, -xi).inv()
    }
    fn dplus(&self) -> impl Fn(f64) -> Complex64 + 'static {
        let k = self.kappa;
        move |xi| Complex64::new(k, xi).inv()
    }

    /// `D- a D+ b`
    fn pair(&self, a: &FourierField, b: &FourierField) -> Result<OperatorChain> {
        OperatorChain::new(a.grid()).multiplier(self.dminus()).potential(a)?.multiplier(self.dplus()).potential(b)
    }
}

fn check_band(q: &FourierField, factor: usize) -> Result<()> {
    let n = q.grid().n_max();
    if q.bandwidth(0.0) * factor > n {
        return Err(Error::Domain(format!(
            "identity needs the potential band-limited to N_max/{factor} (bandwidth {}, N_max {n})",
            q.bandwidth(0.0)
        )));
    }
    Ok(())
}

/// KdV telescoping identity for `ell >= 2`.
pub fn kdv_telescope(q: &FourierField, kappa: f64, ell: usize) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    check_band(q, 2)?;
    if ell < 2 {
        return Err(Error::Domain("KdV telescoping needs ell >= 2".into()));
    }
    let ops = Ops { kappa };
    let g = q.grid();
    let r0q = OperatorChain::new(g).multiplier(ops.r0()).potential(q)?;
    let d3 = q.derivative(3).scale(-1.0);
    let qqx = q.multiply(&q.derivative(1))?.scale(6.0);
    let lhs = r0q.power(ell - 1).multiplier(ops.r0()).potential(&d3)?.trace();
    let rhs = r0q.power(ell - 2).multiplier(ops.r0()).potential(&qqx)?.trace();
    Ok(IdentityCheck { name: format!("kdv_telescope_l{ell}"), lhs, rhs })
}

/// `tr{R0 (6 q q')} = 0`.
pub fn kdv_base(q: &FourierField, kappa: f64) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    check_band(q, 2)?;
    let ops = Ops { kappa };
    let qqx = q.multiply(&q.derivative(1))?.scale(6.0);
    let lhs = OperatorChain::new(q.grid()).multiplier(ops.r0()).potential(&qqx)?.trace();
    Ok(IdentityCheck { name: "kdv_base".into(), lhs, rhs: zero() })
}

/// NLS base case.
pub fn nls_base(q: &FourierField, kappa: f64) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    let ops = Ops { kappa };
    let qb = q.conj();
    let lhs = ops.pair(&q.derivative(2), &qb)?.trace() - ops.pair(q, &qb.derivative(2))?.trace();
    Ok(IdentityCheck { name: "nls_base".into(), lhs, rhs: zero() })
}

/// NLS telescoping identity for `ell >= 1`.
pub fn nls_telescope(q: &FourierField, kappa: f64, ell: usize) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    check_band(q, 3)?;
    if ell < 1 {
        return Err(Error::Domain("NLS telescoping needs ell >= 1".into()));
    }
    let ops = Ops { kappa };
    let qb = q.conj();
    let b = ops.pair(q, &qb)?;
    let lhs = b.power(ell).then(&ops.pair(&q.derivative(2), &qb)?).trace()
        - b.power(ell).then(&ops.pair(q, &qb.derivative(2))?).trace();
    let cubic = FourierField::product(&[q, &qb, q])?.scale(2.0);
    let cubic_bar = cubic.conj();
    let rhs = b.power(ell - 1).then(&ops.pair(q, &cubic_bar)?).trace()
        - b.power(ell - 1).then(&ops.pair(&cubic, &qb)?).trace();
    Ok(IdentityCheck { name: format!("nls_telescope_l{ell}"), lhs, rhs })
}

/// Hirota base case.
pub fn hirota_base(q: &FourierField, kappa: f64) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    let ops = Ops { kappa };
    let qb = q.conj();
    let lhs = ops.pair(&q.derivative(3), &qb)?.trace() + ops.pair(q, &qb.derivative(3))?.trace();
    Ok(IdentityCheck { name: "hirota_base".into(), lhs, rhs: zero() })
}

/// Hirota telescoping identity for `ell >= 1`.
pub fn hirota_telescope(q: &FourierField, kappa: f64, ell: usize) -> Result<IdentityCheck> {
    check_kappa(kappa)?;
    check_band(q, 3)?;
    if ell < 1 {
        return Err(Error::Domain("Hirota telescoping needs ell >= 1".into()));
    }
    let ops = Ops { kappa };
    let qb = q.conj();
    let b = ops.pair(q, &qb)?;
    let lhs = b.power(ell).then(&ops.pair(&q.derivative(3), &qb)?).trace()
        + b.power(ell).then(&ops.pair(q, &qb.derivative(3))?).trace();
    let t1 = FourierField::product(&[q, &qb, &q.derivative(1)])?.scale(6.0);
    let t2 = FourierField::product(&[q, &qb, &qb.derivative(1)])?.scale(6.0);
    let rhs = -(b.power(ell - 1).then(&ops.pair(&t1, &qb)?).trace())
        - b.power(ell - 1).then(&ops.pair(q, &t2)?).trace();
    Ok(IdentityCheck { name: format!("hirota_telescope_l{ell}"), lhs, rhs })
}

/// Every identity at the orders exercised by the acceptance suite: KdV with the real field
/// `q_real` (`ell = 2, 3` and the base case) and NLS/Hirota with the complex field `q_complex`
/// (`ell = 1` and the base cases).
pub fn standard_identities(q_real: &FourierField, q_complex: &FourierField, kappa: f64) -> Result<Vec<IdentityCheck>> {
    Ok(vec![
        kdv_telescope(q_real, kappa, 2)?,
        kdv_telescope(q_real, kappa, 3)?,
        kdv_base(q_real, kappa)?,
        nls_base(q_complex, kappa)?,
        nls_telescope(q_complex, kappa, 1)?,
        hirota_base(q_complex, kappa)?,
        hirota_telescope(q_complex, kappa, 1)?,
    ])
}

//! Sobolev, Besov and log-weighted norms, resolvent-weighted quadratic forms, and the
//! dyadic-ladder expressions that are equivalent to them.
//!
//! Dyadic blocks use sharp cutoffs: the low block is `|xi| <= 1` (or `|xi| <= kappa0` for the X/Y
//! norms) and block `N in {1, 2, 4, ...}` is `N < |xi| <= 2N`. The squared mass of a block is
//! `L sum_{n in block} |c_n|^2`.

use crate::error::{Error, Result};
use crate::operators::akns_trace;
use crate::quad;
use crate::spectral::FourierField;

/// Regularity, summability and base frequency of a Besov-type norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSpec {
    pub s: f64,
    /// Summability exponent; `f64::INFINITY` selects the supremum.
    pub r: f64,
    pub kappa0: f64,
}

impl NormSpec {
    pub fn new(s: f64, r: f64, kappa0: f64) -> Result<Self> {
        let spec = Self { s, r, kappa0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(-1.0..=1.0).contains(&self.s) {
            return Err(Error::Domain(format!("regularity s = {} outside [-1, 1]", self.s)));
        }
        if !(self.r >= 1.0) {
            return Err(Error::Domain(format!("summability r = {} must be >= 1", self.r)));
        }
        if !(self.kappa0.is_finite() && self.kappa0 >= 1.0) {
            return Err(Error::Domain(format!("kappa0 = {} must be >= 1", self.kappa0)));
        }
        Ok(())
    }
}

/// Fourier multipliers entering the weighted quadratic forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// `kappa^2 / (xi^2 + 4 kappa^2)`.
    Resolvent,
    /// `kappa^2 / (xi^2 + kappa^2) - kappa^2 / (xi^2 + 4 kappa^2)`: suppresses high frequencies.
    LowPassDiff,
    /// `kappa^2 / (xi^2 + 4 kappa^2) - (kappa/2)^2 / (xi^2 + kappa^2)`: vanishes at `xi = 0`.
    BandPassDiff,
}

impl WeightKind {
    /// Evaluated as the literal difference of resolvent multipliers.
    pub fn weight(&self, xi: f64, kappa: f64) -> f64 {
        let x2 = xi * xi;
        let k2 = kappa * kappa;
        match self {
            WeightKind::Resolvent => k2 / (x2 + 4.0 * k2),
            WeightKind::LowPassDiff => k2 / (x2 + k2) - k2 / (x2 + 4.0 * k2),
            WeightKind::BandPassDiff => k2 / (x2 + 4.0 * k2) - 0.25 * k2 / (x2 + k2),
        }
    }
}

/// Families of dyadic ladders equivalent to Besov norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurrogateFamily {
    /// `N^s <f, w_res(kappa0 N) f>^{1/2}`, valid for `-1 < s < 0`.
    Besov1,
    /// `N^{-1} <f, w_low(kappa0 N) f>^{1/2}`, the `s = -1` endpoint.
    Besov2,
    /// `N^s <f, w_band(kappa0 N) f>^{1/2}`, valid for `-1 < s < 1`.
    Besov3,
    /// `N^s (L sum 2 k^2 |c|^2 / (4 k^2 + xi^2))^{1/2}` at `k = kappa0 N`.
    Z,
}

/// X or Y log-weighted norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XyKind {
    X,
    Y,
}

/// `||q||_{H^{-1}}^2 = L sum |c|^2 / (1 + xi^2)`.
pub fn h_minus_one_sq(q: &FourierField) -> f64 {
    q.grid().period() * q.weighted_sum(|xi| 1.0 / (1.0 + xi * xi))
}

/// `L sum_xi w(xi; kappa) |c(xi)|^2`.
pub fn weighted_form(q: &FourierField, kind: WeightKind, kappa: f64) -> Result<f64> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    Ok(q.grid().period() * q.weighted_sum(|xi| kind.weight(xi, kappa)))
}

/// `<q, (-d^2 + 4 kappa^2)^{-1} q> = L sum |c|^2 / (xi^2 + 4 kappa^2)`.
pub fn resolvent_form(q: &FourierField, kappa: f64) -> Result<f64> {
    Ok(weighted_form(q, WeightKind::Resolvent, kappa)? / (kappa * kappa))
}

/// Squared block masses: `(low, [(N, mass^2)])` for the low block `|xi| <= cut` and
/// `cut N < |xi| <= 2 cut N`, `N = 1, 2, 4, ...`, up to the last occupied block.
pub fn block_masses(q: &FourierField, cut: f64) -> (f64, Vec<(f64, f64)>) {
    let g = q.grid();
    let l = g.period();
    let mut low = 0.0;
    let mut blocks: Vec<(f64, f64)> = Vec::new();
    for (i, c) in q.coeffs().iter().enumerate() {
        let m = c.norm_sqr();
        if m == 0.0 {
            continue;
        }
        let xi = g.wavenumber(g.mode(i)).abs();
        if xi <= cut {
            low += l * m;
            continue;
        }
        // smallest j with xi <= 2^{j+1} cut
        let mut j = (xi / cut).log2().ceil() as i64 - 1;
        while cut * 2f64.powi(j as i32 + 1) < xi {
            j += 1;
        }
        while j > 0 && cut * 2f64.powi(j as i32) >= xi {
            j -= 1;
        }
        let j = j.max(0) as usize;
        if blocks.len() <= j {
            blocks.resize_with(j + 1, || (0.0, 0.0));
        }
        blocks[j].1 += l * m;
    }
    for (j, b) in blocks.iter_mut().enumerate() {
        b.0 = 2f64.powi(j as i32);
    }
    (low, blocks)
}

fn lr_combine(terms: impl Iterator<Item = f64>, r: f64) -> f64 {
    if r.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|t| t.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Sharp-cutoff Besov norm `B^{s,2}_r`.
pub fn besov_norm(q: &FourierField, s: f64, r: f64) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("summability r = {r} must be >= 1")));
    }
    let (low, blocks) = block_masses(q, 1.0);
    let terms = std::iter::once(low.sqrt()).chain(blocks.iter().map(|&(n, m)| n.powf(s) * m.sqrt()));
    Ok(lr_combine(terms, r))
}

/// How far beyond `4 xi_max` the dyadic ladders are summed explicitly (as a power of 2) before
/// the geometric remainder is added.
const LADDER_EXTRA_OCTAVES: i32 = 20;

/// Sum (or supremum) of a dyadic ladder `t(N)`, `N = 1, 2, 4, ...`, whose terms become geometric
/// once `kappa0 N` exceeds every retained frequency.
fn ladder(mut t: impl FnMut(f64) -> f64, r: f64, kappa0: f64, xi_max: f64) -> f64 {
    let stop = 4.0 * xi_max.max(1.0) * 2f64.powi(LADDER_EXTRA_OCTAVES);
    let mut n = 1.0;
    let mut acc = 0.0f64;
    let mut prev;
    let mut last = 0.0;
    loop {
        let v = t(n);
        if r.is_infinite() {
            acc = acc.max(v);
        } else {
            acc += v;
        }
        prev = last;
        last = v;
        // past every retained frequency the terms decay monotonically; keep going until they
        // are negligible so slowly varying (logarithmic) factors do not bias the remainder
        if kappa0 * n > stop && (r.is_infinite() || last <= 1e-17 * acc || n > 1e280) {
            break;
        }
        n *= 2.0;
    }
    if r.is_finite() && last > 0.0 && prev > 0.0 {
        let rho = last / prev;
        if rho < 1.0 {
            acc += last * rho / (1.0 - rho);
        }
    }
    acc
}

/// Dyadic-ladder norm of the chosen family.
pub fn surrogate_norm(q: &FourierField, spec: &NormSpec, family: SurrogateFamily) -> Result<f64> {
    spec.validate()?;
    let s = spec.s;
    match family {
        SurrogateFamily::Besov1 | SurrogateFamily::Z if !(s > -1.0 && s < 0.0) => {
            return Err(Error::Domain(format!("{family:?} needs -1 < s < 0, got {s}")));
        }
        SurrogateFamily::Besov2 if s != -1.0 => {
            return Err(Error::Domain(format!("Besov2 is the s = -1 family, got {s}")));
        }
        SurrogateFamily::Besov3 if !(s > -1.0 && s < 1.0) => {
            return Err(Error::Domain(format!("Besov3 needs -1 < s < 1, got {s}")));
        }
        _ => {}
    }
    let (kind, factor) = match family {
        SurrogateFamily::Besov1 => (WeightKind::Resolvent, 1.0),
        SurrogateFamily::Z => (WeightKind::Resolvent, 2.0),
        SurrogateFamily::Besov2 => (WeightKind::LowPassDiff, 1.0),
        SurrogateFamily::Besov3 => (WeightKind::BandPassDiff, 1.0),
    };
    let r = spec.r;
    let mut err = None;
    let term = |n: f64| -> f64 {
        let form = match weighted_form(q, kind, spec.kappa0 * n) {
            Ok(v) => (factor * v).max(0.0),
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        };
        let t = n.powf(s) * form.sqrt();
        if r.is_infinite() { t } else { t.powf(r) }
    };
    let total = ladder(term, r, spec.kappa0, q.grid().xi_max());
    if let Some(e) = err {
        return Err(e);
    }
    Ok(if r.is_infinite() { total } else { total.powf(1.0 / r) })
}

/// X or Y norm at base frequency `kappa0` (natural logarithms).
pub fn xy_norm(q: &FourierField, kappa0: f64, which: XyKind) -> Result<f64> {
    if !(kappa0.is_finite() && kappa0 > 0.0) {
        return Err(Error::Domain(format!("kappa0 must be positive, got {kappa0}")));
    }
    let (low, blocks) = block_masses(q, kappa0);
    Ok(match which {
        XyKind::Y => {
            let head = (low / kappa0).sqrt();
            blocks
                .iter()
                .map(|&(n, m)| (kappa0 * n).powf(-0.5) * (2.0 * n).ln().powi(2) * m.sqrt())
                .fold(head, f64::max)
        }
        XyKind::X => {
            let sum: f64 = blocks.iter().map(|&(n, m)| (2.0 * n).ln().powi(3) / (kappa0 * n) * m).sum();
            (low / kappa0 + sum).sqrt()
        }
    })
}

/// Real AKNS trace at `kappa`, clamped at zero when round-off makes it slightly negative.
fn clamped_trace(q: &FourierField, kappa: f64) -> Result<f64> {
    let t = akns_trace(q, kappa)?;
    if t < -1e-12 {
        return Err(Error::Consistency(format!("negative AKNS trace {t} at kappa {kappa}")));
    }
    Ok(t.max(0.0))
}

/// Squared trace-ladder expressions equivalent to the squared X/Y norms:
/// `sup_M log^4(2M) T(kappa0 M)` for Y and `sum_M log^3(2M) T(kappa0 M)` for X, where
/// `T(k) = Re tr{(k - d)^{-1} q (k + d)^{-1} conj(q)}` and `M = 1, 2, 4, ...`.
pub fn xy_surrogate_sq(q: &FourierField, kappa0: f64, which: XyKind) -> Result<f64> {
    if !(kappa0.is_finite() && kappa0 > 0.0) {
        return Err(Error::Domain(format!("kappa0 must be positive, got {kappa0}")));
    }
    let mut err = None;
    let term = |m: f64| {
        let t = clamped_trace(q, kappa0 * m).unwrap_or_else(|e| {
            err.get_or_insert(e);
            0.0
        });
        match which {
            XyKind::Y => (2.0 * m).ln().powi(4) * t,
            XyKind::X => (2.0 * m).ln().powi(3) * t,
        }
    };
    let r = match which {
        XyKind::Y => f64::INFINITY,
        XyKind::X => 1.0,
    };
    let v = ladder(term, r, kappa0, q.grid().xi_max());
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Square root of [`xy_surrogate_sq`], on the same scale as [`xy_norm`].
pub fn xy_surrogate(q: &FourierField, kappa0: f64, which: XyKind) -> Result<f64> {
    Ok(xy_surrogate_sq(q, kappa0, which)?.sqrt())
}

/// `int_{kappa0}^{upper} k^{1+2s} / (xi^2 + 4 k^2) dk / (xi^2 + kappa0^2)^s`.
pub fn sec_integral_ratio(xi: f64, kappa0: f64, s: f64, upper: f64) -> f64 {
    let x2 = xi * xi;
    let integral = quad::integrate_log(|k| k.powf(1.0 + 2.0 * s) / (x2 + 4.0 * k * k), kappa0, upper, 1e-14);
    integral / (x2 + kappa0 * kappa0).powf(s)
}

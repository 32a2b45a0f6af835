//! Traces of products of Fourier multipliers and band-limited multiplication operators, taken
//! over the whole lattice rather than a truncated block.
//!
//! For `F = F_1 F_2 ... F_k` the diagonal entry `<e_m, F e_m>` only involves modes within the
//! summed bandwidth of the potentials around `m`, so it is computed exactly for any `m`. The trace
//! is the lattice sum of these entries, explicit near the origin and extrapolated in the tails.

use std::rc::Rc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{self, TailRule};
use crate::spectral::{FourierField, TorusGrid};

type Symbol = Rc<dyn Fn(f64) -> Complex64>;

#[derive(Clone)]
enum Factor {
    Multiplier(Symbol),
    Potential { coeffs: Vec<Complex64>, band: i64 },
}

/// Ordered product of operators, written left to right.
#[derive(Clone)]
pub struct OperatorChain {
    grid: TorusGrid,
    factors: Vec<Factor>,
}

impl OperatorChain {
    pub fn new(grid: &TorusGrid) -> Self {
        Self { grid: grid.clone(), factors: Vec::new() }
    }

    /// Appends the Fourier multiplier with symbol `s(xi)`.
    pub fn multiplier(mut self, s: impl Fn(f64) -> Complex64 + 'static) -> Self {
        self.factors.push(Factor::Multiplier(Rc::new(s)));
        self
    }

    /// Appends multiplication by `q`.
    pub fn potential(mut self, q: &FourierField) -> Result<Self> {
        if q.grid() != &self.grid {
            return Err(Error::Config("potential lives on a different grid".into()));
        }
        let band = q.bandwidth(0.0) as i64;
        let coeffs = (-band..=band).map(|n| q.coeff(n)).collect();
        self.factors.push(Factor::Potential { coeffs, band });
        Ok(self)
    }

    /// Appends every factor of `other`.
    pub fn then(mut self, other: &OperatorChain) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    /// `k`-fold repetition of `self`.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::new(&self.grid);
        for _ in 0..k {
            out.factors.extend(self.factors.iter().cloned());
        }
        out
    }

    fn reach(&self) -> i64 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Potential { band, .. } => *band,
                Factor::Multiplier(_) => 0,
            })
            .sum()
    }

    /// `<e_m, F e_m>` for the infinite-dimensional operator.
    pub fn diagonal(&self, m: i64) -> Complex64 {
        let w = self.reach();
        let width = (2 * w + 1) as usize;
        let zero = Complex64::new(0.0, 0.0);
        let mut v = vec![zero; width];
        v[w as usize] = Complex64::new(1.0, 0.0);
        let mut scratch = vec![zero; width];
        let mut lo = w;
        let mut hi = w;
        for f in self.factors.iter().rev() {
            match f {
                Factor::Multiplier(s) => {
                    for j in lo..=hi {
                        let xi = self.grid.wavenumber(m + j - w);
                        v[j as usize] *= s(xi);
                    }
                }
                Factor::Potential { coeffs, band } => {
                    let (nlo, nhi) = (lo - band, hi + band);
                    for j in nlo..=nhi {
                        let mut acc = zero;
                        for i in (j - band).max(lo)..=(j + band).min(hi) {
                            acc += coeffs[(j - i + band) as usize] * v[i as usize];
                        }
                        scratch[j as usize] = acc;
                    }
                    for j in nlo..=nhi {
                        v[j as usize] = scratch[j as usize];
                    }
                    lo = nlo;
                    hi = nhi;
                }
            }
        }
        v[w as usize]
    }

    /// `sum_{m in Z} <e_m, F e_m>`; requires the diagonal to decay at least like `|m|^{-2}`.
    pub fn trace(&self) -> Complex64 {
        let cutoff = self.grid.n_max() as i64;
        lattice::lattice_sum(|m| self.diagonal(m), cutoff, TailRule::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::sandwich::{akns_trace_complex, build_sandwich, operator_hs_sq, Complement};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matches_dense_product_inside_band() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(1, c(0.5, 0.2)), (-1, c(0.5, -0.2)), (2, c(0.1, 0.0)), (-2, c(0.1, 0.0))], true).unwrap();
        let k = 2.0;
        let r0 = move |xi: f64| c(1.0 / (xi * xi + k * k), 0.0);
        let chain = OperatorChain::new(&g).multiplier(r0).potential(&q).unwrap().multiplier(r0).potential(&q).unwrap();
        // Dense compression is exact for the diagonal at modes well inside the band.
        let a = build_sandwich(&q, k).unwrap();
        let a2 = a.entries() * a.entries();
        for m in -10i64..=10 {
            let dense = a2[(g.index(m), g.index(m))];
            assert!((chain.diagonal(m) - dense).norm() < 1e-15);
        }
    }

    #[test]
    fn chain_trace_reproduces_closed_forms() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(1, c(0.5, 0.2)), (-1, c(0.5, -0.2)), (0, c(0.3, 0.0))], true).unwrap();
        let k = 1.5;
        let r0 = move |xi: f64| c(1.0 / (xi * xi + k * k), 0.0);
        let hs = OperatorChain::new(&g).multiplier(r0).potential(&q).unwrap().multiplier(r0).potential(&q).unwrap().trace();
        let a = build_sandwich(&q, k).unwrap();
        let want = operator_hs_sq(&a, &q, &Complement::new(&g, k).unwrap()).unwrap();
        assert!((hs.re - want).abs() < 1e-13 && hs.im.abs() < 1e-15);

        let qc = FourierField::from_modes(&g, &[(1, c(0.5, 0.2)), (-2, c(0.1, -0.4)), (0, c(0.3, 0.1))], false).unwrap();
        let tr = OperatorChain::new(&g)
            .multiplier(move |xi| c(k, -xi).inv())
            .potential(&qc)
            .unwrap()
            .multiplier(move |xi| c(k, xi).inv())
            .potential(&qc.conj())
            .unwrap()
            .trace();
        let want = akns_trace_complex(&qc, k).unwrap();
        assert!((tr - want).norm() < 1e-13, "{tr} {want}");
        let _ = PI;
    }
}

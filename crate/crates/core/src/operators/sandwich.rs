//! Fourier-basis matrices of the resolvent sandwiches.
//!
//! With respect to the orthonormal basis `e_n(x) = L^{-1/2} exp(i xi_n x)` multiplication by `q`
//! has matrix entries `c_{m-n}` and `(kappa -+ d/dx)^{-1}` are diagonal with entries
//! `1 / (kappa -+ i xi_n)`. Matrices are compressions to the retained band `|m|, |n| <= N_max`;
//! entries with `|m - n| > N_max` vanish, so for `q` band-limited to `N_max / 2` every entry of the
//! infinite matrix that couples two retained modes is represented exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::kernel::{check_kappa, resolvent_diagonal_sum};
use crate::error::{Error, Result};
use crate::lattice::{self, TailRule};
use crate::spectral::{FourierField, TorusGrid};

/// Which operator a [`SandwichMatrix`] realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `R0^{1/2} q R0^{1/2}` with `R0 = (-d^2 + kappa^2)^{-1}`.
    Kdv,
    /// `(k - d)^{-1/2} q (k + d)^{-1} conj(q) (k - d)^{-1/2}`.
    Akns,
    /// `(k - d)^{-1/2} q (k + d)^{-1/2}`, one factor of the AKNS block.
    AknsHalf,
    /// `H^{-1/2} dq H^{-1/2}` with `H = -d^2 + q_ref + kappa^2`.
    Perturbed,
}

/// Dense matrix of a sandwich operator over the retained modes.
#[derive(Clone, Debug)]
pub struct SandwichMatrix {
    kappa: f64,
    flavor: Flavor,
    grid: TorusGrid,
    entries: DMatrix<Complex64>,
}

/// Matrix of multiplication by `q`: `Q_{mn} = c_{m-n}`.
pub fn multiplication_matrix(q: &FourierField) -> DMatrix<Complex64> {
    let g = q.grid();
    let dim = g.modes();
    DMatrix::from_fn(dim, dim, |i, j| q.coeff(g.mode(i) - g.mode(j)))
}

/// `1 / sqrt(xi^2 + kappa^2)`, the symbol of `R0^{1/2}`.
fn half_resolvent(grid: &TorusGrid, kappa: f64) -> Vec<f64> {
    grid.frequencies()
        .iter()
        .map(|xi| 1.0 / (xi * xi + kappa * kappa).sqrt())
        .collect()
}

/// `(kappa + s i xi)^{-1/2}` on the principal branch (continuous from `sqrt(kappa) > 0`).
fn first_order_half(grid: &TorusGrid, kappa: f64, s: f64) -> Vec<Complex64> {
    grid.frequencies()
        .iter()
        .map(|&xi| Complex64::new(kappa, s * xi).sqrt().inv())
        .collect()
}

fn scale_rows_cols(m: &mut DMatrix<Complex64>, left: &[Complex64], right: &[Complex64]) {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            m[(i, j)] *= left[i] * right[j];
        }
    }
}

impl SandwichMatrix {
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Entry for the mode pair `(m, n)`.
    pub fn entry(&self, m: i64, n: i64) -> Complex64 {
        self.entries[(self.grid.index(m), self.grid.index(n))]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `tr(A^ell)` by repeated multiplication.
    pub fn trace_power(&self, ell: usize) -> Result<Complex64> {
        if ell == 0 {
            return Err(Error::Domain("trace power requires ell >= 1".into()));
        }
        Ok(trace_power(&self.entries, ell))
    }

    /// Squared Frobenius norm of the retained block.
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let a = &self.entries;
        let mut worst: f64 = 0.0;
        for i in 0..a.nrows() {
            for j in 0..=i {
                worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

/// `tr(M^ell)` by repeated multiplication.
pub fn trace_power(m: &DMatrix<Complex64>, ell: usize) -> Complex64 {
    assert!(ell >= 1);
    if ell == 1 {
        return m.trace();
    }
    let mut p = m.clone();
    for _ in 2..ell {
        p = &p * m;
    }
    // tr(P M) without forming the last product.
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            acc += p[(i, j)] * m[(j, i)];
        }
    }
    acc
}

/// `R0^{1/2} q R0^{1/2}`: entries `c_{m-n} / (sqrt(xi_m^2 + k^2) sqrt(xi_n^2 + k^2))`.
pub fn build_sandwich(q: &FourierField, kappa: f64) -> Result<SandwichMatrix> {
    check_kappa(kappa)?;
    let g = q.grid();
    let h: Vec<Complex64> = half_resolvent(g, kappa).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let mut entries = multiplication_matrix(q);
    scale_rows_cols(&mut entries, &h, &h);
    Ok(SandwichMatrix { kappa, flavor: Flavor::Kdv, grid: g.clone(), entries })
}

/// `(k - d)^{-1/2} q (k + d)^{-1/2}`.
pub fn build_akns_half_block(q: &FourierField, kappa: f64) -> Result<SandwichMatrix> {
    check_kappa(kappa)?;
    let g = q.grid();
    let minus = first_order_half(g, kappa, -1.0);
    let plus = first_order_half(g, kappa, 1.0);
    let mut entries = multiplication_matrix(q);
    scale_rows_cols(&mut entries, &minus, &plus);
    Ok(SandwichMatrix { kappa, flavor: Flavor::AknsHalf, grid: g.clone(), entries })
}

/// `(k - d)^{-1/2} q (k + d)^{-1} conj(q) (k - d)^{-1/2}`, assembled as the product of the half
/// block with its partner `(k + d)^{-1/2} conj(q) (k - d)^{-1/2}`.
pub fn build_akns_block(q: &FourierField, kappa: f64) -> Result<SandwichMatrix> {
    let half = build_akns_half_block(q, kappa)?;
    let partner = build_akns_partner(q, kappa)?;
    Ok(SandwichMatrix {
        kappa,
        flavor: Flavor::Akns,
        grid: q.grid().clone(),
        entries: half.entries() * partner.entries(),
    })
}

/// `(k + d)^{-1/2} conj(q) (k - d)^{-1/2}`.
pub fn build_akns_partner(q: &FourierField, kappa: f64) -> Result<SandwichMatrix> {
    check_kappa(kappa)?;
    let g = q.grid();
    let minus = first_order_half(g, kappa, -1.0);
    let plus = first_order_half(g, kappa, 1.0);
    let mut entries = multiplication_matrix(&q.conj());
    scale_rows_cols(&mut entries, &plus, &minus);
    Ok(SandwichMatrix { kappa, flavor: Flavor::AknsHalf, grid: g.clone(), entries })
}

/// `H^{-1/2} dq H^{-1/2}` with `H = -d^2 + q_ref + kappa^2`, using the Hermitian spectral
/// calculus of `H` on the retained modes.
pub fn perturbed_sandwich(q_ref: &FourierField, delta_q: &FourierField, kappa: f64) -> Result<SandwichMatrix> {
    check_kappa(kappa)?;
    if q_ref.grid() != delta_q.grid() {
        return Err(Error::Config("grid mismatch between reference and perturbation".into()));
    }
    if !(q_ref.is_real() && delta_q.is_real()) {
        return Err(Error::Domain("perturbed sandwich requires real potentials".into()));
    }
    let g = q_ref.grid();
    let mut h = multiplication_matrix(q_ref);
    for (i, xi) in g.frequencies().iter().enumerate() {
        h[(i, i)] += Complex64::new(xi * xi + kappa * kappa, 0.0);
    }
    let eig = h.symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 1e-12) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    let v = &eig.eigenvectors;
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.powf(-0.5), 0.0)));
    let root = v * inv_sqrt * v.adjoint();
    let entries = &root * multiplication_matrix(delta_q) * &root;
    Ok(SandwichMatrix { kappa, flavor: Flavor::Perturbed, grid: g.clone(), entries })
}

/// Lattice weights for the parts of the infinite operators that lie outside the retained block.
///
/// For the KdV sandwich, `||A||_HS^2 = sum_k |c_k|^2 S_k` with
/// `S_k = sum_{n in Z} w(n) w(n+k)`, `w(n) = 1 / (xi_n^2 + kappa^2)`. The retained block carries
/// the pairs with `|n|, |n+k| <= N_max`; [`Complement::kdv_hs`] holds the remaining part of
/// `S_k`, summed numerically over the lattice.
#[derive(Clone, Debug)]
pub struct Complement {
    kappa: f64,
    grid: TorusGrid,
    /// Indexed by `k + N_max`.
    kdv_hs: Vec<f64>,
}

impl Complement {
    pub fn new(grid: &TorusGrid, kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        let n = grid.n_max() as i64;
        let l = grid.period();
        let k2 = kappa * kappa;
        let w = |m: i64| {
            let xi = 2.0 * std::f64::consts::PI * m as f64 / l;
            1.0 / (xi * xi + k2)
        };
        let rule = TailRule::default();
        let mut kdv_hs = vec![0.0; grid.modes()];
        for k in 0..=n {
            // Pairs (m, m+k) with m+k > N (m > N-k) or m < -N.
            let upper = lattice::tail_sum_real(|m| w(m) * w(m + k), n - k, rule);
            let lower = lattice::tail_sum_real(|m| w(-m) * w(-m + k), n, rule);
            let v = upper + lower;
            kdv_hs[(n + k) as usize] = v;
            kdv_hs[(n - k) as usize] = v;
        }
        Ok(Self { kappa, grid: grid.clone(), kdv_hs })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Out-of-band part of `S_k`.
    pub fn kdv_hs(&self, k: i64) -> f64 {
        self.kdv_hs[self.grid.index(k)]
    }
}

/// `||R0^{1/2} q R0^{1/2}||_HS^2` of the infinite-dimensional operator: the retained block plus the
/// lattice complement.
pub fn operator_hs_sq(a: &SandwichMatrix, q: &FourierField, complement: &Complement) -> Result<f64> {
    if a.flavor() != Flavor::Kdv {
        return Err(Error::Config("operator HS norm is defined for the KdV sandwich".into()));
    }
    if a.grid() != q.grid() || complement.grid != *q.grid() || complement.kappa != a.kappa() {
        return Err(Error::Config("sandwich, field and complement disagree".into()));
    }
    let n = q.grid().n_max() as i64;
    let tail: f64 = (-n..=n).map(|k| q.coeff(k).norm_sqr() * complement.kdv_hs(k)).sum();
    Ok(a.frobenius_sq() + tail)
}

/// Trace of the infinite KdV sandwich: `c_0 sum_{n in Z} 1 / (xi_n^2 + kappa^2)`, with the retained
/// diagonal taken from the matrix and the out-of-band modes summed over the lattice.
pub fn operator_trace(a: &SandwichMatrix, q: &FourierField) -> Result<Complex64> {
    if a.flavor() != Flavor::Kdv {
        return Err(Error::Config("operator trace is defined for the KdV sandwich".into()));
    }
    let g = q.grid();
    let (l, k2) = (g.period(), a.kappa() * a.kappa());
    let w = |m: i64| {
        let xi = 2.0 * std::f64::consts::PI * m as f64 / l;
        Complex64::new(1.0 / (xi * xi + k2), 0.0)
    };
    let outer = lattice::outer_sum(w, g.n_max() as i64, TailRule::default());
    Ok(a.trace() + q.coeff(0) * outer)
}

/// `sum_{n in Z} 1 / ((kappa - i xi_{n+k})(kappa + i xi_n)) = L coth(kappa L / 2) / (2 kappa - i xi_k)`.
fn akns_mode_weight(kappa: f64, period: f64, xi_k: f64) -> Complex64 {
    let c = 2.0 * kappa * resolvent_diagonal_sum(kappa, period);
    Complex64::new(c, 0.0) / Complex64::new(2.0 * kappa, -xi_k)
}

/// `tr{(k - d)^{-1} q (k + d)^{-1} conj(q)}` of the infinite operator.
///
/// The trace equals `sum_k |c_k|^2 sum_n 1 / ((k - i xi_{n+k})(k + i xi_n))`, and the inner lattice
/// sum is evaluated exactly by partial fractions. The real part is
/// `L coth(kL/2) sum_k 2 kappa |c_k|^2 / (4 kappa^2 + xi_k^2)`; the imaginary part vanishes when
/// `|c_k| = |c_{-k}|`, e.g. for real `q`.
pub fn akns_trace_complex(q: &FourierField, kappa: f64) -> Result<Complex64> {
    check_kappa(kappa)?;
    let g = q.grid();
    let n = g.n_max() as i64;
    Ok((-n..=n)
        .map(|k| akns_mode_weight(kappa, g.period(), g.wavenumber(k)) * q.coeff(k).norm_sqr())
        .sum())
}

/// `Re tr{(k - d)^{-1} q (k + d)^{-1} conj(q)}`.
pub fn akns_trace(q: &FourierField, kappa: f64) -> Result<f64> {
    Ok(akns_trace_complex(q, kappa)?.re)
}

/// The same trace from the retained matrices `D_- Q D_+ Q^*` plus a numerically summed lattice
/// complement. Valid while `kappa` is comparable to the retained frequencies.
pub fn akns_trace_via_matrix(q: &FourierField, kappa: f64) -> Result<(Complex64, Complex64)> {
    let block = build_akns_block(q, kappa)?;
    let retained = block.trace();
    let g = q.grid();
    let n = g.n_max() as i64;
    let l = g.period();
    let term = |a: i64, b: i64| {
        let xa = 2.0 * std::f64::consts::PI * a as f64 / l;
        let xb = 2.0 * std::f64::consts::PI * b as f64 / l;
        (Complex64::new(kappa, -xa) * Complex64::new(kappa, xb)).inv()
    };
    let rule = TailRule::default();
    let mut outside = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let ck = q.coeff(k).norm_sqr();
        if ck == 0.0 {
            continue;
        }
        // Pairs (m+k, m) with m or m+k outside the band.
        let (hi, lo) = if k >= 0 { (n - k, n) } else { (n, n + k) };
        let upper = lattice::tail_sum(|m| term(m + k, m), hi, rule);
        let lower = lattice::tail_sum(|m| term(-m + k, -m), lo, rule);
        outside += (upper + lower) * ck;
    }
    Ok((retained, outside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::kernel::hs_closed_form;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos2(g: &TorusGrid) -> FourierField {
        FourierField::from_modes(g, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))], true).unwrap()
    }

    #[test]
    fn zero_field_gives_zero_matrices() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let z = FourierField::zeros(&g);
        assert_eq!(build_sandwich(&z, 1.0).unwrap().frobenius_sq(), 0.0);
        assert_eq!(build_akns_block(&z, 1.0).unwrap().frobenius_sq(), 0.0);
        assert_eq!(akns_trace(&z, 2.0).unwrap(), 0.0);
        let zs = build_sandwich(&z, 1.0).unwrap();
        for ell in 1..5 {
            assert_eq!(zs.trace_power(ell).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn nonpositive_kappa_is_domain_error() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let q = cos2(&g);
        assert!(matches!(build_sandwich(&q, 0.0), Err(Error::Domain(_))));
        assert!(matches!(build_akns_block(&q, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn cosine_sandwich_entries() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let a = build_sandwich(&cos2(&g), 1.0).unwrap();
        for m in -8i64..=8 {
            for n in -8i64..=8 {
                let xm = 2.0 * PI * m as f64;
                let xn = 2.0 * PI * n as f64;
                let want = if (m - n).abs() == 1 {
                    1.0 / ((xm * xm + 1.0).sqrt() * (xn * xn + 1.0).sqrt())
                } else {
                    0.0
                };
                assert!((a.entry(m, n) - c(want, 0.0)).norm() < 1e-16);
            }
        }
        assert!(a.hermitian_defect() == 0.0);
    }

    #[test]
    fn trace_power_of_constant_potential() {
        // q = 1, kappa = 1: tr A = sum_xi 1/(xi^2+1) = coth(1/2)/2
        let g = TorusGrid::new(1.0, 32).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(1.0, 0.0))], true).unwrap();
        let a = build_sandwich(&q, 1.0).unwrap();
        let full = operator_trace(&a, &q).unwrap();
        let want = 0.5 / (0.5f64).tanh();
        assert!((full.re - want).abs() < 1e-13 && (want - 1.08198).abs() < 1e-5);
        // the retained part alone misses the O(1/N) tail
        let retained: f64 = (-32..=32).map(|n| 1.0 / ((2.0 * PI * n as f64).powi(2) + 1.0)).sum();
        assert!((a.trace().re - retained).abs() < 1e-14);
        // l = 2: Frobenius norm of a Hermitian matrix
        assert!((a.trace_power(2).unwrap().re - a.frobenius_sq()).abs() < 1e-14);
    }

    #[test]
    fn hs_closed_form_examples() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let hs = hs_closed_form(&cos2(&g), 1.0).unwrap();
        let e1 = (-1f64).exp();
        let want = (1.0 - (-2f64).exp()) / (1.0 - e1).powi(2) * 2.0 / (4.0 * PI * PI + 4.0);
        assert_eq!(hs.mean_term, 0.0);
        assert!((hs.total() - want).abs() < 1e-15 && (want - 0.09954).abs() < 1e-5);

        let one = FourierField::from_modes(&g, &[(0, c(1.0, 0.0))], true).unwrap();
        let hs = hs_closed_form(&one, 1.0).unwrap();
        let mean = 2.0 * e1 / ((1.0 - e1).powi(2) * 4.0);
        assert!((hs.mean_term - mean).abs() < 1e-15 && (mean - 0.46034).abs() < 1e-5);
        // total against the lattice sum of 1/(xi^2+1)^2
        let direct = crate::lattice::lattice_sum(
            |n| c(1.0 / ((2.0 * PI * n as f64).powi(2) + 1.0).powi(2), 0.0),
            16,
            TailRule::default(),
        );
        assert!((hs.total() - direct.re).abs() < 1e-13);
    }

    #[test]
    fn operator_hs_matches_closed_form_on_cosine() {
        for &k in &[1.0, 8.0] {
            let g = TorusGrid::new(1.0, 32).unwrap();
            let q = cos2(&g);
            let a = build_sandwich(&q, k).unwrap();
            let comp = Complement::new(&g, k).unwrap();
            let full = operator_hs_sq(&a, &q, &comp).unwrap();
            let want = hs_closed_form(&q, k).unwrap().total();
            assert!((full - want).abs() < 1e-12 * want, "{k}: {full} {want}");
        }
    }

    #[test]
    fn akns_trace_of_constant() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = FourierField::from_modes(&g, &[(0, c(0.1, 0.0))], true).unwrap();
        let v = akns_trace(&q, 2.0).unwrap();
        let want = 0.01 / (2.0 * 2.0 * (1f64).tanh());
        assert!((v - want).abs() < 1e-17 && (v - 3.2826e-3).abs() < 1e-7);
        let (retained, outside) = akns_trace_via_matrix(&q, 2.0).unwrap();
        assert!(((retained + outside).re - want).abs() < 1e-15);
    }

    #[test]
    fn akns_matrix_trace_matches_mode_sum() {
        let g = TorusGrid::new(1.0, 12).unwrap();
        let q = FourierField::from_modes(
            &g,
            &[(0, c(0.2, 0.1)), (1, c(0.3, -0.2)), (-2, c(0.1, 0.25)), (3, c(-0.15, 0.05))],
            false,
        )
        .unwrap();
        let k = 1.5;
        let (retained, outside) = akns_trace_via_matrix(&q, k).unwrap();
        let n = 12i64;
        let mut brute = c(0.0, 0.0);
        for m in -n..=n {
            for p in -n..=n {
                let cc = q.coeff(m - p).norm_sqr();
                let xm = 2.0 * PI * m as f64;
                let xp = 2.0 * PI * p as f64;
                brute += cc / (c(k, -xm) * c(k, xp));
            }
        }
        assert!((retained - brute).norm() < 1e-13);
        let exact = akns_trace_complex(&q, k).unwrap();
        assert!((retained + outside - exact).norm() < 1e-13, "{} {}", retained + outside, exact);
    }

    #[test]
    fn reflection_intertwines_half_blocks() {
        // U f(x) = f(-x) maps e_n to e_{-n}. Conjugating the half block by U gives the partner
        // built from conj(q(-x)).
        let g = TorusGrid::new(1.0, 10).unwrap();
        let q = FourierField::from_modes(&g, &[(1, c(0.3, 0.4)), (-2, c(-0.2, 0.1)), (0, c(0.5, -0.3))], false).unwrap();
        let half = build_akns_half_block(&q, 2.0).unwrap();
        let twisted = q.conj().reflect();
        let partner = build_akns_partner(&twisted, 2.0).unwrap();
        for m in -10i64..=10 {
            for n in -10i64..=10 {
                assert!((half.entry(-m, -n) - partner.entry(m, n)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn perturbed_sandwich_reduces_to_free_case() {
        let g = TorusGrid::new(1.0, 10).unwrap();
        let dq = cos2(&g).scale(0.3);
        let z = FourierField::zeros(&g);
        let p = perturbed_sandwich(&z, &dq, 3.0).unwrap();
        let a = build_sandwich(&dq, 3.0).unwrap();
        assert!((p.entries() - a.entries()).iter().all(|v| v.norm() < 1e-14));
        let zero = perturbed_sandwich(&dq, &z, 3.0).unwrap();
        assert_eq!(zero.frobenius_sq(), 0.0);
    }

    #[test]
    fn perturbed_sandwich_rejects_indefinite_operator() {
        let g = TorusGrid::new(1.0, 6).unwrap();
        let deep = FourierField::from_modes(&g, &[(0, c(-10.0, 0.0))], true).unwrap();
        let z = FourierField::zeros(&g);
        assert!(matches!(perturbed_sandwich(&deep, &z, 1.0), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn negative_perturbation_gives_negative_spectrum() {
        let g = TorusGrid::new(1.0, 12).unwrap();
        let qref = cos2(&g).scale(0.7);
        // dq = -(1 + cos(2 pi x))^2 / 4 <= 0
        let dq = FourierField::from_fn(&g, |x| -0.25 * (1.0 + (2.0 * PI * x).cos()).powi(2)).unwrap();
        let p = perturbed_sandwich(&qref, &dq, 2.0).unwrap();
        let eig = p.entries().clone().symmetric_eigen();
        assert!(eig.eigenvalues.iter().all(|&l| l <= 1e-14));
    }
}

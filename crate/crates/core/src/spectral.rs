//! Fourier representation of periodic functions.
//!
//! A field on the torus `[0, L)` is stored as the coefficients `c_n`, `|n| <= N_max`, of
//!
//! ```text
//! q(x) = sum_n c_n exp(i xi_n x),   xi_n = 2 pi n / L,   c_n = (1/L) int_0^L exp(-i xi_n x) q(x) dx
//! ```
//!
//! At `L = 1` these are exactly the circle coefficients `q^(xi)`, `xi in 2 pi Z`. For general `L`
//! Plancherel reads `int |q|^2 = L sum |c_n|^2`, and every quadratic functional in this crate
//! carries that factor of `L` explicitly.
//!
//! Nonlinear products are formed on `M >= 4 N_max + 1` physical samples, which keeps quadratic
//! and cubic products of retained modes free of aliasing before truncation back to `|n| <= N_max`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Uniform periodic grid together with its retained Fourier band.
#[derive(Clone)]
pub struct TorusGrid {
    period: f64,
    n_max: usize,
    samples: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid")
            .field("period", &self.period)
            .field("n_max", &self.n_max)
            .field("samples", &self.samples)
            .finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.period == other.period && self.n_max == other.n_max && self.samples == other.samples
    }
}

impl TorusGrid {
    /// Grid with the smallest power-of-two sample count satisfying `M >= 4 N_max + 1`.
    pub fn new(period: f64, n_max: usize) -> Result<Self> {
        let samples = (4 * n_max + 1).next_power_of_two();
        Self::with_samples(period, n_max, samples)
    }

    pub fn with_samples(period: f64, n_max: usize, samples: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Config(format!("period must be positive, got {period}")));
        }
        if n_max < 1 {
            return Err(Error::Config("mode cutoff must be at least 1".into()));
        }
        if samples < 4 * n_max + 1 {
            return Err(Error::Config(format!(
                "sample count {samples} < 4*N_max+1 = {} (cubic products would alias)",
                4 * n_max + 1
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            period,
            n_max,
            samples,
            forward: planner.plan_fft_forward(samples),
            inverse: planner.plan_fft_inverse(samples),
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Number of retained modes, `2 N_max + 1`.
    pub fn modes(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Storage index of mode `n`.
    #[inline]
    pub fn index(&self, n: i64) -> usize {
        (n + self.n_max as i64) as usize
    }

    /// Mode number stored at index `i`.
    #[inline]
    pub fn mode(&self, i: usize) -> i64 {
        i as i64 - self.n_max as i64
    }

    #[inline]
    pub fn wavenumber(&self, n: i64) -> f64 {
        2.0 * PI * n as f64 / self.period
    }

    /// Frequencies of the retained modes in storage order.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.modes()).map(|i| self.wavenumber(self.mode(i))).collect()
    }

    pub fn xi_max(&self) -> f64 {
        self.wavenumber(self.n_max as i64)
    }

    /// Physical sample points `x_j = j L / M`.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.period / self.samples as f64;
        (0..self.samples).map(|j| j as f64 * h).collect()
    }

    fn check_same(&self, other: &TorusGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Config(format!("grid mismatch: {self:?} vs {other:?}")))
        }
    }

    fn to_physical(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let m = self.samples;
        let mut buf = vec![ZERO; m];
        for (i, c) in coeffs.iter().enumerate() {
            let n = self.mode(i);
            buf[n.rem_euclid(m as i64) as usize] = *c;
        }
        self.inverse.process(&mut buf);
        buf
    }

    fn to_spectral(&self, mut buf: Vec<Complex64>) -> Vec<Complex64> {
        let m = self.samples;
        self.forward.process(&mut buf);
        let scale = 1.0 / m as f64;
        (0..self.modes())
            .map(|i| buf[self.mode(i).rem_euclid(m as i64) as usize] * scale)
            .collect()
    }
}

/// Truncated Fourier series of a function on a [`TorusGrid`].
#[derive(Clone, Debug)]
pub struct FourierField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
    real_valued: bool,
}

impl PartialEq for FourierField {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.coeffs == other.coeffs
    }
}

impl FourierField {
    pub fn zeros(grid: &TorusGrid) -> Self {
        Self { grid: grid.clone(), coeffs: vec![ZERO; grid.modes()], real_valued: true }
    }

    /// Builds a field from coefficients in storage order (`index(n) = n + N_max`).
    ///
    /// With `real_valued` set, the coefficients must already be Hermitian symmetric up to
    /// round-off; they are then projected onto exact symmetry.
    pub fn from_coeffs(grid: &TorusGrid, coeffs: Vec<Complex64>, real_valued: bool) -> Result<Self> {
        if coeffs.len() != grid.modes() {
            return Err(Error::Config(format!(
                "expected {} coefficients, got {}",
                grid.modes(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("non-finite Fourier coefficient".into()));
        }
        let mut field = Self { grid: grid.clone(), coeffs, real_valued };
        if real_valued {
            let asym = field.hermitian_defect();
            let scale = field.coeff_norm().max(1.0);
            if asym > 1e-10 * scale {
                return Err(Error::Domain(format!(
                    "coefficients flagged real are not Hermitian symmetric (defect {asym:e})"
                )));
            }
            field.symmetrize();
        }
        Ok(field)
    }

    /// Field from a sparse list of `(mode, coefficient)` pairs; modes outside the band are an error.
    pub fn from_modes(grid: &TorusGrid, modes: &[(i64, Complex64)], real_valued: bool) -> Result<Self> {
        let mut coeffs = vec![ZERO; grid.modes()];
        for &(n, c) in modes {
            if n.unsigned_abs() as usize > grid.n_max() {
                return Err(Error::Config(format!("mode {n} outside |n| <= {}", grid.n_max())));
            }
            coeffs[grid.index(n)] += c;
        }
        Self::from_coeffs(grid, coeffs, real_valued)
    }

    /// Coefficients of the trigonometric interpolant of `samples` (taken at [`TorusGrid::nodes`]),
    /// truncated to the retained band.
    pub fn analyze(grid: &TorusGrid, samples: &[Complex64]) -> Result<Self> {
        if samples.len() != grid.samples() {
            return Err(Error::Config(format!(
                "expected {} samples, got {}",
                grid.samples(),
                samples.len()
            )));
        }
        let coeffs = grid.to_spectral(samples.to_vec());
        Self::from_coeffs(grid, coeffs, false)
    }

    pub fn analyze_real(grid: &TorusGrid, samples: &[f64]) -> Result<Self> {
        if samples.len() != grid.samples() {
            return Err(Error::Config(format!(
                "expected {} samples, got {}",
                grid.samples(),
                samples.len()
            )));
        }
        let buf = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut field = Self { grid: grid.clone(), coeffs: grid.to_spectral(buf), real_valued: true };
        if field.coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("non-finite sample".into()));
        }
        field.symmetrize();
        Ok(field)
    }

    /// Samples a real function at the grid nodes and analyzes it.
    pub fn from_fn(grid: &TorusGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples: Vec<f64> = grid.nodes().into_iter().map(f).collect();
        Self::analyze_real(grid, &samples)
    }

    pub fn from_fn_complex(grid: &TorusGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples: Vec<Complex64> = grid.nodes().into_iter().map(f).collect();
        Self::analyze(grid, &samples)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_real(&self) -> bool {
        self.real_valued
    }

    /// Coefficient of mode `n`; zero outside the retained band.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.grid.n_max {
            ZERO
        } else {
            self.coeffs[self.grid.index(n)]
        }
    }

    /// Drops the reality flag, e.g. before feeding a real field to a complex flow.
    pub fn into_complex(mut self) -> Self {
        self.real_valued = false;
        self
    }

    /// Re-flags a field as real after checking Hermitian symmetry.
    pub fn into_real(self) -> Result<Self> {
        Self::from_coeffs(&self.grid, self.coeffs, true)
    }

    /// Largest `|c_n - conj(c_{-n})|` over the band.
    pub fn hermitian_defect(&self) -> f64 {
        let n_max = self.grid.n_max as i64;
        (-n_max..=n_max)
            .map(|n| (self.coeff(n) - self.coeff(-n).conj()).norm())
            .fold(0.0, f64::max)
    }

    fn symmetrize(&mut self) {
        let n_max = self.grid.n_max as i64;
        for n in 0..=n_max {
            let i = self.grid.index(n);
            let j = self.grid.index(-n);
            let avg = 0.5 * (self.coeffs[i] + self.coeffs[j].conj());
            self.coeffs[i] = avg;
            self.coeffs[j] = avg.conj();
        }
    }

    /// `sqrt(sum |c_n|^2)`, the coefficient l^2 norm (no factor of `L`).
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Evaluates `sum_n c_n exp(i xi_n x)` at arbitrary points.
    pub fn synthesize(&self, points: &[f64]) -> Vec<Complex64> {
        let freqs = self.grid.frequencies();
        points
            .iter()
            .map(|&x| {
                let v: Complex64 = self
                    .coeffs
                    .iter()
                    .zip(&freqs)
                    .map(|(c, &xi)| c * Complex64::from_polar(1.0, xi * x))
                    .sum();
                if self.real_valued {
                    Complex64::new(v.re, 0.0)
                } else {
                    v
                }
            })
            .collect()
    }

    /// Values at the `M` grid nodes.
    pub fn to_samples(&self) -> Vec<Complex64> {
        let mut v = self.grid.to_physical(&self.coeffs);
        if self.real_valued {
            v.iter_mut().for_each(|z| z.im = 0.0);
        }
        v
    }

    /// Maximum of `|q|` over the grid nodes.
    pub fn sup_norm(&self) -> f64 {
        self.to_samples().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Applies the multiplier `(i xi)^order`.
    pub fn derivative(&self, order: u32) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let xi = self.grid.wavenumber(self.grid.mode(i));
            *c *= Complex64::new(0.0, xi).powu(order);
        }
        if out.real_valued {
            out.symmetrize();
        }
        out
    }

    /// Applies a Fourier multiplier `m(xi)`; reality is kept only when `keeps_real` is set.
    pub fn apply_multiplier(&self, m: impl Fn(f64) -> Complex64, keeps_real: bool) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= m(self.grid.wavenumber(self.grid.mode(i)));
        }
        out.real_valued = self.real_valued && keeps_real;
        if out.real_valued {
            out.symmetrize();
        }
        out
    }

    /// Pointwise product, truncated to the retained band.
    pub fn multiply(&self, other: &FourierField) -> Result<Self> {
        Self::product(&[self, other])
    }

    /// Pointwise product of several fields formed in one pass on the physical grid.
    ///
    /// The result is the exact truncation of the product whenever its total bandwidth is at most
    /// `M - N_max - 1`; with `M >= 4 N_max + 1` this covers every product of up to three fields.
    pub fn product(factors: &[&FourierField]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Config("empty product".into()))?;
        let grid = &first.grid;
        for f in rest {
            grid.check_same(&f.grid)?;
        }
        let mut acc = grid.to_physical(&first.coeffs);
        for f in rest {
            let vals = grid.to_physical(&f.coeffs);
            acc.iter_mut().zip(vals).for_each(|(a, b)| *a *= b);
        }
        let real = factors.iter().all(|f| f.real_valued);
        let mut out = Self { grid: grid.clone(), coeffs: grid.to_spectral(acc), real_valued: real };
        if real {
            out.symmetrize();
        }
        Ok(out)
    }

    /// Complex conjugate: `c_n -> conj(c_{-n})`.
    pub fn conj(&self) -> Self {
        let n_max = self.grid.n_max as i64;
        let coeffs = (-n_max..=n_max).map(|n| self.coeff(-n).conj()).collect();
        Self { grid: self.grid.clone(), coeffs, real_valued: self.real_valued }
    }

    /// Reflection `q(x) -> q(-x)`: `c_n -> c_{-n}`.
    pub fn reflect(&self) -> Self {
        let n_max = self.grid.n_max as i64;
        let coeffs = (-n_max..=n_max).map(|n| self.coeff(-n)).collect();
        Self { grid: self.grid.clone(), coeffs, real_valued: self.real_valued }
    }

    /// Translation `q(x) -> q(x - a)`.
    pub fn translate(&self, a: f64) -> Self {
        self.apply_multiplier(|xi| Complex64::from_polar(1.0, -xi * a), true)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }

    /// Multiplication by a complex constant; the result is flagged complex.
    pub fn scale_complex(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out.real_valued = self.real_valued && s.im == 0.0;
        out
    }

    pub fn add(&self, other: &FourierField) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self {
            grid: self.grid.clone(),
            coeffs,
            real_valued: self.real_valued && other.real_valued,
        })
    }

    pub fn sub(&self, other: &FourierField) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Keeps only modes with `|n| <= cutoff`.
    pub fn band_limit(&self, cutoff: usize) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if self.grid.mode(i).unsigned_abs() as usize > cutoff {
                *c = ZERO;
            }
        }
        out
    }

    /// Largest `|n|` carrying a coefficient above `eps`.
    pub fn bandwidth(&self, eps: f64) -> usize {
        (0..self.grid.modes())
            .filter(|&i| self.coeffs[i].norm() > eps)
            .map(|i| self.grid.mode(i).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `sum_n w(xi_n) |c_n|^2` without the factor `L`.
    pub fn weighted_sum(&self, w: impl Fn(f64) -> f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| w(self.grid.wavenumber(self.grid.mode(i))) * c.norm_sqr())
            .sum()
    }

    /// `||q||_{H^s}^2 = L sum (1 + xi^2)^s |c_n|^2`, returned as the square root.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        (self.grid.period * self.weighted_sum(|xi| (1.0 + xi * xi).powf(s))).sqrt()
    }

    /// `||q||_{L^2}` including the factor `L`.
    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> TorusGrid {
        TorusGrid::new(1.0, 16).unwrap()
    }

    fn random_field(grid: &TorusGrid, cutoff: usize, seeds: &[f64], real: bool) -> FourierField {
        let n_max = grid.n_max() as i64;
        let mut coeffs = vec![ZERO; grid.modes()];
        for n in -(cutoff as i64)..=(cutoff as i64) {
            let k = (n + n_max) as usize;
            let a = seeds[(2 * k) % seeds.len()];
            let b = seeds[(2 * k + 1) % seeds.len()];
            coeffs[grid.index(n)] = c(a, b);
        }
        if real {
            for n in 0..=n_max {
                let v = coeffs[grid.index(n)];
                let v = if n == 0 { c(v.re, 0.0) } else { v };
                coeffs[grid.index(n)] = v;
                coeffs[grid.index(-n)] = v.conj();
            }
        }
        FourierField::from_coeffs(grid, coeffs, real).unwrap()
    }

    #[test]
    fn grid_rejects_aliasing_sample_counts() {
        assert!(TorusGrid::with_samples(1.0, 16, 64).is_err());
        assert!(TorusGrid::with_samples(1.0, 16, 65).is_ok());
        assert!(TorusGrid::new(0.0, 4).is_err());
        assert!(TorusGrid::new(1.0, 0).is_err());
        assert_eq!(TorusGrid::new(1.0, 64).unwrap().samples(), 512);
    }

    #[test]
    fn analyze_constant() {
        let g = grid();
        let f = FourierField::analyze(&g, &vec![c(3.0, 0.0); g.samples()]).unwrap();
        assert!((f.coeff(0) - c(3.0, 0.0)).norm() < 1e-14);
        for n in 1..=16 {
            assert!(f.coeff(n).norm() < 1e-14 && f.coeff(-n).norm() < 1e-14);
        }
    }

    #[test]
    fn analyze_single_mode() {
        let g = grid();
        let f = FourierField::from_fn_complex(&g, |x| Complex64::from_polar(1.0, 2.0 * PI * x)).unwrap();
        assert!((f.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
        let rest: f64 = (-16..=16).filter(|&n| n != 1).map(|n| f.coeff(n).norm()).sum();
        assert!(rest < 1e-13);
    }

    #[test]
    fn analyze_length_mismatch_is_config_error() {
        let g = grid();
        assert!(matches!(FourierField::analyze(&g, &[ZERO; 3]), Err(Error::Config(_))));
    }

    #[test]
    fn plancherel_against_trapezoid_quadrature() {
        // Trapezoid rule on a finer grid is exact for trigonometric polynomials of this degree.
        let g = grid();
        let f = random_field(&g, 16, &[0.3, -1.1, 0.7, 0.2, -0.5, 1.3, 0.9], false);
        let fine = 257;
        let xs: Vec<f64> = (0..fine).map(|j| j as f64 / fine as f64).collect();
        let quad: f64 = f.synthesize(&xs).iter().map(|v| v.norm_sqr()).sum::<f64>() / fine as f64;
        let coeff_sum: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
        assert!((quad - coeff_sum).abs() / coeff_sum < 1e-12);
    }

    #[test]
    fn synthesize_examples() {
        let g = grid();
        let f = FourierField::from_modes(&g, &[(0, c(3.0, 0.0))], true).unwrap();
        assert!(f.synthesize(&[0.1, 0.77]).iter().all(|v| (v - c(3.0, 0.0)).norm() < 1e-14));
        let f = FourierField::from_modes(&g, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))], true).unwrap();
        for x in [0.0, 0.13, 0.5, 0.91] {
            let v = f.synthesize(&[x])[0];
            assert!((v.re - 2.0 * (2.0 * PI * x).cos()).abs() < 1e-13 && v.im == 0.0);
        }
    }

    #[test]
    fn derivative_examples() {
        let g = grid();
        let konst = FourierField::from_modes(&g, &[(0, c(3.0, 0.0))], true).unwrap();
        assert!(konst.derivative(1).coeff_norm() == 0.0);
        let e = FourierField::from_modes(&g, &[(1, c(1.0, 0.0))], false).unwrap();
        assert!((e.derivative(1).coeff(1) - c(0.0, 2.0 * PI)).norm() < 1e-14);
        // 2cos(2 pi x)''' = 2 (2 pi)^3 sin(2 pi x)
        let cos2 = FourierField::from_modes(&g, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))], true).unwrap();
        let d3 = cos2.derivative(3);
        for x in [0.05, 0.3, 0.62] {
            let want = 2.0 * (2.0 * PI).powi(3) * (2.0 * PI * x).sin();
            assert!((d3.synthesize(&[x])[0].re - want).abs() < 1e-10 * want.abs().max(1.0));
        }
        assert!(d3.is_real());
    }

    #[test]
    fn product_to_sum() {
        let g = grid();
        let cos = FourierField::from_modes(&g, &[(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))], true).unwrap();
        let sq = cos.multiply(&cos).unwrap();
        assert!((sq.coeff(0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sq.coeff(2) - c(0.25, 0.0)).norm() < 1e-15);
        assert!((sq.coeff(-2) - c(0.25, 0.0)).norm() < 1e-15);
        let zero = FourierField::zeros(&g);
        assert_eq!(cos.multiply(&zero).unwrap().coeff_norm(), 0.0);
    }

    #[test]
    fn product_truncates_beyond_band() {
        let g = grid();
        let hi = FourierField::from_modes(&g, &[(12, c(1.0, 0.0))], false).unwrap();
        let p = hi.multiply(&hi).unwrap();
        // mode 24 lies outside |n| <= 16 and must not alias back.
        assert!(p.coeff_norm() < 1e-14);
    }

    #[test]
    fn cubic_product_is_exact() {
        let g = grid();
        let f = random_field(&g, 16, &[0.4, -0.2, 1.0, 0.3, -0.8], false);
        let p = FourierField::product(&[&f, &f.conj(), &f]).unwrap();
        // Brute-force convolution over the full band.
        let mut max_err: f64 = 0.0;
        for n in -16i64..=16 {
            let mut want = ZERO;
            for a in -16i64..=16 {
                for b in -16i64..=16 {
                    let cc = n - a - b;
                    if cc.abs() <= 16 {
                        want += f.coeff(a) * f.coeff(-b).conj() * f.coeff(cc);
                    }
                }
            }
            max_err = max_err.max((p.coeff(n) - want).norm());
        }
        assert!(max_err < 1e-11, "{max_err}");
    }

    #[test]
    fn grid_mismatch_is_config_error() {
        let a = FourierField::zeros(&grid());
        let b = FourierField::zeros(&TorusGrid::new(2.0, 16).unwrap());
        assert!(matches!(a.multiply(&b), Err(Error::Config(_))));
    }

    #[test]
    fn sobolev_examples() {
        let g = grid();
        assert_eq!(FourierField::zeros(&g).sobolev_norm(0.3), 0.0);
        let f = FourierField::from_modes(&g, &[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))], true).unwrap();
        assert!((f.sobolev_norm(0.0) - 2f64.sqrt()).abs() < 1e-15);
        let want = (2.0 / (1.0 + 4.0 * PI * PI)).sqrt();
        assert!((f.sobolev_norm(-1.0) - want).abs() < 1e-15);
        assert!((want - 0.22228).abs() < 1e-5);
    }

    #[test]
    fn real_flag_rejects_asymmetric_coefficients() {
        let g = grid();
        assert!(FourierField::from_modes(&g, &[(1, c(1.0, 0.0))], true).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(seeds in proptest::collection::vec(-1.0f64..1.0, 8..40)) {
            let g = grid();
            let f = random_field(&g, 16, &seeds, false);
            let back = FourierField::analyze(&g, &f.to_samples()).unwrap();
            let err: f64 = f.coeffs().iter().zip(back.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-12);
        }

        #[test]
        fn reality_survives_every_operation(seeds in proptest::collection::vec(-1.0f64..1.0, 8..40)) {
            let g = grid();
            let f = random_field(&g, 8, &seeds, true);
            for h in [f.derivative(3), f.multiply(&f).unwrap(), f.conj(), f.translate(0.37), f.reflect()] {
                prop_assert!(h.is_real());
                prop_assert!(h.hermitian_defect() == 0.0);
            }
        }

        #[test]
        fn product_rule(seeds in proptest::collection::vec(-1.0f64..1.0, 8..40)) {
            let g = grid();
            let f = random_field(&g, 8, &seeds, true);
            let lhs = f.multiply(&f).unwrap().derivative(1);
            let rhs = f.multiply(&f.derivative(1)).unwrap().scale(2.0);
            let err: f64 = lhs.coeffs().iter().zip(rhs.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-11);
        }
    }
}

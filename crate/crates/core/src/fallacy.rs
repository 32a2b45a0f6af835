//! Perturbation determinant between unitarily equivalent Schrodinger operators.
//!
//! For the translation flow `q(t, x) = v(x + t)` the operators `-d^2 + q(t)` are unitarily
//! equivalent, yet `log det(1 + H^{-1/2} (q(t) - q(0)) H^{-1/2})`, `H = -d^2 + q(0) + kappa^2`,
//! does not vanish. Step-like `v` is not periodic, so this uses a second-order finite-difference
//! discretization of `[-a, a]` with Dirichlet conditions. Since
//! `det(1 + H^{-1/2} dq H^{-1/2}) = det(H + dq) / det(H)` and both matrices are tridiagonal and
//! positive definite, the log-determinant is a difference of sums of log-pivots.

use crate::error::{Error, Result};

/// Dirichlet grid on `[-half_width, half_width]` with `points` interior nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletGrid {
    pub half_width: f64,
    pub points: usize,
}

impl DirichletGrid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) || points < 2 {
            return Err(Error::Config(format!("bad Dirichlet grid: half width {half_width}, {points} points")));
        }
        Ok(Self { half_width, points })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points + 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..=self.points).map(|j| -self.half_width + j as f64 * h).collect()
    }
}

/// `log det(-D2 + diag(w))` for the Dirichlet second difference `D2`, via the pivots of the
/// LDL^T factorization of the tridiagonal matrix.
pub fn log_det_schrodinger(grid: &DirichletGrid, w: &[f64]) -> Result<f64> {
    let h2 = grid.spacing().powi(2);
    let off = -1.0 / h2;
    let mut acc = 0.0;
    let mut prev: Option<f64> = None;
    for &wj in w {
        let diag = 2.0 / h2 + wj;
        let d = match prev {
            None => diag,
            Some(p) => diag - off * off / p,
        };
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: d });
        }
        acc += d.ln();
        prev = Some(d);
    }
    Ok(acc)
}

/// `log det(1 + H^{-1/2} (v(. + t) - v) H^{-1/2})` with `H = -d^2 + v + kappa^2`.
pub fn translation_log_det(grid: &DirichletGrid, v: impl Fn(f64) -> f64, kappa: f64, t: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let x = grid.nodes();
    let k2 = kappa * kappa;
    let base: Vec<f64> = x.iter().map(|&x| v(x) + k2).collect();
    let moved: Vec<f64> = x.iter().map(|&x| v(x + t) + k2).collect();
    Ok(log_det_schrodinger(grid, &moved)? - log_det_schrodinger(grid, &base)?)
}

/// The step profile `-tanh`.
pub fn tanh_step(x: f64) -> f64 {
    -x.tanh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn dense(grid: &DirichletGrid, w: &[f64]) -> DMatrix<f64> {
        let n = grid.points;
        let h2 = grid.spacing().powi(2);
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 / h2 + w[i]
            } else if i.abs_diff(j) == 1 {
                -1.0 / h2
            } else {
                0.0
            }
        })
    }

    #[test]
    fn pivots_match_dense_sandwich() {
        let grid = DirichletGrid::new(6.0, 60).unwrap();
        let (k, t) = (2.0, 0.7);
        let x = grid.nodes();
        let base: Vec<f64> = x.iter().map(|&x| tanh_step(x) + k * k).collect();
        let h = dense(&grid, &base);
        let eig = h.symmetric_eigen();
        let inv_sqrt = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(-0.5)))
            * eig.eigenvectors.transpose();
        let dq = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            x.len(),
            x.iter().map(|&x| tanh_step(x + t) - tanh_step(x)),
        ));
        let s = &inv_sqrt * dq * &inv_sqrt;
        let want: f64 = s.symmetric_eigen().eigenvalues.iter().map(|l| l.ln_1p()).sum();
        let got = translation_log_det(&grid, tanh_step, k, t).unwrap();
        assert!((got - want).abs() < 1e-10, "{got} {want}");
    }

    #[test]
    fn zero_shift_is_zero() {
        let grid = DirichletGrid::new(10.0, 100).unwrap();
        assert_eq!(translation_log_det(&grid, tanh_step, 3.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn free_dirichlet_determinant() {
        // eigenvalues of -D2 are (4/h^2) sin^2(j pi / (2(n+1)))
        let grid = DirichletGrid::new(1.0, 20).unwrap();
        let h = grid.spacing();
        let want: f64 = (1..=20).map(|j| (4.0 / (h * h) * (j as f64 * std::f64::consts::PI / 42.0).sin().powi(2)).ln()).sum();
        let got = log_det_schrodinger(&grid, &[0.0; 20]).unwrap();
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn decreasing_profile_gives_negative_monotone_log_det() {
        let grid = DirichletGrid::new(40.0, 2048).unwrap();
        let vals: Vec<f64> = [0.25, 0.5, 1.0].iter().map(|&t| translation_log_det(&grid, tanh_step, 8.0, t).unwrap()).collect();
        assert!(vals.iter().all(|&v| v < -1e-6));
        assert!(vals[0] > vals[1] && vals[1] > vals[2]);
    }
}

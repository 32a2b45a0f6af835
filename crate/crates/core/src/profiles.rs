//! Named initial data.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::{FourierField, TorusGrid};

/// Built-in initial-data profiles.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Zero,
    /// `amplitude cos(2 pi mode x / L)`.
    Cosine { amplitude: f64, mode: i64 },
    /// `amplitude exp(-(x - center)^2 / (2 width^2))`.
    Gaussian { amplitude: f64, width: f64, center: f64 },
    /// `-2 k^2 sech^2(k (x - center))`, the KdV soliton of speed `4 k^2`.
    Soliton { kappa: f64, center: f64 },
    /// Independent standard normal coefficients on `|n| <= cutoff` (Hermitian for real data),
    /// rescaled so that `sqrt(sum |c_n|^2) = amplitude`.
    RandomBandlimited { seed: u64, cutoff: usize, amplitude: f64 },
    /// `-tanh(x)`: a step, usable only on the line.
    TanhStep,
}

impl Profile {
    /// Samples the profile on a torus; `real` selects a real-valued field.
    pub fn build(&self, grid: &TorusGrid, real: bool) -> Result<FourierField> {
        let field = match *self {
            Profile::Zero => FourierField::zeros(grid),
            Profile::Cosine { amplitude, mode } => {
                if mode.unsigned_abs() as usize > grid.n_max() {
                    return Err(Error::Config(format!("cosine mode {mode} outside the band")));
                }
                let h = Complex64::new(0.5 * amplitude, 0.0);
                if mode == 0 {
                    FourierField::from_modes(grid, &[(0, 2.0 * h)], true)?
                } else {
                    FourierField::from_modes(grid, &[(mode, h), (-mode, h)], true)?
                }
            }
            Profile::Gaussian { amplitude, width, center } => {
                if !(width > 0.0) {
                    return Err(Error::Config(format!("gaussian width must be positive, got {width}")));
                }
                FourierField::from_fn(grid, |x| amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp())?
            }
            Profile::Soliton { kappa, center } => {
                if !(kappa > 0.0) {
                    return Err(Error::Config(format!("soliton kappa must be positive, got {kappa}")));
                }
                FourierField::from_fn(grid, |x| -2.0 * kappa * kappa / (kappa * (x - center)).cosh().powi(2))?
            }
            Profile::RandomBandlimited { seed, cutoff, amplitude } => random_bandlimited(grid, seed, cutoff, amplitude, real)?,
            Profile::TanhStep => {
                return Err(Error::Config("tanh_step is a line profile and cannot be placed on a torus".into()));
            }
        };
        Ok(if real { field } else { field.into_complex() })
    }

    /// Real-line function of the profile (used by the finite-difference demo).
    pub fn line_fn(&self) -> Result<Box<dyn Fn(f64) -> f64>> {
        Ok(match *self {
            Profile::Zero => Box::new(|_| 0.0),
            Profile::TanhStep => Box::new(crate::fallacy::tanh_step),
            Profile::Gaussian { amplitude, width, center } => {
                Box::new(move |x| amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp())
            }
            Profile::Soliton { kappa, center } => {
                Box::new(move |x| -2.0 * kappa * kappa / (kappa * (x - center)).cosh().powi(2))
            }
            _ => return Err(Error::Config("profile has no line version".into())),
        })
    }
}

/// Seeded random band-limited field.
pub fn random_bandlimited(grid: &TorusGrid, seed: u64, cutoff: usize, amplitude: f64, real: bool) -> Result<FourierField> {
    if cutoff > grid.n_max() {
        return Err(Error::Config(format!("cutoff {cutoff} exceeds N_max {}", grid.n_max())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let cut = cutoff as i64;
    let mut modes = Vec::new();
    if real {
        modes.push((0, Complex64::new(draw(), 0.0)));
        for n in 1..=cut {
            let c = Complex64::new(draw(), draw()) * std::f64::consts::FRAC_1_SQRT_2;
            modes.push((n, c));
            modes.push((-n, c.conj()));
        }
    } else {
        for n in -cut..=cut {
            modes.push((n, Complex64::new(draw(), draw()) * std::f64::consts::FRAC_1_SQRT_2));
        }
    }
    let field = FourierField::from_modes(grid, &modes, real)?;
    let norm = field.coeff_norm();
    Ok(if norm > 0.0 { field.scale(amplitude / norm) } else { field })
}

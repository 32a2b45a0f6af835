//! Perturbation-determinant conservation laws for KdV, NLS and complex mKdV on the torus.
//!
//! The crate realizes the free-resolvent sandwich operators in a truncated Fourier basis,
//! evaluates the renormalized perturbation determinant `alpha(kappa; q)` by trace series and by
//! spectral calculus, integrates the flows pseudo-spectrally, and evaluates the Sobolev, Besov
//! and log-weighted norms these quantities control.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha;
pub mod error;
pub mod evolution;
pub mod fallacy;
pub mod lattice;
pub mod norms;
pub mod operators;
pub mod profiles;
pub mod quad;
pub mod spectral;

pub use alpha::{AknsSign, AlphaReport, GatePurpose};
pub use error::{Error, Result};
pub use evolution::{Flow, FlowSpec, Scheme, Trajectory};
pub use norms::{NormSpec, SurrogateFamily, WeightKind, XyKind};
pub use num_complex::Complex64;
pub use profiles::Profile;
pub use spectral::{FourierField, TorusGrid};

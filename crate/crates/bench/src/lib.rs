//! Fixtures shared by the benchmarks.

use pertdet::profiles::Profile;
use pertdet::{FourierField, TorusGrid};

/// Real random field on the unit torus with `n_max` retained modes.
pub fn real_field(n_max: usize, cutoff: usize, amplitude: f64) -> FourierField {
    let grid = TorusGrid::new(1.0, n_max).expect("valid grid");
    Profile::RandomBandlimited { seed: 42, cutoff, amplitude }.build(&grid, true).expect("cutoff inside band")
}

/// The same field viewed as complex data.
pub fn complex_field(n_max: usize, cutoff: usize, amplitude: f64) -> FourierField {
    real_field(n_max, cutoff, amplitude).into_complex()
}

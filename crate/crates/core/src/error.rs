use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Inconsistent inputs: wrong lengths, mismatched grids, bad grid sizes.
    #[error("configuration error: {0}")]
    Config(String),

    /// A parameter lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The trace series cannot converge because the Hilbert-Schmidt norm is at least one.
    #[error("trace series diverges: Hilbert-Schmidt norm {hs} >= 1")]
    Divergence { hs: f64 },

    /// An eigenvalue of the sandwich operator sits at or below -1, so log det(1 + A) is undefined.
    #[error("determinant undefined: eigenvalue {eigenvalue} <= -1")]
    DeterminantDomain { eigenvalue: f64 },

    /// The shifted Schrodinger operator is not positive definite.
    #[error("operator not positive definite: minimal eigenvalue {min_eigenvalue}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    /// Non-finite coefficients appeared during time stepping.
    #[error("numerical blow-up after t = {last_good_time}")]
    BlowUp { last_good_time: f64 },

    /// An internal invariant (e.g. reality of a real flow) was violated.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by evaluation, construction and verification routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index fails the admissibility condition of its series family.
    #[error("inadmissible: {0}")]
    Inadmissible(String),

    /// The evaluation point coincides with a pole.
    #[error("pole at s = {location}")]
    Pole { location: f64 },

    /// Configuration values violate an invariant of `EvalConfig`.
    #[error("invalid config: {0}")]
    Config(String),

    /// The series engine could not certify the requested tolerance.
    #[error("tolerance not reached: achieved {achieved:e}, requested {requested:e}")]
    Tolerance { achieved: f64, requested: f64 },

    /// A custom sequence failed its declared growth bound.
    #[error("growth check failed: {0}")]
    Growth(String),

    /// The operation is not defined for the given combination of inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Numeric overflow or a non-finite intermediate value.
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched or impossible dimensions, with a description of the
    /// offending argument.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument failed validation (bad radius, empty grid, unknown key,
    /// out-of-range value, ...). The message names the field.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix that must be positive definite had an eigenvalue below the
    /// floor. Remedy: raise `pd_floor` or regularize the input.
    #[error(
        "matrix not positive definite: min eigenvalue {min_eig:.3e} is below the floor {floor:.3e} \
         (raise pd_floor or regularize the input)"
    )]
    NotPositiveDefinite { min_eig: f64, floor: f64 },

    /// An uncertainty set with a trace interval admits no member.
    #[error("infeasible uncertainty set: {0}")]
    InfeasibleSet(String),

    /// The conic solver terminated without an optimal certificate.
    #[error("conic solver failed: status {status}, {detail}")]
    Solver { status: String, detail: String },

    /// Scenario configuration error (parse failure, unknown key, bad value).
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

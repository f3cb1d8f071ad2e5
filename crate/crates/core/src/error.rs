use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two positions that must be distinct coincide; the contact term is not modelled.
    #[error("degenerate separation: {0}")]
    DegenerateSeparation(String),

    /// `[X, [X, Y]]` is not the zero polynomial, so the two-term BCH closed form does not apply.
    #[error("BCH order violation: nested commutator has {terms} nonzero terms")]
    BchOrderViolation { terms: usize },

    #[error("oracle too large: Fock dimension {dim} exceeds cap {cap}")]
    OracleTooLarge { dim: usize, cap: usize },

    #[error("path singularity: segment {segment} passes within {distance:e} of the field point")]
    PathSingularity { segment: usize, distance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

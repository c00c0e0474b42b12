//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two scalars (or scalar-carrying structures) disagree on (m, r).
    #[error("scalar signature mismatch: expected (m={expected_m}, r={expected_r}), found (m={found_m}, r={found_r})")]
    SignatureMismatch {
        expected_m: u64,
        expected_r: usize,
        found_m: u64,
        found_r: usize,
    },

    /// An exponent vector has the wrong length for the ambient rank.
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Inversion or division by the zero field element.
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    /// A series with no invertible form was asked for an inverse.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// The zero series has no leading term.
    #[error("the zero series has no leading term")]
    NoLeadingTerm,

    /// A torus element must have invertible (nonzero) entries.
    #[error("invalid torus element: entry {index} is zero")]
    InvalidTorusElement { index: usize },

    /// A shear direction that cannot separate the two named cosets.
    #[error("degenerate shear: sigma(v, t0) = sigma(v, r) for the given direction")]
    DegenerateShear,

    /// No probe in the schedule separated the leading pair.
    #[error("separation failure: no torus probe separated the leading monomials after {probes} attempts")]
    SeparationFailure { probes: usize },

    /// The requested analysis does not apply to this configuration.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A structurally invalid configuration (matrix shape, entry counts, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

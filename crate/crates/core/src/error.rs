//! Error type shared by every layer of the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("objects live over different rings: {0}")]
    MixedRings(String),
    #[error("not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("relations do not form a regular sequence; witness syzygy {witness}")]
    NotRegularSequence { witness: String },
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("module is not torsion-free")]
    NotTorsionFree,
    #[error("ring tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("relation does not hold: {0}")]
    RelationDoesNotHold(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Tor profile has an infinite-length entry at degree {0}")]
    InfiniteLengthEntry(usize),
    #[error("ring is not a hypersurface (codimension {0})")]
    NotHypersurface(usize),
    #[error("no period-2 tail detected through degree {0}; raise maxDeg")]
    NoPeriodicTail(usize),
    #[error("unknown theorem id `{id}`{}", suggestion.as_ref().map(|s| format!("; did you mean `{s}`?")).unwrap_or_default())]
    UnknownTheoremId { id: String, suggestion: Option<String> },
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("too many variables: {0} (at most {1} supported)")]
    TooManyVariables(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

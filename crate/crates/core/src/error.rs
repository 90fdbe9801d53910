use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} is above the supported limit of {limit}", limit = crate::polyhedra::MAX_AMBIENT_DIM)]
    UnsupportedDimension(usize),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("point {0} is not in the support of the complex")]
    NotInSupport(String),
    #[error("a monomial has empty tropicalization")]
    MonomialInput,
    #[error("exponent {0} is not a term of the polynomial")]
    TermNotFound(String),
    #[error("cell is not a cell of the common refinement")]
    NotACommonCell,
    #[error("intersection is not proper: codimension {found}, expected {expected}")]
    NotProper { expected: usize, found: usize },
    #[error("point {0} is not an isolated point of the intersection")]
    NotIsolated(String),
    #[error("Minkowski weights live on different fans")]
    IncompatibleFans,
    #[error("fan is not complete and simplicial: {0}")]
    InvalidFan(String),
    #[error("expected {expected} inputs, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("ambient complex is not locally linear at {0}")]
    AmbientNotLinear(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("codimension {0} exceeds the ambient dimension")]
    CodimensionTooLarge(usize),
    #[error("unknown example {0}")]
    UnknownFixture(String),
}

impl Error {
    /// Variant name, as reported on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::Unbounded => "Unbounded",
            Error::EmptyPolyhedron => "EmptyPolyhedron",
            Error::NotInSupport(_) => "NotInSupport",
            Error::MonomialInput => "MonomialInput",
            Error::TermNotFound(_) => "TermNotFound",
            Error::NotACommonCell => "NotACommonCell",
            Error::NotProper { .. } => "NotProper",
            Error::NotIsolated(_) => "NotIsolated",
            Error::IncompatibleFans => "IncompatibleFans",
            Error::InvalidFan(_) => "InvalidFan",
            Error::WrongCount { .. } => "WrongCount",
            Error::AmbientNotLinear(_) => "AmbientNotLinear",
            Error::InvalidComplex(_) => "InvalidComplex",
            Error::CodimensionTooLarge(_) => "CodimensionTooLarge",
            Error::UnknownFixture(_) => "UnknownFixture",
        }
    }
}

use std::fmt;

use thiserror::Error;

/// Errors from the GF(2) linear algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace basis vector {index} is not contained in the ambient subspace")]
    NotContained { index: usize },
}

/// Which structural rule a simplex breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    FaceCount,
    UnknownFace,
    FaceDimension,
    FiltrationDecrement,
    SimplicialIdentity,
    BlockCount,
    BlockRange,
    EmptySimplex,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FaceCount => "face count",
            Self::UnknownFace => "unknown face",
            Self::FaceDimension => "face dimension",
            Self::FiltrationDecrement => "filtration-decrement",
            Self::SimplicialIdentity => "simplicial identity",
            Self::BlockCount => "block count",
            Self::BlockRange => "block range",
            Self::EmptySimplex => "empty simplex",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single failed invariant, attributed to a simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub simplex: String,
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(simplex: impl Into<String>, kind: ViolationKind, detail: impl Into<String>) -> Self {
        Self {
            simplex: simplex.into(),
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.simplex, self.kind)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("invalid complex: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cochains live on different carriers")]
    CarrierMismatch,
    #[error("formal dimension mismatch: expected {expected}, found {found}")]
    FormalDimension { expected: usize, found: usize },
    #[error("simplex {0} is not regular")]
    NotRegular(String),
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
    #[error("perversity {p} is not below {q}")]
    NotBelow { p: String, q: String },
    #[error("invalid perversity: {0}")]
    Perversity(String),
    #[error("invalid boundary component: {0}")]
    Component(String),
    #[error("degree {degree} out of range")]
    Degree { degree: usize },
    #[error("class coordinates have length {found}, expected {expected}")]
    ClassLength { expected: usize, found: usize },
    #[error("simplex {0} is too large for the packed term encoding")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by unreadable or malformed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Self::Parse(_) | Self::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

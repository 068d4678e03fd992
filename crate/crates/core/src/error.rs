use thiserror::Error;

use crate::band::Elem;

/// Problems found while reading or validating a band.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown element `{name}`")]
    UnknownElement {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("the band has no elements")]
    Empty,
    #[error("non-idempotent diagonal at {element}")]
    NonIdempotent { element: String },
    #[error("associativity fails for ({x}, {y}, {z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("table entry out of range at row {row}, column {column}")]
    EntryOutOfRange { row: usize, column: usize },
}

/// Two composites of structure maps that disagree on an element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("phi {from} {to} depends on the path: via {path_a} gives {image_a}, via {path_b} gives {image_b} for {element}")]
pub struct PathConflict {
    pub from: String,
    pub to: String,
    pub element: String,
    pub path_a: String,
    pub image_a: String,
    pub path_b: String,
    pub image_b: String,
}

/// Problems found while assembling a strong semilattice of rectangular bands.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrongSemilatticeError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("the declared order is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("components `{0}` and `{1}` have no greatest lower bound")]
    NotMeetSemilattice(String, String),
    #[error("phi {from} {to}: {message}")]
    BadMorphism {
        from: String,
        to: String,
        message: String,
    },
    #[error(transparent)]
    PathDependence(Box<PathConflict>),
    #[error("synthesized table is not a band: {0}")]
    Band(#[from] BandError),
    #[error("decomposition of the synthesized band does not match the description: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    StrongSemilattice(#[from] StrongSemilatticeError),
    #[error("not a normal band")]
    NotNormal,
    #[error("not a semilattice")]
    NotSemilattice,
    #[error("not a rectangular band")]
    NotRectangular,
    #[error("not a locally large band")]
    NotLocallyLarge,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("words must be non-empty")]
    EmptyWord,
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is not an element of the band")]
    InvalidLetter(Elem),
    #[error("letters lie in more than one D-class (offending letter `{0}`)")]
    MixedComponents(String),
    #[error("letter `{letter}` does not lie above the target component")]
    NotAbove { letter: String },
    #[error("malformed certificate, line {line}: {message}")]
    Certificate { line: usize, message: String },
    #[error("malformed witness, line {line}: {message}")]
    Witness { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

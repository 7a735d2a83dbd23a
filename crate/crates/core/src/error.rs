use thiserror::Error;

/// Position inside a text input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{at}: unexpected character {ch:?}")]
    Lexical { at: Span, ch: char },
    #[error("{at}: unknown generator `{name}`")]
    UnknownGenerator { at: Span, name: String },
    #[error("{at}: malformed commutator: {reason}")]
    MalformedCommutator { at: Span, reason: String },
    #[error("{at}: empty generator list")]
    EmptyGenerators { at: Span },
    #[error("{at}: duplicate name `{name}`")]
    Duplicate { at: Span, name: String },
    #[error("{at}: {reason}")]
    Syntax { at: Span, reason: String },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Lexical { at, .. }
            | ParseError::UnknownGenerator { at, .. }
            | ParseError::MalformedCommutator { at, .. }
            | ParseError::EmptyGenerators { at }
            | ParseError::Duplicate { at, .. }
            | ParseError::Syntax { at, .. } => *at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("coordinate {0} of the character is not invertible")]
    NotInvertible(usize),
    #[error("incompatible character: {0}")]
    IncompatibleCharacter(String),
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("generator index {index} out of range (n = {n})")]
    GeneratorIndex { index: usize, n: usize },
    #[error("degree {degree} outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },
    #[error("truncation degree {have} is below the required {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("map to Z/{order} is not surjective")]
    NotSurjective { order: u64 },
    #[error("map to Z/{order} does not kill relator {relator}")]
    NotHomomorphism { order: u64, relator: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("element is not in the free Lie algebra: {0}")]
    NotLieElement(String),
    #[error("first Betti number {b1} exceeds the configured bound {bound}")]
    TooLarge { b1: usize, bound: usize },
    #[error("{0}")]
    Computation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::fmt;

use thiserror::Error;

use crate::quandle::RackViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position-tagged diagnostic from one of the text or JSON readers.
///
/// Lines and columns are 1-based. For JSON input the position refers to the
/// offending table cell (row and column of the matrix, both 1-based) when the
/// document itself parsed fine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry at row {row}, column {col} is {value}, out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedTable {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("not a rack: {0}")]
    NotARack(RackViolation),
    #[error("not a quandle: {witness} ▷ {witness} ≠ {witness}")]
    NotAQuandle { witness: usize },
    #[error("not involutory: {x} ▷ ({x} ▷ {y}) ≠ {y}")]
    NotInvolutory { x: usize, y: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "modulus {n} is even; the kernel stands in for a torsion-free group, so 2a = 0 must \
         force a = 0, which only holds for odd moduli"
    )]
    EvenModulus { n: usize },
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("generator index {index} out of range for {rank} generators")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("cannot combine a free-group word with a Coxeter word")]
    ModeMismatch,
    #[error("words over {left} and {right} generators cannot be combined")]
    RankMismatch { left: usize, right: usize },
    #[error("word is not an involution")]
    NotAnInvolution,
    #[error("word is not a conjugate of a generator")]
    NotGeneratorConjugate,
    #[error("image of generator {generator} is element {element}, which does not square to the identity")]
    NonInvolutiveImage { generator: usize, element: usize },
    #[error("{what}: requested {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("invalid derivation step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

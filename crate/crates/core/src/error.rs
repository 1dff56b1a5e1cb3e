use thiserror::Error;

use crate::matrix::Position;
use crate::staircase::StaircaseViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("the pattern is all-zero; containment is only defined for patterns with a 1 entry")]
    AllZeroPattern,

    #[error("dimensions {rows}x{cols} are outside the supported range 1..={max}")]
    Dimensions { rows: usize, cols: usize, max: usize },

    #[error("position {0} lies outside the matrix")]
    OutOfBounds(Position),

    #[error("the starting matrix already contains the pattern")]
    ContainsPattern,

    #[error("the matrix is not saturating for the pattern")]
    NotSaturating,

    #[error("pattern entry {0} is a 0, a 1 entry is required")]
    PivotNotOne(Position),

    #[error("not a staircase: {0}")]
    Staircase(#[from] StaircaseViolation),

    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("illegal character {0:?} (expected '1', '0' or '.')")]
    IllegalChar(char),
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("more than {0} rows or columns")]
    TooLarge(usize),
}

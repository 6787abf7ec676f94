use thiserror::Error;

use crate::diagram::PathClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("continued fraction tail evaluates to zero")]
    DivisionByZero,

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("head {0} has no D-path in the diagram D0")]
    InvalidHead(u8),

    #[error("operation expects a {expected} path, got {found}")]
    WrongClass {
        expected: &'static str,
        found: PathClass,
    },

    #[error("ratio class {class} is not a row of the {edge} block of the slope table")]
    UnknownRatioClass { edge: char, class: &'static str },

    #[error("slope convention table has no entry for {0}-type edges")]
    UncalibratedConvention(char),

    #[error("B-type edges need an odd number of sheets, got mu = {0}")]
    ParityError(i64),

    #[error("genus would be {twice}/2, which is not a non-negative integer")]
    NonIntegerGenus { twice: i64 },

    #[error("linking number is {0}, expected zero")]
    NonzeroLinking(i64),

    #[error("invalid knot parameters: {0}")]
    InvalidKnot(String),

    #[error("torus knot parameters ({0}, {1}) are not coprime")]
    NotCoprime(i64, i64),

    #[error("invalid sheet data: {0}")]
    InvalidSheets(String),

    #[error("{0} and {1} are not joined by an edge of the Farey diagram")]
    NotFareyEdge(String, String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyTable,
    NotSquare { row: usize, len: usize, size: usize },
    OutOfRange { row: usize, col: usize, value: usize },
    BadNames(String),
    BadPartition(String),
    NotCongruence,
    SizeMismatch { left: usize, right: usize },
    SizeCap { what: &'static str, limit: usize },
    NotIdempotent,
    NotRectangularBand,
    Parse { pos: usize, msg: String },
    UnknownVariable(String),
    Precondition(String),
    EquationHolds,
    UnknownZooEntry(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyTable => write!(f, "table is empty"),
            Error::NotSquare { row, len, size } => {
                write!(f, "row {row} has {len} entries, expected {size}")
            }
            Error::OutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            Error::BadNames(msg) => write!(f, "bad element names: {msg}"),
            Error::BadPartition(msg) => write!(f, "bad partition: {msg}"),
            Error::NotCongruence => write!(f, "partition is not a congruence"),
            Error::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            Error::SizeCap { what, limit } => write!(f, "size cap exceeded: {what} (limit {limit})"),
            Error::NotIdempotent => write!(f, "operation is not idempotent"),
            Error::NotRectangularBand => write!(f, "not a rectangular band"),
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::EquationHolds => write!(f, "equation holds, no countermodel exists"),
            Error::UnknownZooEntry(name) => write!(f, "unknown zoo entry `{name}`"),
        }
    }
}

impl core::error::Error for Error {}

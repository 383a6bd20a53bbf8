use thiserror::Error;

/// Errors raised by the library for invalid inputs.
///
/// Internal invariant violations (a bracket producing an invalid basis
/// element, for example) are bugs and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid multiplicity bound: m = {m}, n = {n} (need m >= 2, n >= 1)")]
    InvalidBound { m: usize, n: usize },

    #[error("part {part} exceeds the allowed maximum {max}")]
    PartTooLarge { part: usize, max: usize },

    #[error("part {part} has multiplicity {mult}, above the bound {max}")]
    MultiplicityTooLarge {
        part: usize,
        mult: usize,
        max: usize,
    },

    #[error("derivation index {k} outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("index {i} outside the valid range {lo}..={hi}")]
    StepOutOfRange { i: usize, lo: usize, hi: usize },

    #[error("partition has weight {weight}, expected {expected}")]
    WeightMismatch { weight: usize, expected: usize },

    #[error("operation requires m = 2, got m = {0}")]
    RequiresBinary(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

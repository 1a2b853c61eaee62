use thiserror::Error;

use crate::scalar::FieldKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial upper index must be nonnegative, got {0}")]
    NegativeUpperIndex(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is outside the supported range 2..2^32")]
    ModulusOutOfRange(u64),

    #[error("dimension {n} exceeds the limit {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("rank bound r = {r} is out of range for n = {n}")]
    RankOutOfRange { r: usize, n: usize },

    #[error("mask {bits:#x} does not fit dimension {n}")]
    MaskOutOfRange { bits: u32, n: usize },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldKind, found: FieldKind },

    #[error("table length {found} does not match 2^{n} = {expected}")]
    TableLength { n: usize, expected: usize, found: usize },

    #[error("field of characteristic {characteristic} is too small; need more than {required}")]
    FieldTooSmall { characteristic: u64, required: u64 },

    #[error("(n, r) = ({n}, {r}) is not in the {expected} regime")]
    WrongRegime { n: usize, r: usize, expected: &'static str },

    #[error("subset of size {size} exceeds the rank bound {r}")]
    SubsetTooLarge { size: usize, r: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("outside the recurrence domain: {0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

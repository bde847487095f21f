use thiserror::Error;

use crate::ring::RingContext;

/// Errors raised anywhere in the library.
///
/// Every variant carries enough context to explain the failure without a
/// backtrace; identity checks surface these verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {left} vs {right}")]
    ContextMismatch { left: RingContext, right: RingContext },

    #[error("{value} is not invertible in {context}")]
    NotInvertible { value: String, context: RingContext },

    #[error("ordering requested in unordered ring {0}")]
    Unordered(RingContext),

    #[error("invalid modulus {0}: must be a prime")]
    InvalidModulus(u64),

    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("cofactor expansion limited to {limit}x{limit}, got {size}x{size}")]
    SizeGuard { size: usize, limit: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("pair sum x[{i}] + y[{j}] is not invertible")]
    NonInvertiblePairSum { i: usize, j: usize },

    #[error("matrix is not invertible (det = {det})")]
    SingularMatrix { det: String },

    #[error("spec must have n >= 1 and equal-length xs/ys (got {xs} and {ys})")]
    BadSpecLength { xs: usize, ys: usize },

    #[error("input is not sorted: {0}")]
    Unsorted(String),

    #[error("floating-point evaluation needs rational parameters, got {0}")]
    NotRational(RingContext),

    #[error("exact zero pivot in column {0}")]
    ExactZeroPivot(usize),

    #[error("non-finite float entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the field, sum, count, code and moment routines.
///
/// Variants that describe a broken identity (`NonIntegralCount`,
/// `ParityViolation`, `IdentityViolation`) never arise from valid input;
/// they indicate an implementation bug and carry enough data to diagnose it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field degree r = {r} (supported: {min}..={max})")]
    UnsupportedDegree { r: u32, min: u32, max: u32 },

    #[error("modulus {modulus:#x} is reducible over GF(2)")]
    ReducibleModulus { modulus: u32 },

    #[error("modulus {modulus:#x} has degree {actual}, expected {expected}")]
    DegreeMismatch {
        modulus: u32,
        expected: u32,
        actual: u32,
    },

    #[error("invalid field specification {0:?} (expected \"r\" or \"r:modulus_hex\")")]
    InvalidFieldSpec(String),

    #[error("element code {code} is outside the field of size {q}")]
    ElementOutOfRange { code: u32, q: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("work of {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("count {numerator} is not divisible by {divisor}")]
    NonIntegralCount { numerator: BigInt, divisor: BigInt },

    #[error("length {length} minus sum value {value} is odd")]
    ParityViolation { length: BigInt, value: BigInt },

    #[error("n = {0} is not a power of two")]
    NotPowerOfTwo(u32),

    #[error("a -> c(a) is not injective: c({witness}) is the zero word")]
    InjectivityFailure { witness: u32 },

    #[error("Pless identity fails at h = {h}: lhs = {lhs}, rhs = {rhs}")]
    IdentityViolation { h: usize, lhs: BigInt, rhs: BigInt },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

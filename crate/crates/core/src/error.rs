use crate::algebra::Field;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(Field, Field),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("both arguments are zero")]
    BothZero,
    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooSmall { found: i64, required: usize },
    #[error("operation requires rational coefficients, got {0}")]
    NonRationalCoefficients(Field),
    #[error("operation requires coefficients over {expected}, got {found}")]
    WrongField { expected: &'static str, found: Field },
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("square roots are not supported in characteristic 2")]
    Characteristic2,
    #[error("leading coefficient is not a square in the field")]
    NonSquareLeading,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero series has no inverse")]
    ZeroSeries,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("inputs are not coprime")]
    NonCoprime,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("continued fraction folds through an identically zero tail at entry {0}")]
    ZeroTail(usize),
    #[error("continued fraction is empty")]
    EmptyContinuedFraction,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("torsion order {0} is not supported (use 2..=8 or 11)")]
    UnsupportedTorsionOrder(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by construction, analysis and simulation routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("block length N must be positive")]
    ZeroLength,

    #[error("block length N = {0} is even; z^N - 1 is not squarefree over GF(2), only odd N is supported")]
    EvenLength(usize),

    #[error("polynomial division by zero")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,

    #[error("polynomial does not divide z^{n} - 1")]
    NotADivisor { n: usize },

    #[error("extension degree {m} is too large for table-based GF(2^m) arithmetic (max {max})")]
    FieldTooLarge { m: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("factors ell = {ell}, m = {mel} do not give a coprime factorization of N = {n}")]
    BadFactorization { ell: usize, mel: usize, n: usize },

    #[error("structural identity violated: {0}")]
    InvariantViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid value: {0}")]
    InvalidArgument(String),

    #[error("syndrome is not in the image of the parity-check matrix")]
    InfeasibleSyndrome,

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;
use core::fmt;

/// Reasons a candidate doubling vector `ku` is refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoublingRejection {
    /// Coordinate (1-based) holds something other than 0 or k.
    NotZeroOrK { position: usize, value: u32 },
    /// `n_k(ku)` violates the parity rule for this k.
    Parity { k: u32, count: usize },
    /// `ku` already lies in the code.
    InCode,
    /// `ku` is not zero on the information positions and normalization was required.
    NotNormalized,
    /// The support (1-based) was excluded by the given step of the exclusion search.
    Excluded { positions: alloc::vec::Vec<usize>, step: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidModulus(u32),
    NotPowerOfTwo(u32),
    /// Vectors are limited to 64 coordinates.
    LengthTooLarge(usize),
    DimensionMismatch { expected: usize, found: usize },
    ModulusMismatch { expected: u32, found: u32 },
    /// An argument outside the domain of the operation.
    Domain(String),
    /// Enumeration would exceed the configured budget.
    Capacity { words: u128, budget: u128 },
    Doubling(DoublingRejection),
    /// A structural precondition of an algorithm does not hold.
    Precondition(String),
    /// An invariant that the mathematics guarantees was violated.
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for DoublingRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoublingRejection::NotZeroOrK { position, value } => {
                write!(f, "coordinate {position} is {value}, expected 0 or k")
            }
            DoublingRejection::Parity { k, count } => {
                write!(f, "n_k(ku) = {count} violates the parity rule for k = {k}")
            }
            DoublingRejection::InCode => f.write_str("ku lies in the code"),
            DoublingRejection::NotNormalized => {
                f.write_str("ku is not zero on the information positions")
            }
            DoublingRejection::Excluded { positions, step } => {
                write!(f, "support {positions:?} is excluded by step {step}")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(q) => write!(f, "invalid modulus {q}: expected an even number in 2..=256"),
            Error::NotPowerOfTwo(q) => write!(f, "modulus {q} is not a power of two"),
            Error::LengthTooLarge(n) => write!(f, "length {n} exceeds the maximum of 64"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ModulusMismatch { expected, found } => {
                write!(f, "modulus mismatch: expected Z{expected}, found Z{found}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity { words, budget } => {
                write!(f, "enumeration of {words} codewords exceeds the budget of {budget}; partition the scan")
            }
            Error::Doubling(r) => write!(f, "doubling vector rejected: {r}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<DoublingRejection> for Error {
    fn from(r: DoublingRejection) -> Self {
        Error::Doubling(r)
    }
}

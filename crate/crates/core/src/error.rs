//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors raised by exact-arithmetic operations and enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share an ambient dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A degree constraint was violated (e.g. contracting a constant).
    InvalidDegree(String),
    /// Apolarity over `F_p` needs `p` larger than every degree; formal
    /// derivatives degenerate otherwise.
    SmallCharacteristic { p: u64, max_degree: u32 },
    /// A stratum index outside `0..=r`.
    IndexOutOfRange { k: i64, r: u32 },
    /// Invalid discrete parameters (`n`, `r`, multidegree).
    InvalidParameters(String),
    /// An operation that requires a nonzero form tuple received zero.
    ZeroTuple,
    /// An enumeration would exceed the configured cap.
    CapExceeded { required: u128, cap: u64 },
    /// Integer overflow in a combinatorial formula.
    Overflow(String),
    /// The requested modulus is not an odd prime below 2^31.
    InvalidModulus(u64),
    /// Prime-power fields with exponent > 1 are not supported.
    UnsupportedExtension { p: u64, e: u32 },
    /// Text-grammar parse failure, with byte offset into the input.
    Parse { offset: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidDegree(msg) => write!(f, "invalid degree: {msg}"),
            Error::SmallCharacteristic { p, max_degree } => write!(
                f,
                "characteristic {p} is too small for apolarity in degree {max_degree} \
                 (need p = 0 or p > {max_degree})"
            ),
            Error::IndexOutOfRange { k, r } => {
                write!(f, "stratum index {k} outside 0..={r}")
            }
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::ZeroTuple => write!(f, "form tuple is zero"),
            Error::CapExceeded { required, cap } => {
                write!(f, "enumeration of {required} items exceeds cap {cap}")
            }
            Error::Overflow(msg) => write!(f, "integer overflow: {msg}"),
            Error::InvalidModulus(p) => {
                write!(f, "{p} is not a prime below 2^31")
            }
            Error::UnsupportedExtension { p, e } => {
                write!(f, "prime-power field {p}^{e} not supported (prime fields only)")
            }
            Error::Parse { offset, message } => {
                write!(f, "parse error at byte {offset}: {message}")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Convenient result alias.
pub type Result<T> = core::result::Result<T, Error>;

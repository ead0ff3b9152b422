use alloc::string::String;
use core::fmt;

pub type CoreResult<T> = Result<T, CoreError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreError {
    /// The zero sheaf was passed where a nonzero sheaf is required.
    ZeroSheaf,
    /// A multiplicity in a formal sum was not positive.
    NonPositiveMultiplicity,
    /// An argument fell outside the range an operation is defined on.
    OutOfRange(String),
    /// Long-exact-sequence bounds were too loose to decide the question.
    Undetermined(String),
    /// A numerical identity that must hold did not; indicates a bug.
    Mismatch(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::ZeroSheaf => f.write_str("zero sheaf"),
            CoreError::NonPositiveMultiplicity => f.write_str("multiplicities must be positive"),
            CoreError::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            CoreError::Undetermined(msg) => write!(f, "undetermined: {msg}"),
            CoreError::Mismatch(msg) => write!(f, "identity check failed: {msg}"),
        }
    }
}

impl core::error::Error for CoreError {}

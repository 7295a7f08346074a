use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters or initial values outside a routine's domain.
    InvalidParams(&'static str),
    /// An index argument outside a routine's domain.
    InvalidIndex(&'static str),
    /// Attempted to invert an element of zero norm.
    ZeroDivisor,
    /// Two ring elements built over different discriminants.
    DeltaMismatch,
    /// A modulus or normalizing factor that must be nonzero is zero.
    DegenerateModulus,
    /// A closed form produced a value with a nonzero `t` component.
    NonRationalResult,
    /// An exponent that should be an integer came out as a half-integer.
    NonIntegralExponent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::InvalidIndex(msg) => write!(f, "invalid index: {msg}"),
            Error::ZeroDivisor => f.write_str("element has zero norm and is not invertible"),
            Error::DeltaMismatch => f.write_str("ring elements have different discriminants"),
            Error::DegenerateModulus => f.write_str("degenerate modulus (zero)"),
            Error::NonRationalResult => {
                f.write_str("closed form left a nonzero irrational component")
            }
            Error::NonIntegralExponent(which) => {
                write!(f, "exponent in {which} is not an integer")
            }
        }
    }
}

impl core::error::Error for Error {}

use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A subspace basis handed to a quotient was not linearly independent.
    DependentColumns,
    AlgebraMismatch,
    FieldMismatch,
    /// A matrix offered as a module homomorphism does not intertwine the actions.
    NotAHomomorphism,
    InvalidModule(String),
    InvalidComplex(String),
    NotGorensteinProjective {
        what: &'static str,
        gdim: usize,
    },
    /// Some certificate failed; the declared Gorenstein dimension is too small.
    GdimTooSmall {
        gdim: usize,
        stage: &'static str,
    },
    WindowTooSmall {
        window: usize,
        gdim: usize,
    },
    /// The double-dual map of a supposedly Gorenstein-projective module is not injective.
    DoubleDualNotInjective,
    NotAcyclic,
    NotBounded,
    InvalidFamilyMember {
        index: usize,
    },
    /// Two independent algorithms disagreed; always a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not a prime below 2^31"),
            Error::DimensionMismatch { op, expected, found } => write!(
                f,
                "{op}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::DependentColumns => write!(f, "subspace basis columns are linearly dependent"),
            Error::AlgebraMismatch => write!(f, "modules live over different algebras"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::NotAHomomorphism => write!(f, "matrix does not intertwine the module actions"),
            Error::InvalidModule(msg) => write!(f, "invalid module: {msg}"),
            Error::InvalidComplex(msg) => write!(f, "invalid complex: {msg}"),
            Error::NotGorensteinProjective { what, gdim } => {
                write!(f, "{what} is not Gorenstein-projective (declared gdim {gdim})")
            }
            Error::GdimTooSmall { gdim, stage } => {
                write!(f, "declared Gorenstein dimension {gdim} is too small ({stage})")
            }
            Error::WindowTooSmall { window, gdim } => {
                write!(f, "window radius {window} is smaller than the Gorenstein dimension {gdim}")
            }
            Error::DoubleDualNotInjective => {
                write!(f, "double-dual map is not injective; input is not Gorenstein-projective")
            }
            Error::NotAcyclic => write!(f, "complex is not acyclic"),
            Error::NotBounded => write!(f, "complex is not bounded"),
            Error::InvalidFamilyMember { index } => {
                write!(f, "test family member {index} is not in the required class")
            }
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `digits(n, b, len)` called with `n >= b^len`.
    DigitOverflow { n: u64, base: u32, len: usize },
    /// A permutation table is not a bijection on `0..base`.
    NotABijection,
    /// Linear digit scrambling with a factor not coprime to the base.
    NotCoprime { factor: u32, base: u32 },
    /// Mixed bases in one operation.
    BaseMismatch,
    /// Discrepancy of an empty point set requested.
    EmptyPointSet,
    /// A box with lower endpoint >= upper endpoint.
    MalformedBox,
    /// Point set size does not equal `b^m`.
    CardinalityMismatch { expected: u64, got: u64 },
    /// An operation restricted to prime bases got a composite one.
    NonPrimeBase(u32),
    /// A generating matrix violates its kind's shape constraints.
    InvalidMatrix(&'static str),
    /// The generating-matrix pair fails the digital net rank condition.
    InvalidNet,
    /// The upper-left block of a block matrix is singular.
    SingularBlock,
    /// The permutation sequence has no eventually constant tail, so the
    /// requested exact (untruncated) value does not admit a closed form.
    TailNotEventuallyConstant,
    /// A breakpoint sweep exceeded its configured budget.
    BudgetExceeded { budget: u64 },
    /// A configured size cap was exceeded.
    CapExceeded { what: &'static str, cap: u64 },
    /// A point lies outside the half-open unit domain expected here.
    PointOutOfRange,
    /// Malformed textual payload (permutation, matrix, rational, ...).
    Parse(String),
    /// Unknown generator family or check name.
    UnknownKind(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DigitOverflow { n, base, len } => {
                write!(f, "{n} does not fit in {len} base-{base} digits")
            }
            Error::NotABijection => write!(f, "table is not a bijection"),
            Error::NotCoprime { factor, base } => {
                write!(f, "factor {factor} is not invertible modulo {base}")
            }
            Error::BaseMismatch => write!(f, "operands have different bases"),
            Error::EmptyPointSet => write!(f, "empty point set"),
            Error::MalformedBox => write!(f, "box has lower endpoint >= upper endpoint"),
            Error::CardinalityMismatch { expected, got } => {
                write!(f, "expected {expected} points, got {got}")
            }
            Error::NonPrimeBase(b) => write!(f, "base {b} is not prime"),
            Error::InvalidMatrix(msg) => write!(f, "invalid generating matrix: {msg}"),
            Error::InvalidNet => write!(f, "matrices do not generate a valid digital net"),
            Error::SingularBlock => write!(f, "upper-left block is singular"),
            Error::TailNotEventuallyConstant => {
                write!(f, "permutation sequence has no eventually constant tail")
            }
            Error::BudgetExceeded { budget } => {
                write!(f, "breakpoint budget of {budget} exceeded")
            }
            Error::CapExceeded { what, cap } => write!(f, "{what} exceeds cap {cap}"),
            Error::PointOutOfRange => write!(f, "point outside [0,1) domain"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::UnknownKind(name) => write!(f, "unknown kind: {name}"),
        }
    }
}

impl core::error::Error for Error {}

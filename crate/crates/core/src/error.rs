use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Why a sampled parameter set was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    RepeatedOuterRoot,
    RepeatedRoot,
    ZeroCoordinate,
    ZeroB,
    ZeroNorm,
    /// The square-root remainder dropped below degree `d - 1`.
    LowRemainder,
    NotSquarefree,
    CoincidentPoints,
    /// A point with `y = 0` where a non-Weierstrass point was expected.
    WeierstrassPoint,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Degeneracy::RepeatedOuterRoot => "repeated root of the outer polynomial",
            Degeneracy::RepeatedRoot => "repeated tuple entry",
            Degeneracy::ZeroCoordinate => "zero coordinate",
            Degeneracy::ZeroB => "b = 0",
            Degeneracy::ZeroNorm => "zero norm",
            Degeneracy::LowRemainder => "remainder degree below d - 1",
            Degeneracy::NotSquarefree => "f is not squarefree",
            Degeneracy::CoincidentPoints => "coincident points",
            Degeneracy::WeierstrassPoint => "unexpected point with y = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("divisors belong to different curves")]
    CurveMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("degenerate parameters: {0}")]
    Degenerate(Degeneracy),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("operation budget of {0} group operations exhausted")]
    BudgetExceeded(u64),
    #[error("gave up after {attempts} degenerate samples (last: {last})")]
    RetriesExhausted { attempts: u32, last: Degeneracy },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

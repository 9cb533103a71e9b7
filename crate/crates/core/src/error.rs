use thiserror::Error;

/// Errors raised by the exact arithmetic and construction routines.
///
/// Mathematical *outcomes* (a period that is not rational, a colon ideal that
/// differs from the expected one) are reported through result types, not
/// through this enum. An `Error` always means the inputs were unusable or an
/// internal invariant broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,

    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not in the Jacobian ideal")]
    NotInJacobianIdeal,

    #[error("G is not in the tangent space (J^F : P_lambda)_d")]
    NotTangent,

    #[error("exponent vector {0:?} is not totally decomposable")]
    NotTotallyDecomposable(Vec<u32>),

    #[error("identity check failed for d={d}, q={q}, k={k}: got {value}")]
    IdentityFailed { d: u64, q: u64, k: u64, value: i64 },

    #[error("cocycle law fails at ({s}, {t})")]
    CocycleLaw { s: u32, t: u32 },

    #[error("c_lambda is not set on this spec")]
    MissingCLambda,

    #[error("witness search exhausted {candidates} candidates")]
    SearchExhausted { candidates: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether the error stems from bad input rather than a failed
    /// mathematical check or a broken invariant.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::IdentityFailed { .. }
                | Error::CocycleLaw { .. }
                | Error::SearchExhausted { .. }
                | Error::Internal(_)
        )
    }
}

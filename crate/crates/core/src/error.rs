use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} vs {1}")]
    MixedField(String, String),
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("interpolation data inconsistent with degree bound {bound} at x = {x}")]
    InconsistentData { bound: usize, x: String },
    #[error("need at least {needed} points for degree bound, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("jet precision exhausted: {0}")]
    PrecisionLoss(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("parity violation: r = {r}, s = {s} must satisfy r = s mod 2 and r, s >= 1")]
    Parity { r: i64, s: i64 },
    #[error("expected a {expected}-dimensional kernel, found dimension {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("degenerate eigenvalue for {lambda} against {mu}")]
    DegenerateEigenvalue { lambda: String, mu: String },
    #[error("degeneracy: {0}")]
    Degeneracy(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("nonzero result: {0}")]
    NonzeroResult(String),
    #[error("factor mismatch, residual {0}")]
    FactorMismatch(String),
    #[error("not proportional: {0}")]
    ProportionalityFailure(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("truncation bound too small: {0}")]
    Truncation(String),
    #[error("result is not a polynomial: {0}")]
    NonpolynomialResult(String),
    #[error("recursion violated: {0}")]
    RecursionViolation(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("sampling budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

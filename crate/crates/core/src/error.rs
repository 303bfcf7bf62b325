use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures reported by the toolkit.
///
/// Capacity errors are distinct from everything else: the objects here are
/// exponential, and running out of budget is not the same as a NO answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("capacity exceeded in {what}: needs {needed}, cap is {cap}")]
    Capacity { what: &'static str, needed: String, cap: String },

    #[error("matroid is not simple: column {0} is repeated")]
    Simplicity(String),

    #[error("zero column at position {0} but loops are not allowed")]
    Loop(usize),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Resource limits for exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest rank (or corank) whose full row/null space may be swept.
    pub max_rank: u32,
    /// Largest `|E(N)|^rank(M)` search space for homomorphism enumeration.
    pub max_homs: u64,
    /// Largest number of visited states in a breadth-first search.
    pub max_states: usize,
    /// Largest ambient dimension for an explicit decision graph (2^dim vertices).
    pub max_decision_dim: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_rank: 24, max_homs: 100_000_000, max_states: 1_000_000, max_decision_dim: 20 }
    }
}

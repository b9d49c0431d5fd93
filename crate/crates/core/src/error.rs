use thiserror::Error;

/// Coarse classification used by frontends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: ranges, divisibility, parity, lattice mismatch.
    Domain,
    /// The request exceeds a configured work budget.
    Resource,
    /// An exact identity that must hold did not; indicates a bug.
    Arithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("range: {0}")]
    Range(String),

    #[error("divisibility: {divisor} does not divide {dividend}")]
    Divisibility { divisor: i64, dividend: i64 },

    #[error("parity: Mukai self-pairing {0} is odd")]
    OddPairing(i64),

    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("nu = {nu} >= -1: vanishing of higher cohomology of L is not guaranteed")]
    NuTooWeak { nu: i64 },

    #[error("term budget exceeded: {terms} subset terms, budget {budget}")]
    TermBudget { terms: String, budget: u64 },

    #[error("not rational: non-zero coefficient at index {index}")]
    NotRational { index: usize },

    #[error("not integral: {context} = {value}")]
    NotIntegral { context: String, value: String },

    #[error("identity failed: {0}")]
    IdentityFailed(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::TermBudget { .. } => ErrorKind::Resource,
            Error::NotRational { .. } | Error::NotIntegral { .. } | Error::IdentityFailed(_) => {
                ErrorKind::Arithmetic
            }
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

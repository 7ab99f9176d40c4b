use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An exponential enumeration (the brute-force oracle, the perfect
    /// partition search, the psi recursion) ran past its node budget.
    #[error("enumeration budget of {budget} nodes exceeded ({context})")]
    BudgetExceeded { budget: u64, context: &'static str },

    /// A value that is provably integral (or two routes that are provably
    /// equal) came out otherwise; always indicates a bug.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("s = {s} is too close to the pole at s = 1 (need s >= 1 + {margin})")]
    PoleProximity { s: f64, margin: f64 },

    #[error("root solver failed: {0}")]
    SolverFailure(String),

    /// The prime sieve does not cover the requested range.
    #[error("sieve limit {limit} too small: {context}")]
    Coverage { limit: u64, context: String },

    /// An enclosure is too wide to certify the sign of a comparison.
    #[error("insufficient precision: {0}")]
    Precision(String),

    /// Checked table arithmetic overflowed; names the offending entry.
    #[error("integer overflow while accumulating entry {0}")]
    Overflow(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

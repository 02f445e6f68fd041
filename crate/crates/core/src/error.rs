use thiserror::Error;

/// Errors produced by path construction, oracles, and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside its documented domain (e.g. `k >= n`).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A vertex support is not a valid k-subset of `1..=n`.
    #[error("invalid support: {0}")]
    InvalidSupport(String),

    /// A step sequence does not chain into a monotone path.
    #[error("invalid step sequence: {0}")]
    InvalidStepSequence(String),

    /// A point sequence is not a diagonal-avoiding lattice path.
    #[error("invalid lattice path: {0}")]
    InvalidLatticePath(String),

    /// The operation is defined but deliberately out of scope here.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The direction `omega` ties two improving neighbors, so the greedy
    /// pivot step has no unique maximizer.
    #[error("omega is not generic at {vertex}: slope tie between {first} and {second}")]
    NonGenericOmega {
        vertex: String,
        first: String,
        second: String,
    },

    /// An enumeration or search exceeded its configured budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A lattice path does not match any ending type of the classifier.
    #[error("classification failed: {0}")]
    ClassificationError(String),

    /// Two independent oracles disagreed where a theorem says they must not.
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, FinisError>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FinisError {
    // perm_core
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("generator images do not define an automorphism")]
    NotAnAutomorphism,
    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,
    #[error("action does not respect the relations of the acting group")]
    ActionNotConsistent,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    // ffgroups
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("unsupported matrix group: {0}")]
    UnsupportedSpec(String),

    // structure
    #[error("group has {classes} conjugacy classes, more than the limit {limit}")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("the trivial group is neither simple nor composite")]
    TrivialGroup,
    #[error("h = {0} is outside the supported range 1..=7")]
    HTooLarge(usize),
    #[error("group is not solvable")]
    NotSolvable,

    // sylow_fusion
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("elements are not conjugate")]
    NotConjugate,
    #[error("element is not central in the Sylow subgroup")]
    NotCentral,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("recursion depth exceeded (bug)")]
    DepthExceeded,

    // hall
    #[error("subgroup is not a Hall subgroup for the given primes")]
    NotHall,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    // abelian_coh
    #[error("cochain degree {0} is above the supported maximum")]
    DegreeTooHigh(usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("extension does not split")]
    NotSplit,
    #[error("orders are not coprime")]
    NotCoprime,
    #[error("no conjugator found (bug)")]
    NoConjugatorFound,
    #[error("invalid module: {0}")]
    InvalidModule(String),

    // transfer
    #[error("Sylow subgroup is not abelian")]
    SylowNotAbelian,
    #[error("group has odd order")]
    OddOrder,
    #[error("bad input: {0}")]
    BadInput(String),

    // frobenius
    #[error("subgroup equals the whole group")]
    SubgroupIsWhole,
    #[error("subgroup must be proper and nontrivial")]
    BadSubgroup,
    #[error("Frobenius kernel is not closed (bug)")]
    KernelNotClosed,
    #[error("not a Frobenius couple")]
    NotFrobeniusCouple,

    // characters
    #[error("eigenvalues of the class-sum combination collide after retries")]
    DegenerateSpectrum,
    #[error("numerical tolerance exceeded: {0}")]
    ToleranceExceeded(String),
    #[error("class functions live on different class tables")]
    DimensionMismatch,
    #[error("group order is not of the form p^a q^b")]
    NotPQOrder,

    // cli
    #[error("parse error at position {position}: expected {expected}")]
    ParseError { position: usize, expected: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl FinisError {
    /// True for errors that signal a violated mathematical guarantee
    /// (a bug), as opposed to bad input.
    pub fn is_guarantee_violation(&self) -> bool {
        matches!(
            self,
            FinisError::InternalInconsistency(_)
                | FinisError::KernelNotClosed
                | FinisError::NoConjugatorFound
                | FinisError::DepthExceeded
        )
    }

    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        FinisError::InternalInconsistency(msg.into())
    }
}

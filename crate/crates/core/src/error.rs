use thiserror::Error;

/// Errors raised by group construction and the algorithms built on it.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image array is not a bijection of 0..{degree} (problem at position {position})")]
    NotBijection { position: usize, degree: usize },
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("subgroup of order {order} is not a Sylow {p}-subgroup")]
    NotSylow { order: usize, p: u64 },
    #[error("no Sylow {p}-subgroup of the group lies inside the given subgroup")]
    SylowNotInside { p: u64 },
    #[error("subgroup is not powerfully embedded")]
    NotPowerfullyEmbedded,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("greedy ascent stalled at step {step} before reaching the target subgroup")]
    GreedyStalled { step: usize },
    #[error("prime {0} is not supported by this operation")]
    UnsupportedPrime(u64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("unknown Cartan type '{0}'")]
    UnknownType(String),
    #[error("rank {rank} is not valid for type {family}")]
    BadRank { family: char, rank: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("subgroup must be finite: {0}")]
    InfiniteParabolic(String),
    #[error("ball radius {radius} cannot certify the result; at least {needed} is required")]
    UncertifiedAtRadius { radius: usize, needed: usize },
    #[error("element is not in the poset")]
    ElementNotInPoset,
    #[error("Bruhat interval escapes the ball")]
    IntervalEscapesBall,
    #[error("the two coset characterizations disagree at '{0}': convention bug")]
    ConventionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, WeylError>;

use thiserror::Error;

/// Errors produced by the algebra/module layers.
///
/// Validation errors carry the witnessing basis indices so a failure can be
/// re-checked in isolation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("matrices have different field modes")]
    MixedFieldModes,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("associativity fails at basis triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("grading violation: b{i}*b{j} has a component of grade != grade(b{i})+grade(b{j}) at b{k}")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("unit vector does not act as a two-sided identity (or is not of grade 0)")]
    BadUnit,
    #[error("supplied idempotents are not a complete orthogonal set: {0}")]
    BadIdempotents(String),
    #[error("quiver relation {0} is not admissible: {1}")]
    BadRelation(usize, String),
    #[error("quiver algebra is not finite dimensional within truncation degree {truncation}")]
    NotFiniteDimensional { truncation: usize },
    #[error("Jacobson radical unavailable: field mode outside supported regimes (Q, F_p with p > dim, quiver-presented, or explicit radical basis)")]
    RadicalUnavailable,
    #[error("algebra is not split over its base field: simple with endomorphism ring of dimension {end_dim} > 1")]
    NotSplit { end_dim: usize },
    #[error("not quasi-hereditary: {0}")]
    NotQuasiHereditary(String),
    #[error("grade-0 subalgebra is not quasi-hereditary with the given poset: {0}")]
    A0NotQuasiHereditary(String),
    #[error("quadraticity check requires a tight algebra (A_n = A_1^n fails at grade {grade})")]
    TightnessRequired { grade: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("idempotent is not full: BeB has dimension {got} < {dim}")]
    NotFull { got: usize, dim: usize },
    #[error("idempotent is not homogeneous of grade 0")]
    NotGradeZero,
    #[error("module head is not pure of grade 0")]
    HeadNotPure,
    #[error("poset error: {0}")]
    BadPoset(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the numerical pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not normal: commutator residual {residual:.3e} exceeds {bound:.3e}")]
    NotNormal { residual: f64, bound: f64 },

    #[error("iteration budget exhausted in {0}")]
    NoConvergence(&'static str),

    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("word budget too large: {words} words exceeds cap {cap}")]
    BudgetTooLarge { words: u64, cap: u64 },

    #[error("matrix does not satisfy T = CT*C for the given conjugation (residual {0:.3e})")]
    NotCSymmetricWithRespectToC(f64),

    #[error("matrix does not satisfy T = -KT*K for the given anticonjugation (residual {0:.3e})")]
    NotAntiSymmetricWithRespectToK(f64),

    #[error("anticonjugations require even dimension, got {0}")]
    OddDimension(usize),

    #[error("U·conj(U) is not scalar (defect {0:.3e}); matrix was not irreducible or certificate invalid")]
    NotScalar(f64),

    #[error("alpha = -1 is impossible in odd dimension {0}")]
    OddDimensionSkew(usize),

    #[error("split leaves off-diagonal mass {residual:.3e} above {bound:.3e}")]
    SplitResidualTooLarge { residual: f64, bound: f64 },

    #[error("spectrum of U·conj(U) is not closed under conjugation: {0}")]
    SpectrumNotConjugateSymmetric(String),

    #[error("Q does not match the expected block sparsity pattern: {0}")]
    QStructureViolated(String),

    #[error("T is not block diagonal along the spectral partition: {0}")]
    BlockLeakage(String),

    #[error("refinement stalled: {0}")]
    RefinementStalled(String),

    #[error("matrix is not UET: {0}")]
    NotUet(String),

    #[error("UET status undetermined: {0}")]
    Undetermined(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

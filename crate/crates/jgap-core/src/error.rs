//! Error type shared by all jgap-core modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A distribution or function spec failed validation or parsing.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// A required moment diverges; the bound that needs it is inapplicable.
    #[error("non-finite moment: {0}")]
    NonFiniteMoment(String),

    /// An interval or evaluation point escapes the function's domain, or
    /// the distribution places non-negligible mass outside it.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// Adaptive quadrature could not meet its error target within the
    /// panel budget.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// An operation that requires a convex function was given one whose
    /// convexity flag is not `Convex`.
    #[error("non-convex function: {0}")]
    NonConvex(String),

    /// Density-based operation on a distribution without a density.
    #[error("distribution has no density: {0}")]
    NoDensity(String),

    /// Two discrete distributions do not share the same support points.
    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    /// A discrete probability is zero or negative where positivity is required.
    #[error("zero probability: {0}")]
    ZeroProbability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

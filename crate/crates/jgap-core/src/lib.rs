//! Numerics for the Jensen gap `J(φ, X) = E[φ(X)] − φ(E[X])` of smooth
//! scalar functions under univariate laws: a quadrature/Monte-Carlo oracle
//! for the gap itself, the full suite of refinement bounds (variance
//! sandwich, domain partitioning, Grüss-type second order, Green-kernel
//! representation, fourth-order moment expansion, Jensen–Mercer, tangency
//! optimization, covariance and MGF bounds), and applications to Rényi
//! entropy, reverse-Pinsker divergence inequalities, and Rayleigh-fading
//! ergodic capacity.

pub mod applications;
pub mod bounds;
pub mod distributions;
pub mod error;
pub mod functions;
pub mod oracle;
pub mod quad;
pub mod support;

pub use distributions::{
    CellStats, DistributionSpec, EffectiveLaw, MomentSummary, PartitionSpec,
};
pub use error::{Error, Result};
pub use functions::{builtin_catalog, Convexity, HessianRange, PhiModel};
pub use oracle::GapOracle;
pub use support::SupportInterval;

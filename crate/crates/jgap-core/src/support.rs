//! Intervals on the extended real line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An interval `[lo, hi]` with `lo < hi`; either endpoint may be infinite.
///
/// Degenerate point sets are never represented as intervals; a point mass
/// is a `FiniteDiscrete` distribution instead.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SupportInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidSpec("interval endpoint is NaN".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidSpec(format!(
                "interval requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// The whole real line.
    pub fn real_line() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// `(0, +inf)`, the domain of `-ln`, `x ln x` and `1/x`.
    pub fn positive_half_line() -> Self {
        Self {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Closed containment `lo <= x <= hi`.
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Strict containment `lo < x < hi`.
    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn contains_interval(&self, other: &SupportInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &SupportInterval) -> Result<SupportInterval> {
        SupportInterval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

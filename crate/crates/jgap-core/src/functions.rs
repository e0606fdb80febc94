//! Smooth scalar functions φ with analytic derivative stacks to order 5.
//!
//! Every bound in the suite consumes φ through this interface: pointwise
//! derivatives `deriv(k, x)` for k in 0..=5, interval ranges of φ″ (the
//! `(m, M)` pair), and sup-norms of higher derivatives. The catalog is a
//! fixed set of closed forms; derivative stacks are exact, not
//! finite-differenced or autodiffed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::support::SupportInterval;

/// Probe count for monotonicity detection of the next-higher derivative.
const MONOTONE_PROBES: usize = 129;
/// Grid size for uncertified range scans.
const RANGE_GRID: usize = 4097;
/// Relative widening applied to uncertified (grid-estimated) ranges.
const RANGE_SAFETY: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convexity {
    Convex,
    Concave,
    Neither,
}

/// A smooth scalar function with exact derivatives up to order 5.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiModel {
    /// x ↦ e^{tx}
    ExpScaled { t: f64 },
    /// x ↦ e^{-x}
    NegExp,
    /// y ↦ -ln y on (0, ∞)
    NegLog,
    /// x ↦ ln(1 + ρx) on (-1/ρ, ∞); concave
    Log1pSnr { rho: f64 },
    /// x ↦ x²
    Square,
    /// x ↦ x ln x on (0, ∞)
    XLogX,
    /// x ↦ 1/x on (0, ∞)
    Reciprocal,
    /// Polynomial with coefficients in ascending degree order.
    Poly { coeffs: Vec<f64> },
}

impl PhiModel {
    pub fn exp_scaled(t: f64) -> Self {
        PhiModel::ExpScaled { t }
    }

    pub fn log1p_snr(rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::InvalidSpec(format!("log1p requires rho > 0, got {rho}")));
        }
        Ok(PhiModel::Log1pSnr { rho })
    }

    pub fn poly(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("poly requires finite coefficients".into()));
        }
        Ok(PhiModel::Poly {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn name(&self) -> String {
        match self {
            PhiModel::ExpScaled { t } => format!("exp_scaled(t={t})"),
            PhiModel::NegExp => "neg_exp".into(),
            PhiModel::NegLog => "neg_log".into(),
            PhiModel::Log1pSnr { rho } => format!("log1p(rho={rho})"),
            PhiModel::Square => "square".into(),
            PhiModel::XLogX => "xlogx".into(),
            PhiModel::Reciprocal => "reciprocal".into(),
            PhiModel::Poly { coeffs } => format!("poly(deg={})", coeffs.len().saturating_sub(1)),
        }
    }

    pub fn domain(&self) -> SupportInterval {
        match self {
            PhiModel::ExpScaled { .. }
            | PhiModel::NegExp
            | PhiModel::Square
            | PhiModel::Poly { .. } => SupportInterval::real_line(),
            PhiModel::NegLog | PhiModel::XLogX | PhiModel::Reciprocal => {
                SupportInterval::positive_half_line()
            }
            PhiModel::Log1pSnr { rho } => SupportInterval {
                lo: -1.0 / rho,
                hi: f64::INFINITY,
            },
        }
    }

    pub fn convexity(&self) -> Convexity {
        match self {
            PhiModel::ExpScaled { .. }
            | PhiModel::NegExp
            | PhiModel::NegLog
            | PhiModel::Square
            | PhiModel::XLogX
            | PhiModel::Reciprocal => Convexity::Convex,
            PhiModel::Log1pSnr { .. } => Convexity::Concave,
            PhiModel::Poly { coeffs } => match coeffs.len() {
                0..=2 => Convexity::Convex, // affine
                3 => {
                    if coeffs[2] >= 0.0 {
                        Convexity::Convex
                    } else {
                        Convexity::Concave
                    }
                }
                _ => Convexity::Neither,
            },
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.deriv(0, x)
    }

    /// φ^{(k)}(x) for k in 0..=5.
    pub fn deriv(&self, k: usize, x: f64) -> f64 {
        debug_assert!(k <= 5, "derivative order {k} out of range");
        match self {
            PhiModel::ExpScaled { t } => t.powi(k as i32) * (t * x).exp(),
            PhiModel::NegExp => {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * (-x).exp()
            }
            PhiModel::NegLog => {
                // φ = -ln y, φ^{(k)} = (-1)^k (k-1)! y^{-k} for k >= 1
                if k == 0 {
                    -x.ln()
                } else {
                    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                    sign * factorial(k - 1) / x.powi(k as i32)
                }
            }
            PhiModel::Log1pSnr { rho } => {
                // φ^{(k)} = (-1)^{k-1} (k-1)! ρ^k (1+ρx)^{-k} for k >= 1
                if k == 0 {
                    (rho * x).ln_1p()
                } else {
                    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
                    sign * factorial(k - 1) * rho.powi(k as i32) / (1.0 + rho * x).powi(k as i32)
                }
            }
            PhiModel::Square => match k {
                0 => x * x,
                1 => 2.0 * x,
                2 => 2.0,
                _ => 0.0,
            },
            PhiModel::XLogX => match k {
                0 => {
                    if x == 0.0 {
                        0.0
                    } else {
                        x * x.ln()
                    }
                }
                1 => x.ln() + 1.0,
                // φ^{(k)} = (-1)^k (k-2)! x^{1-k} for k >= 2
                k => {
                    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                    sign * factorial(k - 2) / x.powi(k as i32 - 1)
                }
            },
            PhiModel::Reciprocal => {
                // φ^{(k)} = (-1)^k k! x^{-(k+1)}
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * factorial(k) / x.powi(k as i32 + 1)
            }
            PhiModel::Poly { coeffs } => poly_deriv(coeffs, k, x),
        }
    }

    /// Parse a CLI function spec such as `neg_exp`, `exp_scaled:t=1`,
    /// `log1p:rho=10` or `square`. Parameters accept both `name=value`
    /// and bare `value` forms.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (spec, None),
        };
        let param = |key: &str| -> Result<f64> {
            let raw = arg.ok_or_else(|| {
                Error::InvalidSpec(format!("{head} requires a parameter, e.g. {head}:{key}=1"))
            })?;
            let value = raw.strip_prefix(key).and_then(|r| r.strip_prefix('=')).unwrap_or(raw);
            value
                .parse::<f64>()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse {head} parameter {raw:?}")))
        };
        match head {
            "neg_exp" => Ok(PhiModel::NegExp),
            "neg_log" => Ok(PhiModel::NegLog),
            "square" => Ok(PhiModel::Square),
            "xlogx" => Ok(PhiModel::XLogX),
            "reciprocal" => Ok(PhiModel::Reciprocal),
            "exp_scaled" => {
                let t = param("t")?;
                if !t.is_finite() {
                    return Err(Error::InvalidSpec("exp_scaled requires finite t".into()));
                }
                Ok(PhiModel::exp_scaled(t))
            }
            "log1p" => PhiModel::log1p_snr(param("rho")?),
            other => Err(Error::InvalidSpec(format!("unknown function {other:?}"))),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn poly_deriv(coeffs: &[f64], k: usize, x: f64) -> f64 {
    if k >= coeffs.len() {
        return 0.0;
    }
    // Horner on the k-times differentiated coefficients.
    let mut acc = 0.0;
    for j in (k..coeffs.len()).rev() {
        let mut c = coeffs[j];
        for i in 0..k {
            c *= (j - i) as f64;
        }
        acc = acc * x + c;
    }
    acc
}

/// The built-in catalog with representative parameters. Used by the CLI for
/// name resolution and by property tests as the standard φ population.
pub fn builtin_catalog() -> Vec<PhiModel> {
    vec![
        PhiModel::exp_scaled(1.0),
        PhiModel::NegExp,
        PhiModel::NegLog,
        PhiModel::Log1pSnr { rho: 1.0 },
        PhiModel::Square,
        PhiModel::XLogX,
        PhiModel::Reciprocal,
    ]
}

/// Inf and sup of φ″ over an interval.
///
/// `certified` is true when φ″ was recognized as monotone (via the sign of
/// φ‴ at probe points) and the endpoints are therefore exact; otherwise the
/// range is a safety-widened grid estimate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HessianRange {
    /// m = inf φ″
    pub lo: f64,
    /// M = sup φ″
    pub hi: f64,
    pub certified: bool,
}

/// Range of φ^{(k)} over an interval; the generic engine behind
/// [`hessian_range`] and [`deriv_sup_norm`].
#[derive(Clone, Copy, Debug)]
pub struct DerivRange {
    pub lo: f64,
    pub hi: f64,
    pub certified: bool,
}

fn check_interval(phi: &PhiModel, interval: &SupportInterval) -> Result<()> {
    if !interval.is_bounded() {
        return Err(Error::DomainMismatch(format!(
            "range query needs a bounded interval, got [{}, {}]",
            interval.lo, interval.hi
        )));
    }
    let dom = phi.domain();
    if !dom.contains_interval(interval) {
        return Err(Error::DomainMismatch(format!(
            "interval [{}, {}] exceeds domain of {} ([{}, {}])",
            interval.lo,
            interval.hi,
            phi.name(),
            dom.lo,
            dom.hi
        )));
    }
    Ok(())
}

/// Inf/sup of φ^{(k)} over `interval`, k in 0..=4 (order k+1 must exist for
/// the monotonicity probe).
pub fn deriv_range(phi: &PhiModel, k: usize, interval: &SupportInterval) -> Result<DerivRange> {
    check_interval(phi, interval)?;
    let (a, b) = (interval.lo, interval.hi);

    // Monotone detection: sign of the next derivative at probe points.
    let mut pos = false;
    let mut neg = false;
    let mut scale = 0.0f64;
    for i in 0..MONOTONE_PROBES {
        let x = a + (b - a) * (i as f64 + 0.5) / MONOTONE_PROBES as f64;
        let d = phi.deriv(k + 1, x);
        scale = scale.max(d.abs());
        if d > 0.0 {
            pos = true;
        } else if d < 0.0 {
            neg = true;
        }
    }
    if !(pos && neg) {
        let fa = phi.deriv(k, a);
        let fb = phi.deriv(k, b);
        return Ok(DerivRange {
            lo: fa.min(fb),
            hi: fa.max(fb),
            certified: true,
        });
    }

    // Mixed signs: grid scan, refined by bisecting the sign changes of the
    // next derivative to pin interior extrema, then safety-widened.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut prev_x = a;
    let mut prev_d = phi.deriv(k + 1, a);
    for i in 0..RANGE_GRID {
        let x = a + (b - a) * i as f64 / (RANGE_GRID - 1) as f64;
        let v = phi.deriv(k, x);
        lo = lo.min(v);
        hi = hi.max(v);
        let d = phi.deriv(k + 1, x);
        if i > 0 && prev_d * d < 0.0 {
            let root = bisect_sign_change(|t| phi.deriv(k + 1, t), prev_x, x);
            let v = phi.deriv(k, root);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        prev_x = x;
        prev_d = d;
    }
    let pad = RANGE_SAFETY * lo.abs().max(hi.abs()).max(scale * (b - a));
    Ok(DerivRange {
        lo: lo - pad,
        hi: hi + pad,
        certified: false,
    })
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// The `(m, M)` pair with m ≤ φ″ ≤ M over an interval.
pub fn hessian_range(phi: &PhiModel, interval: &SupportInterval) -> Result<HessianRange> {
    let r = deriv_range(phi, 2, interval)?;
    Ok(HessianRange {
        lo: r.lo,
        hi: r.hi,
        certified: r.certified,
    })
}

/// Certified flag plus value of `sup |φ^{(k)}|` over an interval.
#[derive(Clone, Copy, Debug)]
pub struct SupNorm {
    pub value: f64,
    pub certified: bool,
}

/// `sup |φ^{(k)}|` over an interval, k in {3, 5} for the remainder bounds
/// (any k in 0..=4 is accepted; k = 5 uses a grid-only scan since order 6
/// is outside the derivative stack).
pub fn deriv_sup_norm(phi: &PhiModel, k: usize, interval: &SupportInterval) -> Result<SupNorm> {
    if k == 5 {
        check_interval(phi, interval)?;
        // No order-6 derivative for the monotonicity probe; for the whole
        // catalog |φ⁽⁵⁾| is monotone, so endpoint evaluation with a grid
        // sweep as backstop is exact in practice but reported uncertified
        // unless the grid agrees with an endpoint.
        let (a, b) = (interval.lo, interval.hi);
        let mut hi = phi.deriv(5, a).abs().max(phi.deriv(5, b).abs());
        let endpoint_hi = hi;
        for i in 0..RANGE_GRID {
            let x = a + (b - a) * i as f64 / (RANGE_GRID - 1) as f64;
            hi = hi.max(phi.deriv(5, x).abs());
        }
        let certified = hi == endpoint_hi;
        let value = if certified { hi } else { hi * (1.0 + RANGE_SAFETY) };
        return Ok(SupNorm { value, certified });
    }
    let r = deriv_range(phi, k, interval)?;
    Ok(SupNorm {
        value: r.lo.abs().max(r.hi.abs()),
        certified: r.certified,
    })
}

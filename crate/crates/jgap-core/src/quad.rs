//! Adaptive Gauss–Legendre quadrature.
//!
//! Panels are estimated with paired 7- and 15-point Gauss–Legendre rules;
//! the difference of the two rules is the panel error estimate. Panels are
//! bisected worst-first until the summed error estimate meets
//! `max(rel_tol * |integral|, abs_tol)` or the panel budget is exhausted.
//!
//! Integrands with known kinks (absolute moments around the mean, Green
//! kernels at atoms) are handled by forcing panel boundaries at the kink
//! locations via [`QuadOptions::split_points`]; Gauss nodes are interior,
//! so endpoint singularities are never evaluated directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default relative error target.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Default absolute error floor.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Default subdivision budget.
pub const DEFAULT_MAX_PANELS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Interior points forced to be panel boundaries (kinks, atoms, cuts).
    pub split_points: Vec<f64>,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_panels: DEFAULT_MAX_PANELS,
            split_points: Vec::new(),
        }
    }
}

impl QuadOptions {
    pub fn with_splits(splits: &[f64]) -> Self {
        Self {
            split_points: splits.to_vec(),
            ..Self::default()
        }
    }

    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

/// Value and certified error estimate of one integration run.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1],
/// found by Newton iteration on the Legendre recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pd(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn rule_low() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(7))
}

fn rule_high() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(15))
}

fn apply_rule<F: Fn(f64) -> f64>(f: &F, rule: &[(f64, f64)], a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl Panel {
    fn evaluate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Self> {
        let low = apply_rule(f, rule_low(), a, b);
        let high = apply_rule(f, rule_high(), a, b);
        if !high.is_finite() || !low.is_finite() {
            return Err(Error::QuadratureFailure(format!(
                "non-finite integrand on panel [{a}, {b}]"
            )));
        }
        Ok(Self {
            a,
            b,
            value: high,
            err: (high - low).abs(),
        })
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(Ordering::Equal)
    }
}

/// Integrate `f` over `[a, b]` adaptively. Requires `a <= b` and finite bounds.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadOutcome> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::QuadratureFailure(format!(
            "inverted bounds [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadOutcome {
            value: 0.0,
            abs_error: 0.0,
            panels: 0,
        });
    }

    let mut boundaries: Vec<f64> = vec![a];
    let mut splits: Vec<f64> = opts
        .split_points
        .iter()
        .copied()
        .filter(|s| s.is_finite() && *s > a && *s < b)
        .collect();
    splits.sort_by(|x, y| x.partial_cmp(y).unwrap());
    splits.dedup();
    boundaries.extend(splits);
    boundaries.push(b);

    let mut heap = BinaryHeap::new();
    let mut total_value = 0.0;
    let mut total_err = 0.0;
    for w in boundaries.windows(2) {
        let p = Panel::evaluate(&f, w[0], w[1])?;
        total_value += p.value;
        total_err += p.err;
        heap.push(p);
    }

    // Error estimates of panels too narrow to bisect further; counted in the
    // reported error but not against the convergence target.
    let mut stuck_err = 0.0;

    loop {
        let target = (opts.rel_tol * total_value.abs()).max(opts.abs_tol);
        if total_err <= target {
            break;
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {total_err:.3e} above target {target:.3e} after {} panels",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty here");
        if worst.err <= 0.0 {
            // Panel errors are all zero; remaining total is summation drift.
            heap.push(worst);
            total_err = 0.0;
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel narrower than f64 resolution: freeze it.
            total_err -= worst.err;
            stuck_err += worst.err;
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        total_value -= worst.value;
        total_err -= worst.err;
        let left = Panel::evaluate(&f, worst.a, mid)?;
        let right = Panel::evaluate(&f, mid, worst.b)?;
        total_value += left.value + right.value;
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }

    Ok(QuadOutcome {
        value: total_value,
        abs_error: total_err.max(0.0) + stuck_err,
        panels: heap.len(),
    })
}

/// Integrate between possibly inverted bounds: returns `-∫` when `a > b`.
pub fn integrate_signed<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadOutcome> {
    if a <= b {
        integrate(f, a, b, opts)
    } else {
        let out = integrate(f, b, a, opts)?;
        Ok(QuadOutcome {
            value: -out.value,
            ..out
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_rules_are_consistent() {
        for n in [7usize, 15] {
            let rule = gauss_legendre(n);
            let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert_abs_diff_eq!(wsum, 2.0, epsilon = 1e-14);
            // Exact for polynomials of degree 2n-1.
            let deg = 2 * n - 1;
            let val: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = 2.0 / deg as f64; // ∫_{-1}^{1} x^{deg-1} dx, deg-1 even
            assert_abs_diff_eq!(val, exact, epsilon = 1e-13);
        }
    }

    #[test]
    fn polynomial_is_exact_in_one_panel() {
        let out = integrate(|x| 7.0 * x.powi(4) - 3.0 * x + 1.0, -2.0, 3.0, &QuadOptions::default())
            .unwrap();
        let exact = 7.0 / 5.0 * (3.0f64.powi(5) + 2.0f64.powi(5)) - 3.0 / 2.0 * (9.0 - 4.0) + 5.0;
        assert_abs_diff_eq!(out.value, exact, epsilon = 1e-10);
        assert_eq!(out.panels, 1);
    }

    #[test]
    fn exp_on_interval() {
        let out = integrate(|x| (-x).exp(), 0.0, 2.0, &QuadOptions::default()).unwrap();
        assert_abs_diff_eq!(out.value, 1.0 - (-2.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn kink_resolved_by_split() {
        let f = |x: f64| (x - 1.0).abs();
        let plain = integrate(f, 0.0, 2.0, &QuadOptions::default()).unwrap();
        let split = integrate(f, 0.0, 2.0, &QuadOptions::with_splits(&[1.0])).unwrap();
        assert_abs_diff_eq!(split.value, 1.0, epsilon = 1e-14);
        assert!(split.panels <= 2);
        assert_abs_diff_eq!(plain.value, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // 1/sqrt(x) on (0, 1]: nodes are interior, so the endpoint is never hit.
        let out = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &QuadOptions::default());
        let out = out.unwrap();
        assert_abs_diff_eq!(out.value, 2.0, epsilon = 1e-6);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let opts = QuadOptions {
            max_panels: 4,
            ..QuadOptions::default()
        };
        let res = integrate(|x: f64| (50.0 * x).sin() / (x + 1e-3), 0.0, 30.0, &opts);
        assert!(matches!(res, Err(Error::QuadratureFailure(_))));
    }

    #[test]
    fn signed_orientation() {
        let fwd = integrate_signed(|x| x, 0.0, 1.0, &QuadOptions::default()).unwrap();
        let rev = integrate_signed(|x| x, 1.0, 0.0, &QuadOptions::default()).unwrap();
        assert_abs_diff_eq!(fwd.value, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(rev.value, -0.5, epsilon = 1e-14);
    }
}

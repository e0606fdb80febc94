//! Refinement bounds on the Jensen gap.
//!
//! Every operation is pure and returns a [`BoundReport`] (or a small typed
//! record) whose `target` says whether the numbers bound the gap
//! J(φ, X) = E[φ(X)] − φ(μ) or the expectation E[φ(X)] itself — the two
//! conventions are both used downstream and silently mixing them is the
//! classic off-by-φ(μ) mistake.
//!
//! All interval work happens on the effective window of
//! [`EffectiveLaw::for_phi`], so a bound and the oracle it is checked
//! against always describe the same (window-conditioned) law. Curvature
//! sandwiches hold for any law with m ≤ φ″ ≤ M on the window, which covers
//! concave φ with the original orientation preserved (m, M are then
//! negative).

use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionSpec, EffectiveLaw, MomentSummary, PartitionSpec};
use crate::error::{Error, Result};
use crate::functions::{self, Convexity, PhiModel};
use crate::quad::{self, QuadOptions};
use crate::support::SupportInterval;

/// Grid size for locating `max K` in the Green–Grüss refinement.
const KERNEL_GRID: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTarget {
    /// The report bounds/estimates J(φ, X).
    Gap,
    /// The report bounds/estimates E[φ(X)].
    Expectation,
}

/// Uniform result envelope for all bound operations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: String,
    pub target: BoundTarget,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub estimate: Option<f64>,
    /// When present together with `estimate`, asserts |truth − estimate| ≤ error_radius.
    pub error_radius: Option<f64>,
    /// False when any ingredient came from an uncertified grid scan or a
    /// truncated window whose clipped mass is not accounted analytically.
    pub certified: bool,
    /// False for condition-gated bounds whose hypothesis does not hold.
    pub applicable: bool,
    /// Moment and range values that went into the bound.
    pub inputs: Vec<(String, f64)>,
}

impl BoundReport {
    fn new(method: &str, target: BoundTarget) -> Self {
        Self {
            method: method.to_string(),
            target,
            lower: None,
            upper: None,
            estimate: None,
            error_radius: None,
            certified: true,
            applicable: true,
            inputs: Vec::new(),
        }
    }

    fn input(mut self, key: &str, value: f64) -> Self {
        self.inputs.push((key.to_string(), value));
        self
    }

    /// Internal consistency: lower ≤ upper, radius ≥ 0.
    pub fn is_consistent(&self) -> bool {
        let order_ok = match (self.lower, self.upper) {
            (Some(l), Some(u)) => l <= u,
            _ => true,
        };
        let radius_ok = self.error_radius.is_none_or(|r| r >= 0.0);
        order_ok && radius_ok
    }
}

fn require_convex(phi: &PhiModel, what: &str) -> Result<()> {
    if phi.convexity() != Convexity::Convex {
        return Err(Error::NonConvex(format!(
            "{what} requires a convex function, got {}",
            phi.name()
        )));
    }
    Ok(())
}

/// Interior kink locations of the Green kernel: the mean plus, for
/// discrete/empirical laws, every atom. For truncated windows, a geometric
/// ladder of boundaries walks into each edge: the kernel of a conditioned
/// law carries edge structure at the scale of the inset quantile, which
/// would otherwise fall between the Gauss nodes of one wide panel and never
/// trigger refinement.
fn kernel_splits(law: &EffectiveLaw<'_>, mu: f64) -> Vec<f64> {
    let mut splits = vec![mu];
    match law.dist {
        DistributionSpec::FiniteDiscrete { points } => {
            splits.extend(points.iter().map(|&(v, _)| v));
        }
        DistributionSpec::Empirical { samples } => splits.extend(samples.iter().copied()),
        _ => {}
    }
    if law.truncated {
        let width = law.hi - law.lo;
        let mut offset = 1e-13;
        while offset < 0.3 {
            splits.push(law.lo + offset * width);
            splits.push(law.hi - offset * width);
            offset *= 10.0;
        }
    }
    splits
}

// ---------------------------------------------------------------------------
// Variance sandwich and partitioned refinement.
// ---------------------------------------------------------------------------

/// Two-sided variance bound: m σ²/2 ≤ J(φ, X) ≤ M σ²/2 with m ≤ φ″ ≤ M on
/// the effective window.
pub fn variance_sandwich(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let sigma2 = law.variance();
    let mut rep = BoundReport::new("variance_sandwich", BoundTarget::Gap)
        .input("mu", mu)
        .input("sigma2", sigma2);
    if law.is_degenerate() || sigma2 == 0.0 {
        rep.lower = Some(0.0);
        rep.upper = Some(0.0);
        return Ok(rep);
    }
    let range = functions::hessian_range(phi, &law.interval()?)?;
    rep.lower = Some(0.5 * range.lo * sigma2);
    rep.upper = Some(0.5 * range.hi * sigma2);
    rep.certified = range.certified;
    rep = rep.input("m", range.lo).input("M", range.hi);
    Ok(rep)
}

/// Partitioned variance bound: per-cell curvature ranges plus the
/// between-cell term Σ p_k (φ(μ_k) − φ(μ)). Cells below the empty-cell mass
/// threshold contribute zero.
pub fn partitioned_sandwich(
    phi: &PhiModel,
    dist: &DistributionSpec,
    part: &PartitionSpec,
) -> Result<BoundReport> {
    part.validate_for(dist)?;
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let mut rep = BoundReport::new("partitioned_sandwich", BoundTarget::Gap)
        .input("mu", mu)
        .input("cells", (part.cut_points.len() + 1) as f64);
    if law.is_degenerate() || law.variance() == 0.0 {
        rep.lower = Some(0.0);
        rep.upper = Some(0.0);
        return Ok(rep);
    }
    let phi_mu = phi.eval(mu);
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut certified = true;
    for (a, b, cell) in law.cells(&part.cut_points) {
        let (Some(mean_k), Some(var_k)) = (cell.mean, cell.variance) else {
            continue; // empty cell contributes zero
        };
        let between = phi.eval(mean_k) - phi_mu;
        let range = functions::hessian_range(phi, &SupportInterval::new(a, b)?)?;
        certified &= range.certified;
        lower += cell.mass * (0.5 * range.lo * var_k + between);
        upper += cell.mass * (0.5 * range.hi * var_k + between);
    }
    rep.lower = Some(lower);
    rep.upper = Some(upper);
    rep.certified = certified;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Grüss-type second-order refinement.
// ---------------------------------------------------------------------------

/// Second-order estimate φ″(μ)σ²/2 of the gap with the third-order error
/// radius ‖φ‴‖∞ E|X−μ|³ / 6.
pub fn gruss_second_order(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let m = law.moments()?;
    let mut rep = BoundReport::new("gruss_second_order", BoundTarget::Gap)
        .input("mu", m.mu)
        .input("sigma2", m.sigma2)
        .input("abs_central3", m.abs_central3);
    if law.is_degenerate() {
        rep.estimate = Some(0.0);
        rep.error_radius = Some(0.0);
        return Ok(rep);
    }
    let estimate = 0.5 * phi.deriv(2, m.mu) * m.sigma2;
    let sup3 = functions::deriv_sup_norm(phi, 3, &law.interval()?)?;
    rep.estimate = Some(estimate);
    rep.error_radius = Some(sup3.value * m.abs_central3 / 6.0);
    rep.certified = sup3.certified;
    rep = rep.input("sup_phi3", sup3.value);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Green-kernel representation.
// ---------------------------------------------------------------------------

/// The Green kernel K(t) = (E|X−t| − |μ−t|)/2 of the raw law. Nonnegative
/// everywhere, zero outside the support hull. Computed in the one-sided
/// form E[(t−X)1{X≤t}] (below μ) / E[(X−t)1{X>t}] (above μ), which is
/// algebraically identical but free of the catastrophic cancellation the
/// two-term difference suffers far from the mean.
pub fn green_kernel(dist: &DistributionSpec, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidSpec(format!("t must be finite, got {t}")));
    }
    let mu = dist.mean();
    if !mu.is_finite() {
        return Err(Error::NonFiniteMoment("mean diverges".into()));
    }
    Ok(if t <= mu {
        t * dist.cdf(t) - dist.partial_m1(t)
    } else {
        (mu - dist.partial_m1(t)) - t * (1.0 - dist.cdf(t))
    })
}

/// The gap as ∫ φ″(t) K(t) dt over the effective window, K taken from the
/// window-conditioned law; the quadrature error is the report's radius.
pub fn green_gap(phi: &PhiModel, dist: &DistributionSpec, tol: f64) -> Result<BoundReport> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidSpec(format!(
            "tolerance must lie in (0, 1e-3], got {tol}"
        )));
    }
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let mut rep = BoundReport::new("green_gap", BoundTarget::Gap).input("mu", mu);
    if law.is_degenerate() {
        rep.estimate = Some(0.0);
        rep.error_radius = Some(0.0);
        return Ok(rep);
    }
    let opts = QuadOptions {
        rel_tol: 0.0,
        abs_tol: 0.5 * tol,
        split_points: kernel_splits(&law, mu),
        ..QuadOptions::default()
    };
    let out = quad::integrate(
        |t| phi.deriv(2, t) * law.green_kernel_at(t),
        law.lo,
        law.hi,
        &opts,
    )?;
    rep.estimate = Some(out.value);
    rep.error_radius = Some(out.abs_error);
    Ok(rep)
}

/// Grüss refinement of the Green representation: the gap is approximated by
/// (b−a)·K̄·φ″̄ and the covariance remainder is bounded by
/// (b−a)/4 · (max K − min K)(M − m), with min K = 0 (attained at the
/// window edges).
pub fn green_gruss_refinement(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let mut rep = BoundReport::new("green_gruss", BoundTarget::Gap).input("mu", mu);
    if law.is_degenerate() || law.variance() == 0.0 {
        rep.estimate = Some(0.0);
        rep.error_radius = Some(0.0);
        return Ok(rep);
    }
    let (a, b) = (law.lo, law.hi);
    let width = b - a;
    let kernel = |t: f64| law.green_kernel_at(t);
    let range = functions::hessian_range(phi, &law.interval()?)?;

    let k_integral = quad::integrate(
        kernel,
        a,
        b,
        &QuadOptions {
            split_points: kernel_splits(&law, mu),
            ..QuadOptions::default()
        },
    )?;
    let k_bar = k_integral.value / width;
    // Mean curvature has the closed form (φ'(b) − φ'(a))/(b − a).
    let phi2_bar = (phi.deriv(1, b) - phi.deriv(1, a)) / width;

    let mut k_max = kernel(mu);
    for i in 0..=KERNEL_GRID {
        let t = a + width * i as f64 / KERNEL_GRID as f64;
        k_max = k_max.max(kernel(t));
    }

    rep.estimate = Some(width * k_bar * phi2_bar);
    rep.error_radius = Some(0.25 * width * k_max * (range.hi - range.lo));
    rep.certified = range.certified;
    rep = rep
        .input("k_bar", k_bar)
        .input("k_max", k_max)
        .input("m", range.lo)
        .input("M", range.hi);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Chebysev functional and Grüss / pre-Grüss bounds.
// ---------------------------------------------------------------------------

/// T(f, g), the Grüss range bound and the pre-Grüss variance bound for two
/// integrands over an interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebysevGruss {
    pub t_fg: f64,
    /// (Γ−γ)(Δ−δ)/4 from range estimation.
    pub gruss_bound: f64,
    /// √(T(f,f) T(g,g)).
    pub pre_gruss_bound: f64,
    pub certified: bool,
}

/// Chebysev functional T(f,g) = avg(fg) − avg(f)avg(g) over `interval`,
/// with both the Grüss and the pre-Grüss bound on |T|.
pub fn chebysev_gruss(
    f: &PhiModel,
    g: &PhiModel,
    interval: &SupportInterval,
) -> Result<ChebysevGruss> {
    if !interval.is_bounded() {
        return Err(Error::DomainMismatch(
            "Chebysev functional needs a bounded interval".into(),
        ));
    }
    let (a, b) = (interval.lo, interval.hi);
    let width = b - a;
    let opts = QuadOptions::default();
    let avg = |h: &PhiModel| -> Result<f64> {
        Ok(quad::integrate(|x| h.eval(x), a, b, &opts)?.value / width)
    };
    let avg_f = avg(f)?;
    let avg_g = avg(g)?;
    // Centered integrands: T(f,f) stays exactly nonnegative instead of
    // picking up avg(f²) − avg(f)² cancellation noise.
    let t_fg = quad::integrate(
        |x| (f.eval(x) - avg_f) * (g.eval(x) - avg_g),
        a,
        b,
        &opts,
    )?
    .value
        / width;
    let t_ff = quad::integrate(|x| (f.eval(x) - avg_f).powi(2), a, b, &opts)?.value / width;
    let t_gg = quad::integrate(|x| (g.eval(x) - avg_g).powi(2), a, b, &opts)?.value / width;
    let t_ff = t_ff.max(0.0);
    let t_gg = t_gg.max(0.0);

    let rf = functions::deriv_range(f, 0, interval)?;
    let rg = functions::deriv_range(g, 0, interval)?;

    Ok(ChebysevGruss {
        t_fg,
        gruss_bound: 0.25 * (rf.hi - rf.lo) * (rg.hi - rg.lo),
        pre_gruss_bound: (t_ff * t_gg).sqrt(),
        certified: rf.certified && rg.certified,
    })
}

// ---------------------------------------------------------------------------
// Fourth-order moment expansion.
// ---------------------------------------------------------------------------

/// The four expansion terms of E[φ(X)] around μ:
/// [φ(μ), φ″(μ)σ²/2, φ‴(μ)σ³γ₃/6, φ⁗(μ)σ⁴γ₄/24].
pub fn fourth_order_terms(phi: &PhiModel, m: &MomentSummary) -> [f64; 4] {
    [
        phi.eval(m.mu),
        0.5 * phi.deriv(2, m.mu) * m.sigma2,
        phi.deriv(3, m.mu) * m.central3() / 6.0,
        phi.deriv(4, m.mu) * m.central4() / 24.0,
    ]
}

/// Fourth-order estimate of E[φ(X)] with the fifth-order remainder radius
/// ‖φ⁽⁵⁾‖∞ E|X−μ|⁵ / 120.
pub fn fourth_order(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let m = law.moments()?;
    let terms = fourth_order_terms(phi, &m);
    let mut rep = BoundReport::new("fourth_order", BoundTarget::Expectation)
        .input("mu", m.mu)
        .input("sigma2", m.sigma2)
        .input("gamma3", m.gamma3)
        .input("gamma4", m.gamma4)
        .input("abs_central5", m.abs_central5);
    rep.estimate = Some(terms.iter().sum());
    if law.is_degenerate() || m.sigma2 == 0.0 {
        rep.error_radius = Some(0.0);
        return Ok(rep);
    }
    let sup5 = functions::deriv_sup_norm(phi, 5, &law.interval()?)?;
    rep.error_radius = Some(sup5.value * m.abs_central5 / 120.0);
    rep.certified = sup5.certified;
    rep = rep.input("sup_phi5", sup5.value);
    Ok(rep)
}

/// Signed third-order lower bound on E[φ(X)], applicable when
/// φ‴(μ)γ₃ ≥ 0 and φ⁗(μ)γ₄ ≥ 0; otherwise an inapplicable-marked report.
pub fn signed_refinement(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let m = law.moments()?;
    let skew_term_sign = phi.deriv(3, m.mu) * m.gamma3;
    let kurt_term_sign = phi.deriv(4, m.mu) * m.gamma4;
    let mut rep = BoundReport::new("signed_refinement", BoundTarget::Expectation)
        .input("mu", m.mu)
        .input("sigma2", m.sigma2)
        .input("gamma3", m.gamma3)
        .input("phi3_gamma3", skew_term_sign)
        .input("phi4_gamma4", kurt_term_sign);
    if skew_term_sign < 0.0 || kurt_term_sign < 0.0 {
        rep.applicable = false;
        return Ok(rep);
    }
    let terms = fourth_order_terms(phi, &m);
    rep.lower = Some(terms[0] + terms[1] + terms[2]);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Tangency bounds and Jensen–Mercer.
// ---------------------------------------------------------------------------

/// Affine tangent lower bound h(c) = φ(c) + φ′(c)(μ − c) on E[φ(X)] for
/// convex φ.
pub fn tangent_bound(phi: &PhiModel, dist: &DistributionSpec, c: f64) -> Result<f64> {
    require_convex(phi, "tangent_bound")?;
    let law = EffectiveLaw::for_phi(dist, phi)?;
    if !phi.domain().contains_interior(c) && !phi.domain().contains(c) {
        return Err(Error::DomainMismatch(format!(
            "tangency point {c} is outside the domain of {}",
            phi.name()
        )));
    }
    let h = phi.eval(c) + phi.deriv(1, c) * (law.mean() - c);
    if !h.is_finite() {
        return Err(Error::DomainMismatch(format!(
            "{} has no finite tangent at {c}",
            phi.name()
        )));
    }
    Ok(h)
}

/// Result of maximizing the tangency bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangencyOptimum {
    pub c_star: f64,
    pub bound: f64,
}

/// Maximize the tangent lower bound over the effective window by
/// golden-section search. Without `strong_m` the objective is h(c) and the
/// maximizer of a strictly convex φ is the mean; with `strong_m = m` the
/// objective gains the strong-convexity correction m(σ² + (μ−c)²)/2.
pub fn optimize_tangency(
    phi: &PhiModel,
    dist: &DistributionSpec,
    strong_m: Option<f64>,
) -> Result<TangencyOptimum> {
    require_convex(phi, "optimize_tangency")?;
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let sigma2 = law.variance();
    let objective = |c: f64| {
        let h = phi.eval(c) + phi.deriv(1, c) * (mu - c);
        match strong_m {
            Some(m) => h + 0.5 * m * (sigma2 + (mu - c) * (mu - c)),
            None => h,
        }
    };
    if law.is_degenerate() {
        return Ok(TangencyOptimum {
            c_star: mu,
            bound: objective(mu),
        });
    }
    let (mut a, mut b) = (law.lo, law.hi);
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective(c);
    let mut fd = objective(d);
    for _ in 0..200 {
        if b - a < 1e-10 * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    let c_star = 0.5 * (a + b);
    Ok(TangencyOptimum {
        c_star,
        bound: objective(c_star),
    })
}

/// Outcome of a Jensen–Mercer check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MercerCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Jensen–Mercer: φ(a + b − Σwᵢxᵢ) ≤ φ(a) + φ(b) − Σwᵢφ(xᵢ) for convex φ
/// on [a, b].
pub fn jensen_mercer(
    phi: &PhiModel,
    a: f64,
    b: f64,
    points: &[f64],
    weights: &[f64],
) -> Result<MercerCheck> {
    require_convex(phi, "jensen_mercer")?;
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidSpec(format!("requires finite a < b, got [{a}, {b}]")));
    }
    if points.len() != weights.len() || points.is_empty() {
        return Err(Error::InvalidSpec(
            "points and weights must be equal-length and non-empty".into(),
        ));
    }
    if weights.iter().any(|&w| w < 0.0) {
        return Err(Error::InvalidSpec("weights must be nonnegative".into()));
    }
    let wsum: f64 = weights.iter().sum();
    if (wsum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidSpec(format!(
            "weights must sum to 1, got {wsum}"
        )));
    }
    for &x in points {
        if x < a || x > b {
            return Err(Error::DomainMismatch(format!(
                "point {x} leaves the interval [{a}, {b}]"
            )));
        }
    }
    if !(phi.eval(a).is_finite() && phi.eval(b).is_finite()) {
        return Err(Error::DomainMismatch(format!(
            "{} is not finite on the endpoints of [{a}, {b}]",
            phi.name()
        )));
    }
    let weighted: f64 = points.iter().zip(weights).map(|(&x, &w)| w * x).sum();
    let lhs = phi.eval(a + b - weighted);
    let rhs = phi.eval(a) + phi.eval(b)
        - points
            .iter()
            .zip(weights)
            .map(|(&x, &w)| w * phi.eval(x))
            .sum::<f64>();
    Ok(MercerCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    })
}

// ---------------------------------------------------------------------------
// Covariance and MGF bounds.
// ---------------------------------------------------------------------------

/// Covariance bound for convex φ: inf(φ″)σ²/2 ≤ J(φ, X) ≤ Cov(X, φ′(X)).
pub fn covariance_bound(phi: &PhiModel, dist: &DistributionSpec) -> Result<BoundReport> {
    require_convex(phi, "covariance_bound")?;
    let law = EffectiveLaw::for_phi(dist, phi)?;
    let mu = law.mean();
    let sigma2 = law.variance();
    let mut rep = BoundReport::new("covariance_bound", BoundTarget::Gap)
        .input("mu", mu)
        .input("sigma2", sigma2);
    if law.is_degenerate() || sigma2 == 0.0 {
        rep.lower = Some(0.0);
        rep.upper = Some(0.0);
        return Ok(rep);
    }
    let range = functions::hessian_range(phi, &law.interval()?)?;
    let opts = QuadOptions::default();
    let e_xphi = law.expect(|x| x * phi.deriv(1, x), &opts)?;
    let e_phi = law.expect(|x| phi.deriv(1, x), &opts)?;
    let cov = e_xphi.value - mu * e_phi.value;
    if !cov.is_finite() {
        return Err(Error::NonFiniteMoment("Cov(X, phi'(X)) diverges".into()));
    }
    rep.lower = Some(0.5 * range.lo * sigma2);
    rep.upper = Some(cov);
    rep.certified = range.certified;
    rep = rep.input("inf_phi2", range.lo).input("cov_x_phi1", cov);
    Ok(rep)
}

/// MGF sandwich on a bounded window [a, b]:
/// e^{tμ} + t² e^{t·argmin} σ²/2 ≤ E[e^{tX}] ≤ e^{tμ} + t² e^{t·argmax} σ²/2
/// where the curvature t²e^{tx} is smallest at a and largest at b for
/// t > 0 (roles swap for t < 0). Unbounded supports are truncated and the
/// report is flagged uncertified.
pub fn mgf_bounds(dist: &DistributionSpec, t: f64) -> Result<BoundReport> {
    if !t.is_finite() {
        return Err(Error::InvalidSpec(format!("t must be finite, got {t}")));
    }
    let phi = PhiModel::exp_scaled(t);
    let law = EffectiveLaw::for_phi(dist, &phi)?;
    let mu = law.mean();
    let sigma2 = law.variance();
    let base = (t * mu).exp();
    let mut rep = BoundReport::new("mgf_bounds", BoundTarget::Expectation)
        .input("t", t)
        .input("mu", mu)
        .input("sigma2", sigma2);
    rep.certified = !law.truncated;
    if law.is_degenerate() || sigma2 == 0.0 || t == 0.0 {
        rep.lower = Some(base);
        rep.upper = Some(base);
        return Ok(rep);
    }
    let (a, b) = (law.lo, law.hi);
    let (small_end, large_end) = if t > 0.0 { (a, b) } else { (b, a) };
    rep.lower = Some(base + 0.5 * t * t * (t * small_end).exp() * sigma2);
    rep.upper = Some(base + 0.5 * t * t * (t * large_end).exp() * sigma2);
    Ok(rep)
}

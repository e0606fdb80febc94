//! Property tests for the module invariants: moment identities, kernel
//! nonnegativity, derivative stacks against finite differences, curvature
//! ranges, and the core bound inequalities on randomized (φ, law) pairs.

use jgap_core::bounds;
use jgap_core::distributions::{DistributionSpec, EffectiveLaw};
use jgap_core::functions::{self, Convexity, PhiModel};
use jgap_core::oracle;
use jgap_core::quad::{self, QuadOptions};
use jgap_core::support::SupportInterval;
use proptest::prelude::*;

fn analytic_dist() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (-3.0..3.0f64, 0.5..4.0f64)
            .prop_map(|(a, w)| DistributionSpec::uniform(a, a + w).unwrap()),
        (0.3..4.0f64).prop_map(|r| DistributionSpec::exponential(r).unwrap()),
        (-2.0..2.0f64, 0.3..2.5f64).prop_map(|(m, s)| DistributionSpec::normal(m, s).unwrap()),
        (0.8..5.0f64, 0.8..5.0f64).prop_map(|(a, b)| DistributionSpec::beta(a, b).unwrap()),
    ]
}

fn positive_dist() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (0.05..2.0f64, 0.5..3.0f64)
            .prop_map(|(a, w)| DistributionSpec::uniform(a, a + w).unwrap()),
        (0.5..3.0f64).prop_map(|r| DistributionSpec::exponential(r).unwrap()),
        (1.2..5.0f64, 1.2..5.0f64).prop_map(|(a, b)| DistributionSpec::beta(a, b).unwrap()),
        proptest::collection::vec((0.05..4.0f64, 0.1..1.0f64), 2..6).prop_map(|raw| {
            let total: f64 = raw.iter().map(|&(_, w)| w).sum();
            let pts: Vec<(f64, f64)> = raw.iter().map(|&(v, w)| (v, w / total)).collect();
            DistributionSpec::finite_discrete(&pts).unwrap()
        }),
    ]
}

fn convex_phi() -> impl Strategy<Value = PhiModel> {
    prop_oneof![
        Just(PhiModel::NegExp),
        Just(PhiModel::Square),
        Just(PhiModel::XLogX),
        Just(PhiModel::Reciprocal),
        Just(PhiModel::NegLog),
        (0.1..1.2f64).prop_map(PhiModel::exp_scaled),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Closed-form mean/variance agree with the quadrature route. The
    // quadrature window clips 1e-12 tail mass, which the (x−μ)^k weight
    // amplifies by (hi−μ)^k; the allowance makes that explicit.
    #[test]
    fn moments_match_quadrature(dist in analytic_dist()) {
        let m = dist.moments().unwrap();
        let law = EffectiveLaw::plain(&dist);
        let opts = QuadOptions::default();
        let reach = (law.hi - m.mu).max(m.mu - law.lo);
        let clip = |k: i32| 1e-11 * reach.powi(k);
        let mu_q = law.expect(|x| x, &opts).unwrap().value;
        prop_assert!((m.mu - mu_q).abs() <= 1e-8 * (1.0 + m.mu.abs()) + clip(1));
        let m2_q = law.expect(|x| (x - m.mu) * (x - m.mu), &opts).unwrap().value;
        prop_assert!((m.sigma2 - m2_q).abs() <= 1e-8 * (1.0 + m.sigma2) + clip(2));
        let m3_q = law.expect(|x| (x - m.mu).powi(3), &opts).unwrap().value;
        let sigma = m.sigma2.sqrt();
        prop_assert!((m.central3() - m3_q).abs() <= 1e-8 * (1.0 + sigma.powi(3)) + clip(3));
        let m4_q = law.expect(|x| (x - m.mu).powi(4), &opts).unwrap().value;
        prop_assert!((m.central4() - m4_q).abs() <= 2e-7 * (1.0 + m.central4().abs()) + clip(4));
    }

    // Triangle inequality: E|X−t| ≥ |μ−t|, which keeps the Green kernel
    // nonnegative.
    #[test]
    fn mad_dominates_distance_to_mean(dist in analytic_dist(), t in -10.0..10.0f64) {
        let mad = dist.mean_abs_dev_at(t).unwrap();
        let mu = dist.mean();
        prop_assert!(mad >= (mu - t).abs() - 1e-10);
        prop_assert!(bounds::green_kernel(&dist, t).unwrap() >= -1e-12);
    }

    // Σ p_k = 1 and the law of total variance across random partitions.
    #[test]
    fn cells_decompose_variance(dist in analytic_dist(), raw_cuts in proptest::collection::vec(0.05..0.95f64, 1..4)) {
        let law = EffectiveLaw::plain(&dist);
        let cuts: Vec<f64> = raw_cuts
            .iter()
            .map(|&q| dist.quantile(q))
            .collect();
        let cells = law.cells(&cuts);
        let mu = law.mean();
        let mass: f64 = cells.iter().map(|(_, _, c)| c.mass).sum();
        prop_assert!((mass - 1.0).abs() <= 1e-10);
        let mut within = 0.0;
        let mut between = 0.0;
        let mut mean_total = 0.0;
        for (_, _, c) in &cells {
            if let (Some(m), Some(v)) = (c.mean, c.variance) {
                within += c.mass * v;
                between += c.mass * (m - mu) * (m - mu);
                mean_total += c.mass * m;
            }
        }
        prop_assert!((mean_total - mu).abs() <= 1e-8 * (1.0 + mu.abs()));
        prop_assert!((within + between - law.variance()).abs() <= 1e-8 * (1.0 + law.variance()));
    }

    #[test]
    fn kurtosis_dominates_skewness(dist in positive_dist()) {
        let m = dist.moments().unwrap();
        prop_assert!(m.gamma4 >= m.gamma3 * m.gamma3 + 1.0 - 1e-10);
        prop_assert!(m.abs_central3 >= 0.0 && m.abs_central5 >= 0.0);
    }

    // CDF is monotone with the right limits; quantile is a right inverse.
    #[test]
    fn cdf_is_monotone(dist in analytic_dist(), a in -20.0..20.0f64, step in 0.0..5.0f64) {
        let fa = dist.cdf(a);
        let fb = dist.cdf(a + step);
        prop_assert!((0.0..=1.0).contains(&fa));
        prop_assert!(fa <= fb + 1e-15);
        prop_assert!(dist.cdf(-1e15) == 0.0);
        prop_assert!(dist.cdf(1e15) == 1.0);
    }

    // Analytic derivative stacks against central finite differences.
    #[test]
    fn derivatives_match_finite_differences(x in 0.2..3.0f64, k in 0usize..5) {
        let h = 1e-5;
        for phi in functions::builtin_catalog() {
            let fd = (phi.deriv(k, x + h) - phi.deriv(k, x - h)) / (2.0 * h);
            let exact = phi.deriv(k + 1, x);
            let scale = exact.abs().max(1.0);
            prop_assert!(
                (fd - exact).abs() <= 1e-4 * scale,
                "{} order {k} at {x}: fd {fd} vs {exact}",
                phi.name()
            );
        }
    }

    // Hessian ranges bracket φ″ at random probe points.
    #[test]
    fn hessian_range_brackets(lo in 0.1..1.0f64, w in 0.2..3.0f64, probe in 0.0..1.0f64) {
        let interval = SupportInterval::new(lo, lo + w).unwrap();
        let x = lo + probe * w;
        for phi in functions::builtin_catalog() {
            let r = functions::hessian_range(&phi, &interval).unwrap();
            let h = phi.deriv(2, x);
            prop_assert!(r.lo <= h + 1e-9 && h <= r.hi + 1e-9, "{}", phi.name());
            if phi.convexity() == Convexity::Convex {
                prop_assert!(r.lo >= -1e-12);
            }
        }
    }

    // The oracle gap sits inside the curvature sandwich [mσ²/2, Mσ²/2].
    #[test]
    fn sandwich_contains_gap(dist in positive_dist(), phi in convex_phi()) {
        let rep = bounds::variance_sandwich(&phi, &dist).unwrap();
        let o = oracle::expect(&dist, &phi, 1e-8).unwrap();
        let eps = o.abs_error_estimate + 1e-9;
        prop_assert!(rep.lower.unwrap() - eps <= o.gap, "{} lower", phi.name());
        prop_assert!(o.gap <= rep.upper.unwrap() + eps, "{} upper", phi.name());
        prop_assert!(o.gap >= -eps); // Jensen's inequality itself
    }

    // Error-radius soundness for the second- and fourth-order estimates.
    #[test]
    fn error_radii_are_sound(dist in positive_dist(), phi in convex_phi()) {
        let o = oracle::expect(&dist, &phi, 1e-8).unwrap();
        let eps = o.abs_error_estimate + 1e-9;
        let g2 = bounds::gruss_second_order(&phi, &dist).unwrap();
        prop_assert!((o.gap - g2.estimate.unwrap()).abs() <= g2.error_radius.unwrap() + eps);
        let f4 = bounds::fourth_order(&phi, &dist).unwrap();
        prop_assert!(
            (o.expectation - f4.estimate.unwrap()).abs() <= f4.error_radius.unwrap() + eps
        );
        let gg = bounds::green_gruss_refinement(&phi, &dist).unwrap();
        prop_assert!((o.gap - gg.estimate.unwrap()).abs() <= gg.error_radius.unwrap() + eps);
    }

    // The Green representation reproduces the gap on bounded windows.
    #[test]
    fn green_gap_equals_oracle(a in 0.1..1.0f64, w in 0.5..2.0f64, phi in convex_phi()) {
        let dist = DistributionSpec::uniform(a, a + w).unwrap();
        let rep = bounds::green_gap(&phi, &dist, 1e-8).unwrap();
        let o = oracle::expect(&dist, &phi, 1e-9).unwrap();
        prop_assert!((rep.estimate.unwrap() - o.gap).abs() <= 1e-6);
    }

    // Jensen–Mercer on randomized convex draws.
    #[test]
    fn mercer_holds(
        phi in convex_phi(),
        a in 0.1..1.0f64,
        w in 0.5..2.0f64,
        raw in proptest::collection::vec((0.0..1.0f64, 0.05..1.0f64), 1..5)
    ) {
        let b = a + w;
        let total: f64 = raw.iter().map(|&(_, wt)| wt).sum();
        let points: Vec<f64> = raw.iter().map(|&(q, _)| a + q * w).collect();
        let weights: Vec<f64> = raw.iter().map(|&(_, wt)| wt / total).collect();
        let out = bounds::jensen_mercer(&phi, a, b, &points, &weights).unwrap();
        prop_assert!(out.holds, "{}: lhs {} rhs {}", phi.name(), out.lhs, out.rhs);
    }

    // |T(f,g)| ≤ pre-Grüss ≤ Grüss on random polynomial pairs.
    #[test]
    fn gruss_ordering(
        cf in proptest::collection::vec(-1.0..1.0f64, 1..6),
        cg in proptest::collection::vec(-1.0..1.0f64, 1..6)
    ) {
        let f = PhiModel::poly(&cf).unwrap();
        let g = PhiModel::poly(&cg).unwrap();
        let unit = SupportInterval::new(0.0, 1.0).unwrap();
        let out = bounds::chebysev_gruss(&f, &g, &unit).unwrap();
        prop_assert!(out.t_fg.abs() <= out.pre_gruss_bound + 1e-10);
        prop_assert!(out.pre_gruss_bound <= out.gruss_bound + 1e-9);
    }

    // Tangency optimum sits at the mean for strictly convex φ.
    #[test]
    fn tangency_argmax_is_mean(dist in positive_dist(), phi in convex_phi()) {
        if matches!(phi, PhiModel::ExpScaled { t } if t.abs() < 0.15) {
            // Nearly affine: the objective is too flat to localize.
            return Ok(());
        }
        let law = EffectiveLaw::for_phi(&dist, &phi).unwrap();
        if law.is_degenerate() {
            return Ok(());
        }
        let opt = bounds::optimize_tangency(&phi, &dist, None).unwrap();
        prop_assert!(
            (opt.c_star - law.mean()).abs() <= 1e-6,
            "{}: c* {} vs mu {}",
            phi.name(),
            opt.c_star,
            law.mean()
        );
    }

    // Partition dominance: cuts never widen the sandwich.
    #[test]
    fn partitions_never_widen(
        dist in positive_dist(),
        phi in convex_phi(),
        qs in proptest::collection::vec(0.1..0.9f64, 1..4)
    ) {
        let law = EffectiveLaw::for_phi(&dist, &phi).unwrap();
        if law.is_degenerate() {
            return Ok(());
        }
        let cuts: Vec<f64> = qs
            .iter()
            .map(|&q| law.lo + q * (law.hi - law.lo))
            .collect();
        let mut cuts = cuts;
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        let part = jgap_core::PartitionSpec::new(cuts).unwrap();
        let global = bounds::variance_sandwich(&phi, &dist).unwrap();
        let split = bounds::partitioned_sandwich(&phi, &dist, &part).unwrap();
        prop_assert!(split.upper.unwrap() <= global.upper.unwrap() + 1e-9);
        prop_assert!(split.lower.unwrap() >= global.lower.unwrap() - 1e-9);
        prop_assert!(split.is_consistent());
    }
}

// A 10⁴-probe bracket check, denser than the proptest sweep.
#[test]
fn hessian_range_bracket_dense() {
    let interval = SupportInterval::new(0.05, 4.0).unwrap();
    for phi in functions::builtin_catalog() {
        let r = functions::hessian_range(&phi, &interval).unwrap();
        for i in 0..10_000 {
            let x = interval.lo + (interval.hi - interval.lo) * (i as f64 + 0.5) / 10_000.0;
            let h = phi.deriv(2, x);
            assert!(
                r.lo <= h + 1e-9 && h <= r.hi + 1e-9,
                "{} at {x}: {h} outside [{}, {}]",
                phi.name(),
                r.lo,
                r.hi
            );
        }
    }
}

// Quadrature and Monte Carlo agree within four combined error estimates
// across the catalog pairs.
#[test]
fn quadrature_and_monte_carlo_agree() {
    let dists = [
        DistributionSpec::uniform(0.2, 2.0).unwrap(),
        DistributionSpec::exponential(1.0).unwrap(),
        DistributionSpec::normal(1.5, 0.4).unwrap(),
        DistributionSpec::beta(2.0, 3.0).unwrap(),
    ];
    // Pairs where φ(X) has no finite second moment have no agreement
    // contract: the quadrature value is window-conditional while the Monte
    // Carlo stream is heavy-tailed.
    let integrable = |phi: &PhiModel, dist: &DistributionSpec| -> bool {
        match (phi, dist) {
            (PhiModel::ExpScaled { t }, DistributionSpec::Exponential { rate }) => {
                2.0 * t < *rate
            }
            (PhiModel::Reciprocal, DistributionSpec::Exponential { .. }) => false,
            (PhiModel::Reciprocal, DistributionSpec::Beta { alpha, .. }) => *alpha > 2.0,
            _ => true,
        }
    };
    for dist in &dists {
        for phi in functions::builtin_catalog() {
            if !integrable(&phi, dist) {
                continue;
            }
            let Ok(q) = oracle::expect(dist, &phi, 1e-8) else {
                continue; // domain mismatch pairs are out of scope here
            };
            let n = if matches!(dist, DistributionSpec::Beta { .. }) {
                20_000
            } else {
                100_000
            };
            let mc = oracle::expect_mc(dist, &phi, n, 1234).unwrap();
            let tol = 4.0 * (q.abs_error_estimate + mc.abs_error_estimate);
            assert!(
                (q.expectation - mc.expectation).abs() <= tol,
                "{} on {:?}: quad {} vs mc {} (tol {tol})",
                phi.name(),
                dist,
                q.expectation,
                mc.expectation
            );
        }
    }
}

// The integral-remainder route reproduces the direct gap (executable form
// of the Taylor-remainder identity).
#[test]
fn integral_remainder_identity() {
    let pairs: Vec<(DistributionSpec, PhiModel)> = vec![
        (
            DistributionSpec::uniform(0.0, 2.0).unwrap(),
            PhiModel::NegExp,
        ),
        (
            DistributionSpec::beta(2.0, 3.0).unwrap(),
            PhiModel::exp_scaled(0.8),
        ),
        (
            DistributionSpec::uniform(0.5, 2.5).unwrap(),
            PhiModel::NegLog,
        ),
        (
            DistributionSpec::finite_discrete(&[(0.3, 0.25), (1.0, 0.5), (2.2, 0.25)]).unwrap(),
            PhiModel::Square,
        ),
    ];
    for (dist, phi) in pairs {
        let direct = oracle::expect(&dist, &phi, 1e-9).unwrap().gap;
        let via = oracle::integral_remainder_gap(&dist, &phi, 1e-8).unwrap();
        assert!(
            (direct - via).abs() <= 1e-6,
            "{} on {:?}: {direct} vs {via}",
            phi.name(),
            dist
        );
    }
}

// Quadrature engine versus a plain midpoint-refined Simpson oracle, as an
// independent route on a handful of integrands.
#[test]
fn quadrature_against_simpson() {
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 0 { 2.0 } else { 4.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }
    type Integrand = Box<dyn Fn(f64) -> f64>;
    let cases: Vec<(Integrand, f64, f64)> = vec![
        (Box::new(|x: f64| (-x).exp()), 0.0, 2.0),
        (Box::new(|x: f64| x.ln_1p() * (-x).exp()), 0.0, 30.0),
        (Box::new(|x: f64| (x * 1.3).sin() + x * x), 0.2, 3.1),
    ];
    for (f, a, b) in cases {
        let fast = quad::integrate(&f, a, b, &QuadOptions::default()).unwrap();
        let slow = simpson(&f, a, b, 20_000);
        assert!(
            (fast.value - slow).abs() <= 1e-8 * (1.0 + slow.abs()),
            "{} vs {}",
            fast.value,
            slow
        );
    }
}

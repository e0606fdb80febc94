//! Typed reports for each subcommand and their table renderings.

use serde::{Deserialize, Serialize};

use jgap_core::applications;
use jgap_core::bounds::{self, BoundReport, BoundTarget};
use jgap_core::distributions::{DistributionSpec, EffectiveLaw, PartitionSpec};
use jgap_core::functions::{Convexity, PhiModel};
use jgap_core::oracle;

use crate::config::CommonOpts;
use crate::render::{flag, num, opt_num, pct, Table};
use crate::CliError;

/// Samples drawn by the optional Monte-Carlo cross-check row.
const MC_CHECK_SAMPLES: u64 = 100_000;

fn resolve_dist(
    dist: Option<&str>,
    samples_csv: Option<&str>,
) -> Result<DistributionSpec, CliError> {
    match (dist, samples_csv) {
        (_, Some(csv)) => Ok(DistributionSpec::empirical_from_csv(csv)?),
        (Some(spec), None) => Ok(DistributionSpec::parse(spec)?),
        (None, None) => Err(CliError::Usage(
            "either --dist or --samples is required".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// gap
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub method: String,
    pub target: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub estimate: Option<f64>,
    pub error_radius: Option<f64>,
    /// Oracle value of this row's target (gap or expectation).
    pub oracle: f64,
    pub abs_err: Option<f64>,
    pub certified: bool,
    pub applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub dist: String,
    pub phi: String,
    pub tol: f64,
    pub seed: u64,
    pub oracle_expectation: f64,
    pub oracle_gap: f64,
    pub oracle_error: f64,
    pub rows: Vec<GapRow>,
}

fn target_label(target: BoundTarget) -> &'static str {
    match target {
        BoundTarget::Gap => "gap",
        BoundTarget::Expectation => "expectation",
    }
}

fn row_from_report(rep: &BoundReport, oracle: &oracle::GapOracle) -> GapRow {
    let oracle_value = match rep.target {
        BoundTarget::Gap => oracle.gap,
        BoundTarget::Expectation => oracle.expectation,
    };
    GapRow {
        method: rep.method.clone(),
        target: target_label(rep.target).to_string(),
        lower: rep.lower,
        upper: rep.upper,
        estimate: rep.estimate,
        error_radius: rep.error_radius,
        oracle: oracle_value,
        abs_err: rep.estimate.map(|e| (e - oracle_value).abs()),
        certified: rep.certified,
        applicable: rep.applicable,
    }
}

fn inapplicable_row(method: &str, target: BoundTarget, oracle_value: f64) -> GapRow {
    GapRow {
        method: method.to_string(),
        target: target_label(target).to_string(),
        lower: None,
        upper: None,
        estimate: None,
        error_radius: None,
        oracle: oracle_value,
        abs_err: None,
        certified: false,
        applicable: false,
    }
}

pub fn gap(
    dist: Option<&str>,
    phi: &str,
    cuts: &[f64],
    samples_csv: Option<&str>,
    mc_check: bool,
    common: &CommonOpts,
) -> Result<GapReport, CliError> {
    let dist = resolve_dist(dist, samples_csv)?;
    let phi = PhiModel::parse(phi)?;
    let oracle_ref = oracle::expect(&dist, &phi, common.tol)?;
    let law = EffectiveLaw::for_phi(&dist, &phi)?;
    let mu = law.mean();
    let phi_mu = phi.eval(mu);

    let mut rows = Vec::new();

    // Classic Jensen: φ(μ) bounds E[φ(X)] from below (convex) or above.
    let mut jensen = GapRow {
        method: "jensen".into(),
        target: "expectation".into(),
        lower: None,
        upper: None,
        estimate: Some(phi_mu),
        error_radius: None,
        oracle: oracle_ref.expectation,
        abs_err: Some((phi_mu - oracle_ref.expectation).abs()),
        certified: true,
        applicable: true,
    };
    match phi.convexity() {
        Convexity::Convex => jensen.lower = Some(phi_mu),
        Convexity::Concave => jensen.upper = Some(phi_mu),
        Convexity::Neither => jensen.applicable = false,
    }
    rows.push(jensen);

    rows.push(row_from_report(
        &bounds::variance_sandwich(&phi, &dist)?,
        &oracle_ref,
    ));
    if !cuts.is_empty() {
        let part = PartitionSpec::new(cuts.to_vec())?;
        rows.push(row_from_report(
            &bounds::partitioned_sandwich(&phi, &dist, &part)?,
            &oracle_ref,
        ));
    }
    rows.push(row_from_report(
        &bounds::gruss_second_order(&phi, &dist)?,
        &oracle_ref,
    ));
    rows.push(row_from_report(
        &bounds::green_gap(&phi, &dist, common.tol)?,
        &oracle_ref,
    ));
    rows.push(row_from_report(
        &bounds::green_gruss_refinement(&phi, &dist)?,
        &oracle_ref,
    ));
    rows.push(row_from_report(
        &bounds::fourth_order(&phi, &dist)?,
        &oracle_ref,
    ));

    // Convex-only rows degrade to inapplicable entries for concave φ.
    match bounds::covariance_bound(&phi, &dist) {
        Ok(rep) => rows.push(row_from_report(&rep, &oracle_ref)),
        Err(jgap_core::Error::NonConvex(_)) => rows.push(inapplicable_row(
            "covariance_bound",
            BoundTarget::Gap,
            oracle_ref.gap,
        )),
        Err(e) => return Err(e.into()),
    }
    match bounds::optimize_tangency(&phi, &dist, None) {
        Ok(opt) => rows.push(GapRow {
            method: "tangency".into(),
            target: "expectation".into(),
            lower: Some(opt.bound),
            upper: None,
            estimate: Some(opt.bound),
            error_radius: None,
            oracle: oracle_ref.expectation,
            abs_err: Some((opt.bound - oracle_ref.expectation).abs()),
            certified: true,
            applicable: true,
        }),
        Err(jgap_core::Error::NonConvex(_)) => rows.push(inapplicable_row(
            "tangency",
            BoundTarget::Expectation,
            oracle_ref.expectation,
        )),
        Err(e) => return Err(e.into()),
    }

    if mc_check {
        let mc = oracle::expect_mc(&dist, &phi, MC_CHECK_SAMPLES, common.seed)?;
        rows.push(GapRow {
            method: "oracle_mc".into(),
            target: "expectation".into(),
            lower: None,
            upper: None,
            estimate: Some(mc.expectation),
            error_radius: Some(mc.abs_error_estimate),
            oracle: oracle_ref.expectation,
            abs_err: Some((mc.expectation - oracle_ref.expectation).abs()),
            certified: false,
            applicable: true,
        });
    }

    Ok(GapReport {
        dist: dist_label(&dist),
        phi: phi.name(),
        tol: common.tol,
        seed: common.seed,
        oracle_expectation: oracle_ref.expectation,
        oracle_gap: oracle_ref.gap,
        oracle_error: oracle_ref.abs_error_estimate,
        rows,
    })
}

fn dist_label(dist: &DistributionSpec) -> String {
    match dist {
        DistributionSpec::Uniform { a, b } => format!("uniform({a},{b})"),
        DistributionSpec::Exponential { rate } => format!("exponential({rate})"),
        DistributionSpec::Normal { mean, sd } => format!("normal({mean},{sd})"),
        DistributionSpec::Beta { alpha, beta } => format!("beta({alpha},{beta})"),
        DistributionSpec::FiniteDiscrete { points } => format!("discrete({} atoms)", points.len()),
        DistributionSpec::Empirical { samples } => format!("empirical({} samples)", samples.len()),
    }
}

impl GapReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec![
            "method",
            "target",
            "lower",
            "upper",
            "estimate",
            "error_radius",
            "oracle",
            "abs_err",
            "certified",
        ]);
        for r in &self.rows {
            t.rows.push(vec![
                r.method.clone(),
                r.target.clone(),
                opt_num(r.lower),
                opt_num(r.upper),
                opt_num(r.estimate),
                opt_num(r.error_radius),
                num(r.oracle),
                opt_num(r.abs_err),
                if r.applicable {
                    flag(r.certified)
                } else {
                    "n/a".into()
                },
            ]);
        }
        t
    }
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub method: String,
    pub formula: String,
    pub value: f64,
    pub rel_error_pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
}

/// The fixed comparison: E[e^{−X}] for X ~ Uniform(0, 2), exact value
/// against the classic Jensen bound, the variance refinement and the
/// fourth-order expansion.
pub fn table1(common: &CommonOpts) -> Result<Table1Report, CliError> {
    let dist = DistributionSpec::uniform(0.0, 2.0)?;
    let phi = PhiModel::NegExp;
    let exact = oracle::expect(&dist, &phi, common.tol)?.expectation;
    let m = dist.moments()?;
    let terms = bounds::fourth_order_terms(&phi, &m);
    let jensen = terms[0];
    let variance = terms[0] + terms[1];
    let fourth = bounds::fourth_order(&phi, &dist)?
        .estimate
        .expect("fourth-order estimate is always present");

    let rel = |v: f64| 100.0 * (v - exact) / exact;
    Ok(Table1Report {
        rows: vec![
            Table1Row {
                method: "exact".into(),
                formula: "E[phi(X)] by quadrature".into(),
                value: exact,
                rel_error_pct: 0.0,
            },
            Table1Row {
                method: "jensen".into(),
                formula: "phi(mu)".into(),
                value: jensen,
                rel_error_pct: rel(jensen),
            },
            Table1Row {
                method: "variance_refinement".into(),
                formula: "phi(mu) + phi''(mu) sigma^2 / 2".into(),
                value: variance,
                rel_error_pct: rel(variance),
            },
            Table1Row {
                method: "fourth_order".into(),
                formula: "expansion with skewness and kurtosis".into(),
                value: fourth,
                rel_error_pct: rel(fourth),
            },
        ],
    })
}

impl Table1Report {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec!["method", "formula", "value", "rel_error"]);
        for r in &self.rows {
            t.rows.push(vec![
                r.method.clone(),
                r.formula.clone(),
                num(r.value),
                pct(r.rel_error_pct),
            ]);
        }
        t
    }
}

// ---------------------------------------------------------------------------
// capacity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityRow {
    pub snr: f64,
    pub jensen_upper: f64,
    pub fourth_order_approx: f64,
    pub oracle: f64,
    pub term_mean: f64,
    pub term_variance: f64,
    pub term_skewness: f64,
    pub term_kurtosis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityTable {
    pub units: String,
    pub rows: Vec<CapacityRow>,
    /// −1/2 + 2/3 − 9/4, the r → 1 limit of the correction terms.
    pub high_snr_correction_sum: f64,
}

pub fn capacity(snr: &[f64], common: &CommonOpts) -> Result<CapacityTable, CliError> {
    let snrs: Vec<f64> = if snr.is_empty() {
        vec![0.01, 0.1, 1.0, 10.0, 100.0]
    } else {
        snr.to_vec()
    };
    let u = common.units;
    let mut rows = Vec::with_capacity(snrs.len());
    for &rho in &snrs {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(CliError::Usage(format!("--snr must be positive, got {rho}")));
        }
        let rep = applications::rayleigh_capacity(rho)?;
        rows.push(CapacityRow {
            snr: rho,
            jensen_upper: u.from_nats(rep.jensen_upper),
            fourth_order_approx: u.from_nats(rep.fourth_order_approx),
            oracle: u.from_nats(rep.oracle),
            term_mean: u.from_nats(rep.terms[0]),
            term_variance: u.from_nats(rep.terms[1]),
            term_skewness: u.from_nats(rep.terms[2]),
            term_kurtosis: u.from_nats(rep.terms[3]),
        });
    }
    Ok(CapacityTable {
        units: u.label().to_string(),
        rows,
        high_snr_correction_sum: u.from_nats(applications::high_snr_correction_sum()),
    })
}

impl CapacityTable {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec![
            "snr",
            "jensen_upper",
            "fourth_order_approx",
            "oracle",
            "term_mean",
            "term_variance",
            "term_skewness",
            "term_kurtosis",
            "units",
        ]);
        for r in &self.rows {
            t.rows.push(vec![
                num(r.snr),
                num(r.jensen_upper),
                num(r.fourth_order_approx),
                num(r.oracle),
                num(r.term_mean),
                num(r.term_variance),
                num(r.term_skewness),
                num(r.term_kurtosis),
                self.units.clone(),
            ]);
        }
        t.notes.push(format!(
            "high-SNR correction term sum: {} {}",
            num(self.high_snr_correction_sum),
            self.units
        ));
        t
    }
}

// ---------------------------------------------------------------------------
// kl
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KlReport {
    pub p: String,
    pub q: String,
    pub units: String,
    pub kl: f64,
    pub chi2_q_p: f64,
    pub inf_ratio: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn kl(p: &str, q: &str, common: &CommonOpts) -> Result<KlReport, CliError> {
    let p_dist = DistributionSpec::parse(p)?;
    let q_dist = DistributionSpec::parse(q)?;
    let rep = applications::reverse_pinsker(&p_dist, &q_dist)?;
    let u = common.units;
    Ok(KlReport {
        p: dist_label(&p_dist),
        q: dist_label(&q_dist),
        units: u.label().to_string(),
        kl: u.from_nats(rep.kl),
        chi2_q_p: rep.chi2_q_p,
        inf_ratio: rep.inf_ratio,
        bound: u.from_nats(rep.bound),
        holds: rep.holds,
    })
}

impl KlReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec![
            "kl",
            "chi2_q_p",
            "inf_ratio",
            "bound",
            "holds",
            "units",
        ]);
        t.rows.push(vec![
            num(self.kl),
            num(self.chi2_q_p),
            num(self.inf_ratio),
            num(self.bound),
            flag(self.holds),
            self.units.clone(),
        ]);
        t
    }
}

// ---------------------------------------------------------------------------
// entropy
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyTable {
    pub dist: String,
    pub units: String,
    pub energy: f64,
    pub renyi2_bound: f64,
    pub gap_estimate: f64,
    pub entropy_oracle: f64,
}

pub fn entropy(
    dist: Option<&str>,
    samples_csv: Option<&str>,
    common: &CommonOpts,
) -> Result<EntropyTable, CliError> {
    let dist = resolve_dist(dist, samples_csv)?;
    let rep = applications::entropy_bounds(&dist)?;
    let u = common.units;
    Ok(EntropyTable {
        dist: dist_label(&dist),
        units: u.label().to_string(),
        energy: rep.energy,
        renyi2_bound: u.from_nats(rep.renyi2_bound),
        gap_estimate: u.from_nats(rep.gap_estimate),
        entropy_oracle: u.from_nats(rep.entropy_oracle),
    })
}

impl EntropyTable {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec![
            "energy",
            "renyi2_bound",
            "gap_estimate",
            "entropy_oracle",
            "units",
        ]);
        t.rows.push(vec![
            num(self.energy),
            num(self.renyi2_bound),
            num(self.gap_estimate),
            num(self.entropy_oracle),
            self.units.clone(),
        ]);
        t
    }
}

// ---------------------------------------------------------------------------
// mgf
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MgfRow {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
    pub oracle: f64,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MgfTable {
    pub dist: String,
    pub rows: Vec<MgfRow>,
}

pub fn mgf(
    dist: Option<&str>,
    t_values: &[f64],
    samples_csv: Option<&str>,
    common: &CommonOpts,
) -> Result<MgfTable, CliError> {
    let dist = resolve_dist(dist, samples_csv)?;
    let ts: Vec<f64> = if t_values.is_empty() {
        vec![-1.0, 0.5, 1.0, 2.0]
    } else {
        t_values.to_vec()
    };
    let mut rows = Vec::with_capacity(ts.len());
    for &t in &ts {
        let rep = bounds::mgf_bounds(&dist, t)?;
        let oracle = oracle::expect(&dist, &PhiModel::exp_scaled(t), common.tol)?.expectation;
        rows.push(MgfRow {
            t,
            lower: rep.lower.expect("mgf bound always has a lower value"),
            upper: rep.upper.expect("mgf bound always has an upper value"),
            oracle,
            certified: rep.certified,
        });
    }
    Ok(MgfTable {
        dist: dist_label(&dist),
        rows,
    })
}

impl MgfTable {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec!["t", "lower", "upper", "oracle", "certified"]);
        for r in &self.rows {
            t.rows.push(vec![
                num(r.t),
                num(r.lower),
                num(r.upper),
                num(r.oracle),
                flag(r.certified),
            ]);
        }
        t
    }
}

//! Univariate probability laws and their moment queries.
//!
//! Analytic families (uniform, exponential, normal, beta) answer CDF,
//! partial-moment and quantile queries in closed form; finite discrete and
//! empirical laws answer them by exact summation. Standardized moments of
//! analytic families are closed forms; absolute central moments are computed
//! by adaptive quadrature split at the mean, which doubles as the
//! independent cross-check of the closed forms.
//!
//! [`EffectiveLaw`] is the window every interval-based bound and oracle
//! query works on: unbounded supports are truncated at quantiles leaving at
//! most [`TAIL_MASS`] probability per tail, and a support endpoint sitting
//! on an open domain boundary of φ (where derivatives blow up) is inset the
//! same way. The law is renormalized over the window, so bounds and oracle
//! always describe one and the same conditional distribution.

use libm::{erfc, lgamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::PhiModel;
use crate::quad::{self, QuadOptions, QuadOutcome};
use crate::support::SupportInterval;

/// Probability mass allowed outside the effective window, per tail.
pub const TAIL_MASS: f64 = 1e-12;

/// Cells with less mass than this are reported with undefined conditional
/// statistics.
pub const EMPTY_CELL_MASS: f64 = 1e-14;

const SQRT_2PI: f64 = 2.5066282746310002;

/// A univariate probability law.
#[derive(Clone, Debug, PartialEq)]
pub enum DistributionSpec {
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, sd: f64 },
    Beta { alpha: f64, beta: f64 },
    /// Atoms sorted by value with strictly positive probabilities summing
    /// to one.
    FiniteDiscrete { points: Vec<(f64, f64)> },
    /// Raw samples, sorted; all queries use plug-in (denominator n) forms.
    Empirical { samples: Vec<f64> },
}

/// Mean, variance, standardized skewness/kurtosis and the absolute central
/// moments of orders 3 and 5.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mu: f64,
    pub sigma2: f64,
    /// E[(X-μ)³]/σ³; zero for degenerate laws.
    pub gamma3: f64,
    /// E[(X-μ)⁴]/σ⁴ (non-excess); one for degenerate laws.
    pub gamma4: f64,
    pub abs_central3: f64,
    pub abs_central5: f64,
}

impl MomentSummary {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// E[(X-μ)³]
    pub fn central3(&self) -> f64 {
        self.gamma3 * self.sigma2 * self.sigma()
    }

    /// E[(X-μ)⁴]
    pub fn central4(&self) -> f64 {
        self.gamma4 * self.sigma2 * self.sigma2
    }

    /// E|X-μ|^k for the stored orders k ∈ {3, 5}.
    pub fn abs_central(&self, k: u32) -> Option<f64> {
        match k {
            3 => Some(self.abs_central3),
            5 => Some(self.abs_central5),
            _ => None,
        }
    }
}

/// Strictly increasing cut points interior to the support, defining
/// `len + 1` cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub cut_points: Vec<f64>,
}

impl PartitionSpec {
    pub fn new(cut_points: Vec<f64>) -> Result<Self> {
        if cut_points.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("cut points must be finite".into()));
        }
        if cut_points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(
                "cut points must be strictly increasing".into(),
            ));
        }
        Ok(Self { cut_points })
    }

    pub fn validate_for(&self, dist: &DistributionSpec) -> Result<()> {
        let (lo, hi) = dist.support_hull();
        for &c in &self.cut_points {
            if c <= lo || c >= hi {
                return Err(Error::InvalidSpec(format!(
                    "cut point {c} is not interior to the support [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Per-cell mass and conditional statistics. Cells with mass below
/// [`EMPTY_CELL_MASS`] carry `None` statistics rather than noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub mass: f64,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
}

impl DistributionSpec {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidSpec(format!(
                "uniform requires finite a < b, got ({a}, {b})"
            )));
        }
        Ok(Self::Uniform { a, b })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "exponential requires rate > 0, got {rate}"
            )));
        }
        Ok(Self::Exponential { rate })
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        if !mean.is_finite() || !sd.is_finite() || sd <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "normal requires finite mean and sd > 0, got ({mean}, {sd})"
            )));
        }
        Ok(Self::Normal { mean, sd })
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha <= 0.0 || beta <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "beta requires alpha, beta > 0, got ({alpha}, {beta})"
            )));
        }
        Ok(Self::Beta { alpha, beta })
    }

    pub fn finite_discrete(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSpec("discrete law needs at least one atom".into()));
        }
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(points.len());
        for &(v, p) in points {
            if !v.is_finite() {
                return Err(Error::InvalidSpec(format!("atom value {v} is not finite")));
            }
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::ZeroProbability(format!(
                    "atom at {v} has probability {p}"
                )));
            }
            pts.push((v, p));
        }
        pts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        // Merge duplicate values.
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
        for (v, p) in pts {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += p,
                _ => merged.push((v, p)),
            }
        }
        let total: f64 = merged.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!(
                "atom probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self::FiniteDiscrete { points: merged })
    }

    /// Two-point law on {0, 1} with P(1) = p.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::InvalidSpec(format!(
                "bernoulli requires 0 < p < 1, got {p}"
            )));
        }
        Self::finite_discrete(&[(0.0, 1.0 - p), (1.0, p)])
    }

    pub fn empirical(samples: &[f64]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "empirical law requires at least 2 samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidSpec("empirical samples must be finite".into()));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(Self::Empirical { samples: sorted })
    }

    /// Parse a CLI spec string: `uniform:0,2`, `exp:1`, `normal:0,1`,
    /// `beta:2,3`, `discrete:0=0.5,2=0.5`, `bernoulli:0.4`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, args) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("missing parameters in {spec:?}")))?;
        let nums = || -> Result<Vec<f64>> {
            args.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidSpec(format!("bad number {s:?} in {spec:?}")))
                })
                .collect()
        };
        let two = |what: &str| -> Result<(f64, f64)> {
            let v = nums()?;
            if v.len() != 2 {
                return Err(Error::InvalidSpec(format!(
                    "{what} takes 2 parameters, got {}",
                    v.len()
                )));
            }
            Ok((v[0], v[1]))
        };
        match head.trim() {
            "uniform" => {
                let (a, b) = two("uniform")?;
                Self::uniform(a, b)
            }
            "exp" | "exponential" => {
                let v = nums()?;
                if v.len() != 1 {
                    return Err(Error::InvalidSpec("exp takes 1 parameter".into()));
                }
                Self::exponential(v[0])
            }
            "normal" => {
                let (m, s) = two("normal")?;
                Self::normal(m, s)
            }
            "beta" => {
                let (a, b) = two("beta")?;
                Self::beta(a, b)
            }
            "bernoulli" | "bern" => {
                let v = nums()?;
                if v.len() != 1 {
                    return Err(Error::InvalidSpec("bernoulli takes 1 parameter".into()));
                }
                Self::bernoulli(v[0])
            }
            "discrete" => {
                let mut pts = Vec::new();
                for pair in args.split(',') {
                    let (v, p) = pair.split_once('=').ok_or_else(|| {
                        Error::InvalidSpec(format!("discrete atoms are value=prob, got {pair:?}"))
                    })?;
                    let v = v.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidSpec(format!("bad atom value {v:?} in {spec:?}"))
                    })?;
                    let p = p.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidSpec(format!("bad atom probability {p:?} in {spec:?}"))
                    })?;
                    pts.push((v, p));
                }
                Self::finite_discrete(&pts)
            }
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }

    /// Load empirical samples from CSV text: one number per line, blank
    /// lines and `#` comments allowed.
    pub fn empirical_from_csv(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value = line.parse::<f64>().map_err(|_| {
                Error::InvalidSpec(format!("line {}: cannot parse {line:?}", idx + 1))
            })?;
            samples.push(value);
        }
        Self::empirical(&samples)
    }

    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            Self::FiniteDiscrete { .. } | Self::Empirical { .. }
        )
    }

    /// Smallest and largest support points; equal for a point mass.
    pub fn support_hull(&self) -> (f64, f64) {
        match self {
            Self::Uniform { a, b } => (*a, *b),
            Self::Exponential { .. } => (0.0, f64::INFINITY),
            Self::Normal { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Self::Beta { .. } => (0.0, 1.0),
            Self::FiniteDiscrete { points } => (points[0].0, points[points.len() - 1].0),
            Self::Empirical { samples } => (samples[0], samples[samples.len() - 1]),
        }
    }

    /// The support as an interval; errors for a degenerate point mass,
    /// which is never an interval.
    pub fn support(&self) -> Result<SupportInterval> {
        let (lo, hi) = self.support_hull();
        SupportInterval::new(lo, hi)
    }

    /// Density for the continuous families, `None` for discrete/empirical.
    pub fn density(&self, x: f64) -> Option<f64> {
        match self {
            Self::Uniform { a, b } => Some(if x >= *a && x <= *b {
                1.0 / (b - a)
            } else {
                0.0
            }),
            Self::Exponential { rate } => Some(if x >= 0.0 {
                rate * (-rate * x).exp()
            } else {
                0.0
            }),
            Self::Normal { mean, sd } => {
                let z = (x - mean) / sd;
                Some((-0.5 * z * z).exp() / (sd * SQRT_2PI))
            }
            Self::Beta { alpha, beta } => Some(if x > 0.0 && x < 1.0 {
                let ln_b = lgamma(*alpha) + lgamma(*beta) - lgamma(alpha + beta);
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln() - ln_b).exp()
            } else {
                0.0
            }),
            Self::FiniteDiscrete { .. } | Self::Empirical { .. } => None,
        }
    }

    /// Right-continuous CDF.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Self::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Self::Normal { mean, sd } => normal_cdf((x - mean) / sd),
            Self::Beta { alpha, beta } => beta_inc_reg(*alpha, *beta, x.clamp(0.0, 1.0)),
            Self::FiniteDiscrete { points } => points
                .iter()
                .take_while(|&&(v, _)| v <= x)
                .map(|&(_, p)| p)
                .sum(),
            Self::Empirical { samples } => {
                let n = samples.len();
                let count = samples.partition_point(|&s| s <= x);
                count as f64 / n as f64
            }
        }
    }

    /// Quantile (generalized inverse CDF) for p in (0, 1).
    pub fn quantile(&self, p: f64) -> f64 {
        debug_assert!(p > 0.0 && p < 1.0);
        match self {
            Self::Uniform { a, b } => a + p * (b - a),
            Self::Exponential { rate } => -(-p).ln_1p() / rate,
            Self::Normal { mean, sd } => mean + sd * normal_quantile(p),
            Self::Beta { .. } => {
                // Bisection on the regularized incomplete beta.
                let mut lo = 0.0f64;
                let mut hi = 1.0f64;
                for _ in 0..90 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < p {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
            Self::FiniteDiscrete { points } => {
                let mut acc = 0.0;
                for &(v, w) in points {
                    acc += w;
                    if acc >= p {
                        return v;
                    }
                }
                points[points.len() - 1].0
            }
            Self::Empirical { samples } => {
                let n = samples.len() as f64;
                let idx = (p * n).ceil() as usize;
                samples[idx.clamp(1, samples.len()) - 1]
            }
        }
    }

    /// E[X · 1{X ≤ t}].
    pub fn partial_m1(&self, t: f64) -> f64 {
        match self {
            Self::Uniform { a, b } => {
                if t <= *a {
                    0.0
                } else if t >= *b {
                    0.5 * (a + b)
                } else {
                    (t * t - a * a) / (2.0 * (b - a))
                }
            }
            Self::Exponential { rate } => {
                if t <= 0.0 {
                    0.0
                } else {
                    let mu = 1.0 / rate;
                    mu - (t + mu) * (-rate * t).exp()
                }
            }
            Self::Normal { mean, sd } => {
                let z = (t - mean) / sd;
                mean * normal_cdf(z) - sd * normal_pdf(z)
            }
            Self::Beta { alpha, beta } => {
                let mu = alpha / (alpha + beta);
                mu * beta_inc_reg(alpha + 1.0, *beta, t.clamp(0.0, 1.0))
            }
            Self::FiniteDiscrete { points } => points
                .iter()
                .take_while(|&&(v, _)| v <= t)
                .map(|&(v, p)| v * p)
                .sum(),
            Self::Empirical { samples } => {
                let n = samples.len() as f64;
                samples.iter().take_while(|&&s| s <= t).sum::<f64>() / n
            }
        }
    }

    /// E[X² · 1{X ≤ t}].
    pub fn partial_m2(&self, t: f64) -> f64 {
        match self {
            Self::Uniform { a, b } => {
                if t <= *a {
                    0.0
                } else if t >= *b {
                    (b * b * b - a * a * a) / (3.0 * (b - a))
                } else {
                    (t * t * t - a * a * a) / (3.0 * (b - a))
                }
            }
            Self::Exponential { rate } => {
                let m2 = 2.0 / (rate * rate);
                if t <= 0.0 {
                    0.0
                } else {
                    m2 - (t * t + 2.0 * t / rate + m2) * (-rate * t).exp()
                }
            }
            Self::Normal { mean, sd } => {
                let z = (t - mean) / sd;
                (mean * mean + sd * sd) * normal_cdf(z) - sd * (mean + t) * normal_pdf(z)
            }
            Self::Beta { alpha, beta } => {
                let s = alpha + beta;
                let m2 = alpha * (alpha + 1.0) / (s * (s + 1.0));
                m2 * beta_inc_reg(alpha + 2.0, *beta, t.clamp(0.0, 1.0))
            }
            Self::FiniteDiscrete { points } => points
                .iter()
                .take_while(|&&(v, _)| v <= t)
                .map(|&(v, p)| v * v * p)
                .sum(),
            Self::Empirical { samples } => {
                let n = samples.len() as f64;
                samples
                    .iter()
                    .take_while(|&&s| s <= t)
                    .map(|&s| s * s)
                    .sum::<f64>()
                    / n
            }
        }
    }

    /// Mean absolute deviation around an arbitrary point:
    /// E|X−t| = μ − 2·E[X·1{X≤t}] + 2t·F(t) − t.
    pub fn mean_abs_dev_at(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::InvalidSpec(format!("t must be finite, got {t}")));
        }
        let mu = self.mean();
        Ok(mu - 2.0 * self.partial_m1(t) + 2.0 * t * self.cdf(t) - t)
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Uniform { a, b } => 0.5 * (a + b),
            Self::Exponential { rate } => 1.0 / rate,
            Self::Normal { mean, .. } => *mean,
            Self::Beta { alpha, beta } => alpha / (alpha + beta),
            Self::FiniteDiscrete { points } => points.iter().map(|&(v, p)| v * p).sum(),
            Self::Empirical { samples } => {
                samples.iter().sum::<f64>() / samples.len() as f64
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Self::Uniform { a, b } => (b - a) * (b - a) / 12.0,
            Self::Exponential { rate } => 1.0 / (rate * rate),
            Self::Normal { sd, .. } => sd * sd,
            Self::Beta { alpha, beta } => {
                let s = alpha + beta;
                alpha * beta / (s * s * (s + 1.0))
            }
            Self::FiniteDiscrete { .. } | Self::Empirical { .. } => {
                let mu = self.mean();
                self.central_moment_discrete(mu, 2)
            }
        }
    }

    fn central_moment_discrete(&self, mu: f64, k: u32) -> f64 {
        match self {
            Self::FiniteDiscrete { points } => points
                .iter()
                .map(|&(v, p)| (v - mu).powi(k as i32) * p)
                .sum(),
            Self::Empirical { samples } => {
                samples
                    .iter()
                    .map(|&s| (s - mu).powi(k as i32))
                    .sum::<f64>()
                    / samples.len() as f64
            }
            _ => unreachable!("discrete central moment on a continuous law"),
        }
    }

    fn abs_central_moment_discrete(&self, mu: f64, k: u32) -> f64 {
        match self {
            Self::FiniteDiscrete { points } => points
                .iter()
                .map(|&(v, p)| (v - mu).abs().powi(k as i32) * p)
                .sum(),
            Self::Empirical { samples } => {
                samples
                    .iter()
                    .map(|&s| (s - mu).abs().powi(k as i32))
                    .sum::<f64>()
                    / samples.len() as f64
            }
            _ => unreachable!(),
        }
    }

    /// E|X−μ|^k by adaptive quadrature split at μ (continuous families) or
    /// exact summation (discrete/empirical).
    pub fn abs_central_moment(&self, k: u32) -> Result<f64> {
        let mu = self.mean();
        if self.is_discrete() {
            return Ok(self.abs_central_moment_discrete(mu, k));
        }
        let (lo, hi) = self.quadrature_window();
        let out = quad::integrate(
            |x| (x - mu).abs().powi(k as i32) * self.density(x).unwrap(),
            lo,
            hi,
            &QuadOptions::with_splits(&[mu]),
        )?;
        if !out.value.is_finite() {
            return Err(Error::NonFiniteMoment(format!("E|X-mu|^{k} diverges")));
        }
        Ok(out.value)
    }

    /// Finite integration window: the support, with unbounded tails cut at
    /// quantiles leaving [`TAIL_MASS`] per side.
    pub(crate) fn quadrature_window(&self) -> (f64, f64) {
        let (lo, hi) = self.support_hull();
        let lo = if lo.is_finite() {
            lo
        } else {
            self.quantile(TAIL_MASS)
        };
        let hi = if hi.is_finite() {
            hi
        } else {
            self.quantile(1.0 - TAIL_MASS)
        };
        (lo, hi)
    }

    /// Full moment summary. Mean through kurtosis are closed forms for the
    /// analytic families and plug-in sums for discrete/empirical laws;
    /// absolute central moments always go through quadrature/summation.
    pub fn moments(&self) -> Result<MomentSummary> {
        let (mu, sigma2, gamma3, gamma4) = match self {
            Self::Uniform { .. } => (self.mean(), self.variance(), 0.0, 1.8),
            Self::Exponential { .. } => (self.mean(), self.variance(), 2.0, 9.0),
            Self::Normal { .. } => (self.mean(), self.variance(), 0.0, 3.0),
            Self::Beta { alpha, beta } => {
                let (a, b) = (*alpha, *beta);
                let s = a + b;
                let g3 = 2.0 * (b - a) * (s + 1.0).sqrt() / ((s + 2.0) * (a * b).sqrt());
                let g4 = 3.0
                    + 6.0 * ((a - b) * (a - b) * (s + 1.0) - a * b * (s + 2.0))
                        / (a * b * (s + 2.0) * (s + 3.0));
                (self.mean(), self.variance(), g3, g4)
            }
            Self::FiniteDiscrete { .. } | Self::Empirical { .. } => {
                let mu = self.mean();
                let sigma2 = self.central_moment_discrete(mu, 2);
                if sigma2 <= 0.0 {
                    // Point mass (or constant sample): standardized moments
                    // take their degenerate conventions.
                    (mu, 0.0, 0.0, 1.0)
                } else {
                    let sigma = sigma2.sqrt();
                    let g3 = self.central_moment_discrete(mu, 3) / (sigma2 * sigma);
                    let g4 = self.central_moment_discrete(mu, 4) / (sigma2 * sigma2);
                    (mu, sigma2, g3, g4)
                }
            }
        };
        if !(mu.is_finite() && sigma2.is_finite() && gamma3.is_finite() && gamma4.is_finite()) {
            return Err(Error::NonFiniteMoment("moment summary diverges".into()));
        }
        Ok(MomentSummary {
            mu,
            sigma2,
            gamma3,
            gamma4,
            abs_central3: self.abs_central_moment(3)?,
            abs_central5: self.abs_central_moment(5)?,
        })
    }

    /// Per-cell mass, conditional mean and conditional variance for the
    /// partition. Cells are `(c_{k-1}, c_k]`; atoms sitting exactly on a cut
    /// belong to the cell on the left.
    pub fn cell_stats(&self, part: &PartitionSpec) -> Result<Vec<CellStats>> {
        part.validate_for(self)?;
        let mut upper: Vec<Option<f64>> =
            part.cut_points.iter().copied().map(Some).collect();
        upper.push(None); // last cell extends to the support top
        let mut out = Vec::with_capacity(upper.len());
        let mut f_acc = 0.0;
        let mut m1_acc = 0.0;
        let mut m2_acc = 0.0;
        let (total_m1, total_m2) = {
            let (_, hi) = self.support_hull();
            if hi.is_finite() {
                (self.partial_m1(hi), self.partial_m2(hi))
            } else {
                (self.mean(), self.variance() + self.mean() * self.mean())
            }
        };
        for bound in upper {
            let (f, m1, m2) = match bound {
                Some(c) => (self.cdf(c), self.partial_m1(c), self.partial_m2(c)),
                None => (1.0, total_m1, total_m2),
            };
            let mass = (f - f_acc).max(0.0);
            let cell = if mass < EMPTY_CELL_MASS {
                CellStats {
                    mass,
                    mean: None,
                    variance: None,
                }
            } else {
                let mean = (m1 - m1_acc) / mass;
                let variance = ((m2 - m2_acc) / mass - mean * mean).max(0.0);
                CellStats {
                    mass,
                    mean: Some(mean),
                    variance: Some(variance),
                }
            };
            out.push(cell);
            f_acc = f;
            m1_acc = m1;
            m2_acc = m2;
        }
        Ok(out)
    }

    /// Inverse-CDF transform of a uniform draw; the single primitive behind
    /// Monte-Carlo sampling, so one uniform always maps to one sample.
    pub fn sample_at(&self, u: f64) -> f64 {
        self.quantile(u.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0))
    }
}

// ---------------------------------------------------------------------------
// Effective law: the window all interval-based operations agree on.
// ---------------------------------------------------------------------------

/// A distribution restricted and renormalized to a finite window `[lo, hi]`.
///
/// The window is the support, except that (a) infinite tails are cut at
/// quantiles leaving [`TAIL_MASS`] mass each, and (b) for a given φ, a
/// support endpoint lying on an open boundary of φ's domain is inset the
/// same way. If more than tail mass lives outside φ's domain the
/// combination is rejected as a domain mismatch.
#[derive(Clone, Debug)]
pub struct EffectiveLaw<'a> {
    pub dist: &'a DistributionSpec,
    pub lo: f64,
    pub hi: f64,
    /// True when the window differs from the raw support.
    pub truncated: bool,
    mass: f64,
    f_lo: f64,
    m1_lo: f64,
    m2_lo: f64,
}

impl<'a> EffectiveLaw<'a> {
    /// Window for distribution-only queries (no φ): tail truncation only.
    pub fn plain(dist: &'a DistributionSpec) -> Self {
        let (slo, shi) = dist.support_hull();
        let (lo, hi) = dist.quadrature_window();
        Self::build(dist, lo, hi, lo != slo || hi != shi)
    }

    /// Window for the pair (φ, X); errors when the law puts non-negligible
    /// mass outside φ's domain.
    pub fn for_phi(dist: &'a DistributionSpec, phi: &PhiModel) -> Result<Self> {
        let dom = phi.domain();
        let (slo, shi) = dist.support_hull();
        if dist.is_discrete() {
            // Every atom must be interior to the domain: φ and its
            // derivatives are evaluated exactly there.
            if slo <= dom.lo || shi >= dom.hi {
                return Err(Error::DomainMismatch(format!(
                    "support [{slo}, {shi}] is not interior to the domain of {}",
                    phi.name()
                )));
            }
            return Ok(Self::build(dist, slo, shi, false));
        }
        let lo = if slo.is_finite() && slo > dom.lo {
            slo
        } else {
            let q = dist.quantile(TAIL_MASS);
            if !q.is_finite() || q <= dom.lo {
                return Err(Error::DomainMismatch(format!(
                    "{} puts more than tail mass below the domain of {}",
                    family_name(dist),
                    phi.name()
                )));
            }
            q
        };
        let hi = if shi.is_finite() && shi < dom.hi {
            shi
        } else {
            let q = dist.quantile(1.0 - TAIL_MASS);
            if !q.is_finite() || q >= dom.hi {
                return Err(Error::DomainMismatch(format!(
                    "{} puts more than tail mass above the domain of {}",
                    family_name(dist),
                    phi.name()
                )));
            }
            q
        };
        if lo >= hi {
            return Err(Error::DomainMismatch(
                "effective window collapsed to a point".into(),
            ));
        }
        Ok(Self::build(dist, lo, hi, lo != slo || hi != shi))
    }

    fn build(dist: &'a DistributionSpec, lo: f64, hi: f64, truncated: bool) -> Self {
        let (f_lo, m1_lo, m2_lo, mass) = if truncated {
            let f_lo = dist.cdf(lo);
            (
                f_lo,
                dist.partial_m1(lo),
                dist.partial_m2(lo),
                (dist.cdf(hi) - f_lo).max(f64::MIN_POSITIVE),
            )
        } else {
            (0.0, 0.0, 0.0, 1.0)
        };
        Self {
            dist,
            lo,
            hi,
            truncated,
            mass,
            f_lo,
            m1_lo,
            m2_lo,
        }
    }

    /// Probability mass the window keeps (1 − clipped tails).
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn interval(&self) -> Result<SupportInterval> {
        SupportInterval::new(self.lo, self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// CDF of the window-conditioned law.
    pub fn cdf(&self, x: f64) -> f64 {
        if !self.truncated {
            return self.dist.cdf(x);
        }
        if x < self.lo {
            0.0
        } else if x >= self.hi {
            1.0
        } else {
            ((self.dist.cdf(x) - self.f_lo) / self.mass).clamp(0.0, 1.0)
        }
    }

    /// E[X·1{X≤t}] of the conditioned law.
    pub fn partial_m1(&self, t: f64) -> f64 {
        if !self.truncated {
            return self.dist.partial_m1(t);
        }
        let t = t.clamp(self.lo, self.hi);
        (self.dist.partial_m1(t) - self.m1_lo) / self.mass
    }

    /// E[X²·1{X≤t}] of the conditioned law.
    pub fn partial_m2(&self, t: f64) -> f64 {
        if !self.truncated {
            return self.dist.partial_m2(t);
        }
        let t = t.clamp(self.lo, self.hi);
        (self.dist.partial_m2(t) - self.m2_lo) / self.mass
    }

    pub fn mean(&self) -> f64 {
        if self.truncated {
            self.partial_m1(self.hi)
        } else {
            self.dist.mean()
        }
    }

    pub fn variance(&self) -> f64 {
        if self.truncated {
            let mu = self.mean();
            (self.partial_m2(self.hi) - mu * mu).max(0.0)
        } else {
            self.dist.variance()
        }
    }

    /// E|X−t| of the conditioned law.
    pub fn mean_abs_dev_at(&self, t: f64) -> f64 {
        let mu = self.mean();
        mu - 2.0 * self.partial_m1(t) + 2.0 * t * self.cdf(t) - t
    }

    /// Green kernel K(t) = (E|X−t| − |μ−t|)/2 of the conditioned law, in
    /// the cancellation-free one-sided form: E[(t−X)1{X≤t}] below the mean
    /// and E[(X−t)1{X>t}] above it. The naive two-term difference loses
    /// ~13 digits near the window edges, which curvatures like 1/t³
    /// amplify into integrand garbage.
    pub fn green_kernel_at(&self, t: f64) -> f64 {
        let mu = self.mean();
        if t <= mu {
            t * self.cdf(t) - self.partial_m1(t)
        } else {
            (mu - self.partial_m1(t)) - t * (1.0 - self.cdf(t))
        }
    }

    /// Renormalized density inside the window.
    pub fn density(&self, x: f64) -> Option<f64> {
        let d = self.dist.density(x)?;
        if x < self.lo || x > self.hi {
            Some(0.0)
        } else {
            Some(d / self.mass)
        }
    }

    /// Conditional expectation E[g(X)] over the window: adaptive quadrature
    /// for continuous laws, exact summation for discrete/empirical ones.
    pub fn expect<G: Fn(f64) -> f64>(&self, g: G, opts: &QuadOptions) -> Result<QuadOutcome> {
        match self.dist {
            DistributionSpec::FiniteDiscrete { points } => {
                let mut value = 0.0;
                let mut scale = 0.0;
                for &(v, p) in points {
                    let gv = g(v);
                    if !gv.is_finite() {
                        return Err(Error::DomainMismatch(format!(
                            "integrand is not finite at atom {v}"
                        )));
                    }
                    value += gv * p;
                    scale += gv.abs() * p;
                }
                Ok(QuadOutcome {
                    value,
                    abs_error: scale * 1e-15,
                    panels: 0,
                })
            }
            DistributionSpec::Empirical { samples } => {
                let n = samples.len() as f64;
                let mut value = 0.0;
                let mut scale = 0.0;
                for &s in samples {
                    let gv = g(s);
                    if !gv.is_finite() {
                        return Err(Error::DomainMismatch(format!(
                            "integrand is not finite at sample {s}"
                        )));
                    }
                    value += gv;
                    scale += gv.abs();
                }
                Ok(QuadOutcome {
                    value: value / n,
                    abs_error: scale / n * 1e-15,
                    panels: 0,
                })
            }
            _ => quad::integrate(
                |x| g(x) * self.density(x).expect("continuous law has a density"),
                self.lo,
                self.hi,
                opts,
            ),
        }
    }

    /// Moment summary of the conditioned law. Falls back to the base law's
    /// closed forms when the window is the full support; otherwise central
    /// moments are integrated over the window.
    pub fn moments(&self) -> Result<MomentSummary> {
        if !self.truncated {
            return self.dist.moments();
        }
        let mu = self.mean();
        let sigma2 = self.variance();
        let central = |k: i32, absolute: bool| -> Result<f64> {
            let out = self.expect(
                |x| {
                    let d = x - mu;
                    if absolute {
                        d.abs().powi(k)
                    } else {
                        d.powi(k)
                    }
                },
                &QuadOptions::with_splits(&[mu]),
            )?;
            Ok(out.value)
        };
        let (gamma3, gamma4) = if sigma2 <= 0.0 {
            (0.0, 1.0)
        } else {
            let sigma = sigma2.sqrt();
            (
                central(3, false)? / (sigma2 * sigma),
                central(4, false)? / (sigma2 * sigma2),
            )
        };
        Ok(MomentSummary {
            mu,
            sigma2,
            gamma3,
            gamma4,
            abs_central3: central(3, true)?,
            abs_central5: central(5, true)?,
        })
    }

    /// Cell statistics over the window sliced at the given cuts (cuts
    /// outside the window are ignored).
    pub fn cells(&self, cuts: &[f64]) -> Vec<(f64, f64, CellStats)> {
        let mut inner: Vec<f64> = cuts
            .iter()
            .copied()
            .filter(|c| *c > self.lo && *c < self.hi)
            .collect();
        inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
        inner.dedup();
        let mut bounds = Vec::with_capacity(inner.len() + 2);
        bounds.push(self.lo);
        bounds.extend(inner);
        bounds.push(self.hi);

        let mut out = Vec::with_capacity(bounds.len() - 1);
        let mut f_acc = 0.0;
        let mut m1_acc = 0.0;
        let mut m2_acc = 0.0;
        for (i, w) in bounds.windows(2).enumerate() {
            let last = i + 2 == bounds.len();
            let (f, m1, m2) = if last {
                (1.0, self.partial_m1(self.hi), self.partial_m2(self.hi))
            } else {
                (self.cdf(w[1]), self.partial_m1(w[1]), self.partial_m2(w[1]))
            };
            let mass = (f - f_acc).max(0.0);
            let cell = if mass < EMPTY_CELL_MASS {
                CellStats {
                    mass,
                    mean: None,
                    variance: None,
                }
            } else {
                let mean = (m1 - m1_acc) / mass;
                let variance = ((m2 - m2_acc) / mass - mean * mean).max(0.0);
                CellStats {
                    mass,
                    mean: Some(mean),
                    variance: Some(variance),
                }
            };
            out.push((w[0], w[1], cell));
            f_acc = f;
            m1_acc = m1;
            m2_acc = m2;
        }
        out
    }
}

fn family_name(dist: &DistributionSpec) -> &'static str {
    match dist {
        DistributionSpec::Uniform { .. } => "uniform",
        DistributionSpec::Exponential { .. } => "exponential",
        DistributionSpec::Normal { .. } => "normal",
        DistributionSpec::Beta { .. } => "beta",
        DistributionSpec::FiniteDiscrete { .. } => "discrete",
        DistributionSpec::Empirical { .. } => "empirical",
    }
}

// ---------------------------------------------------------------------------
// Normal special functions.
// ---------------------------------------------------------------------------

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / SQRT_2PI
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Standard normal quantile: Acklam's rational approximation refined with
/// one Halley step against the erfc-based CDF.
fn normal_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    // Halley refinement.
    let e = normal_cdf(x) - p;
    let u = e * SQRT_2PI * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta (Lentz continued fraction).
// ---------------------------------------------------------------------------

fn beta_inc_reg(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = lgamma(a + b) - lgamma(a) - lgamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0f64;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m_f = m as f64;
        let m2 = 2.0 * m_f;
        let aa = m_f * (b - m_f) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m_f) * (qab + m_f) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn exponential_moments_closed_form() {
        let m = DistributionSpec::exponential(1.0).unwrap().moments().unwrap();
        assert_abs_diff_eq!(m.mu, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.sigma2, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.gamma3, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.gamma4, 9.0, epsilon = 1e-14);
        // E|X-1|³ = 12/e - 2, E|X-1|⁵ = 240/e - 44 (split at the mean).
        // The quadrature window clips 1e-12 tail mass, which the |x-μ|^k
        // weight amplifies to ~1e-8 (k=3) and ~3e-7 (k=5) relative.
        assert_relative_eq!(m.abs_central3, 12.0 / std::f64::consts::E - 2.0, max_relative = 1e-7);
        assert_relative_eq!(m.abs_central5, 240.0 / std::f64::consts::E - 44.0, max_relative = 1e-6);
    }

    #[test]
    fn uniform_moments_and_abs_central() {
        let d = DistributionSpec::uniform(0.0, 2.0).unwrap();
        let m = d.moments().unwrap();
        assert_abs_diff_eq!(m.mu, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.gamma3, 0.0, epsilon = 1e-15);
        assert_relative_eq!(m.sigma2, 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(m.abs_central3, 0.25, max_relative = 1e-10);
        assert_relative_eq!(m.abs_central5, 1.0 / 6.0, max_relative = 1e-10);
        assert_abs_diff_eq!(m.gamma4, 1.8, epsilon = 1e-12);
    }

    #[test]
    fn mean_abs_dev_examples() {
        let u = DistributionSpec::uniform(0.0, 2.0).unwrap();
        assert_relative_eq!(u.mean_abs_dev_at(1.0).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(u.mean_abs_dev_at(0.0).unwrap(), 1.0, max_relative = 1e-14);
        let two = DistributionSpec::finite_discrete(&[(0.0, 0.5), (2.0, 0.5)]).unwrap();
        assert_relative_eq!(two.mean_abs_dev_at(1.0).unwrap(), 1.0, max_relative = 1e-14);
        // Far below the support the deviation approaches |mu - t|.
        let t = -1e6;
        assert_relative_eq!(u.mean_abs_dev_at(t).unwrap(), 1.0 - t, max_relative = 1e-12);
    }

    #[test]
    fn cdf_examples() {
        let u = DistributionSpec::uniform(0.0, 2.0).unwrap();
        assert_abs_diff_eq!(u.cdf(0.5), 0.25, epsilon = 1e-15);
        let e = DistributionSpec::exponential(1.0).unwrap();
        assert_abs_diff_eq!(e.cdf(0.0), 0.0, epsilon = 1e-15);
        let emp = DistributionSpec::empirical(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_abs_diff_eq!(emp.cdf(2.5), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(emp.cdf(0.5), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(emp.cdf(4.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn normal_cdf_and_quantile_are_inverse() {
        let n = DistributionSpec::normal(1.0, 2.0).unwrap();
        for p in [1e-12, 0.01, 0.3, 0.5, 0.9, 1.0 - 1e-12] {
            let q = n.quantile(p);
            assert_abs_diff_eq!(n.cdf(q), p, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(n.cdf(1.0), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn beta_cdf_matches_closed_forms() {
        // Beta(2,2): F(x) = 3x² - 2x³.
        let b = DistributionSpec::beta(2.0, 2.0).unwrap();
        for x in [0.1, 0.35, 0.5, 0.8] {
            assert_relative_eq!(b.cdf(x), 3.0 * x * x - 2.0 * x * x * x, max_relative = 1e-12);
        }
        // Quantile inverts.
        for p in [0.05, 0.4, 0.9] {
            assert_abs_diff_eq!(b.cdf(b.quantile(p)), p, epsilon = 1e-10);
        }
    }

    #[test]
    fn beta_moments_match_quadrature() {
        let b = DistributionSpec::beta(2.0, 3.0).unwrap();
        let m = b.moments().unwrap();
        assert_relative_eq!(m.mu, 0.4, max_relative = 1e-12);
        assert_relative_eq!(m.sigma2, 0.04, max_relative = 1e-12);
        assert_relative_eq!(m.gamma3, 2.0 / 7.0, max_relative = 1e-12);
        // Quadrature cross-check of gamma4.
        let quad_m4 = quad::integrate(
            |x| (x - 0.4).powi(4) * b.density(x).unwrap(),
            0.0,
            1.0,
            &QuadOptions::default(),
        )
        .unwrap()
        .value;
        assert_relative_eq!(m.gamma4, quad_m4 / (0.04f64 * 0.04), max_relative = 1e-9);
    }

    #[test]
    fn partial_moments_match_quadrature() {
        let cases: Vec<DistributionSpec> = vec![
            DistributionSpec::uniform(-1.0, 3.0).unwrap(),
            DistributionSpec::exponential(0.7).unwrap(),
            DistributionSpec::normal(0.5, 1.5).unwrap(),
            DistributionSpec::beta(2.0, 3.0).unwrap(),
        ];
        for d in cases {
            let (lo, _) = d.quadrature_window();
            for t in [0.2, 0.9, 2.0] {
                let m1 = quad::integrate(
                    |x| x * d.density(x).unwrap(),
                    lo.min(t) - 0.0,
                    t,
                    &QuadOptions::default(),
                )
                .unwrap()
                .value;
                assert_abs_diff_eq!(d.partial_m1(t), m1, epsilon = 1e-8);
                let m2 = quad::integrate(
                    |x| x * x * d.density(x).unwrap(),
                    lo.min(t),
                    t,
                    &QuadOptions::default(),
                )
                .unwrap()
                .value;
                assert_abs_diff_eq!(d.partial_m2(t), m2, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn cell_stats_uniform_halves() {
        let u = DistributionSpec::uniform(0.0, 2.0).unwrap();
        let part = PartitionSpec::new(vec![1.0]).unwrap();
        let cells = u.cell_stats(&part).unwrap();
        assert_eq!(cells.len(), 2);
        for (cell, mu) in cells.iter().zip([0.5, 1.5]) {
            assert_abs_diff_eq!(cell.mass, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(cell.mean.unwrap(), mu, epsilon = 1e-12);
            assert_abs_diff_eq!(cell.variance.unwrap(), 1.0 / 12.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn cell_stats_trivial_partition_reproduces_moments() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let cells = e.cell_stats(&PartitionSpec::new(vec![]).unwrap()).unwrap();
        assert_eq!(cells.len(), 1);
        assert_abs_diff_eq!(cells[0].mass, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cells[0].mean.unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cells[0].variance.unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn cell_stats_law_of_total_expectation() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let part = PartitionSpec::new(vec![1.0, 3.0]).unwrap();
        let cells = e.cell_stats(&part).unwrap();
        let total_mass: f64 = cells.iter().map(|c| c.mass).sum();
        let total_mean: f64 = cells
            .iter()
            .filter_map(|c| Some(c.mass * c.mean?))
            .sum();
        assert_abs_diff_eq!(total_mass, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(total_mean, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn parse_spec_strings() {
        assert_eq!(
            DistributionSpec::parse("uniform:0,2").unwrap(),
            DistributionSpec::uniform(0.0, 2.0).unwrap()
        );
        assert_eq!(
            DistributionSpec::parse("exp:1").unwrap(),
            DistributionSpec::exponential(1.0).unwrap()
        );
        assert_eq!(
            DistributionSpec::parse("discrete:0=0.5,2=0.5").unwrap(),
            DistributionSpec::finite_discrete(&[(0.0, 0.5), (2.0, 0.5)]).unwrap()
        );
        assert_eq!(
            DistributionSpec::parse("bernoulli:0.4").unwrap(),
            DistributionSpec::finite_discrete(&[(0.0, 0.6), (1.0, 0.4)]).unwrap()
        );
        assert!(DistributionSpec::parse("uniform:2,0").is_err());
        assert!(DistributionSpec::parse("cauchy:0,1").is_err());
    }

    #[test]
    fn empirical_from_csv_text() {
        let d = DistributionSpec::empirical_from_csv("# samples\n1.0\n\n2.5\n3.0\n").unwrap();
        assert_eq!(
            d,
            DistributionSpec::empirical(&[1.0, 2.5, 3.0]).unwrap()
        );
        assert!(DistributionSpec::empirical_from_csv("1.0\nnope\n").is_err());
        assert!(DistributionSpec::empirical_from_csv("1.0\n").is_err());
    }

    #[test]
    fn discrete_constructor_validation() {
        assert!(DistributionSpec::finite_discrete(&[(0.0, 0.5), (1.0, 0.6)]).is_err());
        assert!(DistributionSpec::finite_discrete(&[(0.0, -0.1), (1.0, 1.1)]).is_err());
        // Single atom: a valid point mass.
        let pm = DistributionSpec::finite_discrete(&[(1.0, 1.0)]).unwrap();
        assert_eq!(pm.support_hull(), (1.0, 1.0));
        assert!(pm.support().is_err());
        let m = pm.moments().unwrap();
        assert_eq!((m.sigma2, m.gamma3, m.gamma4), (0.0, 0.0, 1.0));
    }

    #[test]
    fn effective_law_insets_open_domain_boundary() {
        let u = DistributionSpec::uniform(0.0, 2.0).unwrap();
        let law = EffectiveLaw::for_phi(&u, &PhiModel::Reciprocal).unwrap();
        assert!(law.truncated);
        assert!(law.lo > 0.0 && law.lo < 1e-11);
        assert_eq!(law.hi, 2.0);
        // neg_exp needs no window at all on a bounded support.
        let plain = EffectiveLaw::for_phi(&u, &PhiModel::NegExp).unwrap();
        assert!(!plain.truncated);
        assert_eq!((plain.lo, plain.hi), (0.0, 2.0));
    }

    #[test]
    fn effective_law_rejects_real_mass_outside_domain() {
        let n = DistributionSpec::normal(0.0, 1.0).unwrap();
        assert!(EffectiveLaw::for_phi(&n, &PhiModel::NegLog).is_err());
        let d = DistributionSpec::finite_discrete(&[(0.0, 0.5), (1.0, 0.5)]).unwrap();
        assert!(EffectiveLaw::for_phi(&d, &PhiModel::Reciprocal).is_err());
    }

    #[test]
    fn effective_law_conditional_moments() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let law = EffectiveLaw::for_phi(&e, &PhiModel::NegExp).unwrap();
        assert!(law.truncated);
        let m = law.moments().unwrap();
        // Conditioning on 1 - 1e-12 of the mass barely moves anything.
        assert_abs_diff_eq!(m.mu, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.sigma2, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.gamma3, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(m.gamma4, 9.0, epsilon = 1e-5);
    }

    #[test]
    fn law_of_total_variance_via_cells() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let law = EffectiveLaw::plain(&e);
        let cells = law.cells(&[0.5, 2.0, 5.0]);
        let mu = law.mean();
        let mut within = 0.0;
        let mut between = 0.0;
        for (_, _, c) in &cells {
            if let (Some(m), Some(v)) = (c.mean, c.variance) {
                within += c.mass * v;
                between += c.mass * (m - mu) * (m - mu);
            }
        }
        assert_abs_diff_eq!(within + between, law.variance(), epsilon = 1e-8);
    }

    #[test]
    fn gamma4_dominates_gamma3() {
        let laws = [
            DistributionSpec::uniform(-2.0, 5.0).unwrap(),
            DistributionSpec::exponential(2.0).unwrap(),
            DistributionSpec::normal(0.0, 1.0).unwrap(),
            DistributionSpec::beta(2.0, 5.0).unwrap(),
            DistributionSpec::finite_discrete(&[(0.0, 0.5), (2.0, 0.5)]).unwrap(),
            DistributionSpec::empirical(&[0.0, 0.1, 0.4, 2.0, 7.0]).unwrap(),
        ];
        for d in laws {
            let m = d.moments().unwrap();
            assert!(
                m.gamma4 >= m.gamma3 * m.gamma3 + 1.0 - 1e-12,
                "gamma4 {} vs gamma3 {}",
                m.gamma4,
                m.gamma3
            );
        }
    }
}

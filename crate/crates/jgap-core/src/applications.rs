//! Application studies built on the bound suite: Rényi-2 entropy lower
//! bounds, the reverse Pinsker inequality, and the fourth-order expansion
//! of Rayleigh-fading ergodic capacity.
//!
//! All information quantities are in nats; unit conversion is a display
//! concern and lives in the CLI.

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::distributions::{DistributionSpec, EffectiveLaw};
use crate::error::{Error, Result};
use crate::functions::PhiModel;
use crate::quad::QuadOptions;

/// Entropy versus the Rényi-2 (informational-energy) lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Informational energy E = ∫ f² (or Σ pᵢ² for discrete laws).
    pub energy: f64,
    /// −ln E, the Rényi entropy of order 2.
    pub renyi2_bound: f64,
    /// Second-order estimate of the entropy deficit h(X) − (−ln E):
    /// Var(f(X)) / (2E²), the curvature refinement of −ln around E[f(X)].
    pub gap_estimate: f64,
    /// h(X) = −E[ln f(X)] by quadrature (or Shannon entropy for discrete).
    pub entropy_oracle: f64,
}

/// Entropy bounds for a law with a density, or Shannon entropy for a
/// finite discrete law. Empirical laws have no density and are rejected.
pub fn entropy_bounds(dist: &DistributionSpec) -> Result<EntropyReport> {
    match dist {
        DistributionSpec::Empirical { .. } => Err(Error::NoDensity(
            "empirical laws have no density; entropy bounds need one".into(),
        )),
        DistributionSpec::FiniteDiscrete { points } => {
            let energy: f64 = points.iter().map(|&(_, p)| p * p).sum();
            let mean_sq: f64 = points.iter().map(|&(_, p)| p * p * p).sum();
            let var = (mean_sq - energy * energy).max(0.0);
            Ok(EntropyReport {
                energy,
                renyi2_bound: -energy.ln(),
                gap_estimate: var / (2.0 * energy * energy),
                entropy_oracle: -points.iter().map(|&(_, p)| p * p.ln()).sum::<f64>(),
            })
        }
        _ => {
            let law = EffectiveLaw::plain(dist);
            let opts = QuadOptions::default();
            // E[f(X)] = ∫ f², E[f(X)²] = ∫ f³.
            let energy = law
                .expect(|x| dist.density(x).unwrap_or(0.0), &opts)?
                .value;
            let mean_sq = law
                .expect(
                    |x| {
                        let f = dist.density(x).unwrap_or(0.0);
                        f * f
                    },
                    &opts,
                )?
                .value;
            let var = (mean_sq - energy * energy).max(0.0);
            let entropy = law
                .expect(
                    |x| {
                        let f = dist.density(x).unwrap_or(0.0);
                        if f > 0.0 {
                            -f.ln()
                        } else {
                            0.0
                        }
                    },
                    &opts,
                )?
                .value;
            Ok(EntropyReport {
                energy,
                renyi2_bound: -energy.ln(),
                gap_estimate: var / (2.0 * energy * energy),
                entropy_oracle: entropy,
            })
        }
    }
}

/// Reverse-Pinsker comparison of KL divergence against scaled χ² divergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    /// D_KL(P‖Q) in nats.
    pub kl: f64,
    /// χ²(Q‖P).
    pub chi2_q_p: f64,
    /// inf_i pᵢ/qᵢ.
    pub inf_ratio: f64,
    /// (inf P/Q)² χ²(Q‖P)/2, the claimed lower bound on the KL divergence.
    pub bound: f64,
    pub holds: bool,
}

/// KL(P‖Q) ≥ ½ (inf P/Q)² χ²(Q‖P) for strictly positive finite laws on the
/// same support points.
pub fn reverse_pinsker(p: &DistributionSpec, q: &DistributionSpec) -> Result<DivergenceReport> {
    let (p_pts, q_pts) = match (p, q) {
        (
            DistributionSpec::FiniteDiscrete { points: p_pts },
            DistributionSpec::FiniteDiscrete { points: q_pts },
        ) => (p_pts, q_pts),
        _ => {
            return Err(Error::SupportMismatch(
                "reverse Pinsker needs two finite discrete laws".into(),
            ))
        }
    };
    if p_pts.len() != q_pts.len()
        || p_pts
            .iter()
            .zip(q_pts)
            .any(|(&(vp, _), &(vq, _))| vp != vq)
    {
        return Err(Error::SupportMismatch(
            "P and Q must share identical support points".into(),
        ));
    }
    let mut kl = 0.0;
    let mut chi2 = 0.0;
    let mut inf_ratio = f64::INFINITY;
    for (&(_, pi), &(_, qi)) in p_pts.iter().zip(q_pts) {
        if pi <= 0.0 || qi <= 0.0 {
            return Err(Error::ZeroProbability(
                "both laws must be strictly positive on the support".into(),
            ));
        }
        kl += pi * (pi / qi).ln();
        chi2 += (qi - pi) * (qi - pi) / pi;
        inf_ratio = inf_ratio.min(pi / qi);
    }
    let bound = 0.5 * inf_ratio * inf_ratio * chi2;
    Ok(DivergenceReport {
        kl,
        chi2_q_p: chi2,
        inf_ratio,
        bound,
        holds: kl >= bound - 1e-12,
    })
}

/// Ergodic capacity of a Rayleigh fading channel at one SNR, in nats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub snr: f64,
    /// ln(1 + ρ): the concave-Jensen upper bound.
    pub jensen_upper: f64,
    /// Fourth-order expansion ln(1+ρ) − r²/2 + 2r³/3 − 9r⁴/4, r = ρ/(1+ρ).
    pub fourth_order_approx: f64,
    /// Quadrature of E[ln(1+ργ)], γ ~ Exp(1).
    pub oracle: f64,
    /// The four expansion terms in order: value at the mean, variance,
    /// skewness and kurtosis contributions.
    pub terms: [f64; 4],
}

/// Fourth-order capacity expansion for γ ~ Exp(1): the exact Exp(1)
/// moments (μ, σ², γ₃, γ₄) = (1, 1, 2, 9) feed the generic expansion of
/// ln(1 + ρx) around the mean.
pub fn rayleigh_capacity(snr: f64) -> Result<CapacityReport> {
    if !snr.is_finite() || snr <= 0.0 {
        return Err(Error::InvalidSpec(format!("SNR must be positive, got {snr}")));
    }
    let phi = PhiModel::log1p_snr(snr)?;
    let gamma = DistributionSpec::exponential(1.0)?;
    let terms = bounds::fourth_order_terms(&phi, &gamma.moments()?);
    let oracle = crate::oracle::expect(&gamma, &phi, 1e-9)?.expectation;
    Ok(CapacityReport {
        snr,
        jensen_upper: snr.ln_1p(),
        fourth_order_approx: terms.iter().sum(),
        oracle,
        terms,
    })
}

/// The r → 1 limit of the three correction terms: −1/2 + 2/3 − 9/4.
pub fn high_snr_correction_sum() -> f64 {
    -0.5 + 2.0 / 3.0 - 9.0 / 4.0
}

//! Shared fixtures for the benchmark targets.

use jgap_core::{DistributionSpec, PhiModel};

pub fn table_scenario() -> (DistributionSpec, PhiModel) {
    (
        DistributionSpec::uniform(0.0, 2.0).expect("valid fixture"),
        PhiModel::NegExp,
    )
}

pub fn fading_scenario() -> (DistributionSpec, PhiModel) {
    (
        DistributionSpec::exponential(1.0).expect("valid fixture"),
        PhiModel::log1p_snr(10.0).expect("valid fixture"),
    )
}

pub fn skewed_scenario() -> (DistributionSpec, PhiModel) {
    (
        DistributionSpec::beta(2.0, 5.0).expect("valid fixture"),
        PhiModel::exp_scaled(0.8),
    )
}

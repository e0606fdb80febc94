//! Run configuration shared by all subcommands.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }

    /// Factor converting a value in nats into this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

/// Flags common to every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct CommonOpts {
    pub tol: f64,
    pub seed: u64,
    pub format: OutputFormat,
    pub units: Units,
}

impl Default for CommonOpts {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            seed: 42,
            format: OutputFormat::Markdown,
            units: Units::Nats,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    /// Full bound suite for one (distribution, φ) pair.
    Gap {
        dist: Option<String>,
        phi: String,
        cuts: Vec<f64>,
        /// Raw CSV text of empirical samples (already read from disk).
        samples_csv: Option<String>,
        /// Append a seeded Monte-Carlo cross-check row.
        mc_check: bool,
    },
    /// The fixed Uniform(0,2) × e^{−x} comparison table.
    Table1,
    /// Rayleigh ergodic capacity per SNR.
    Capacity { snr: Vec<f64> },
    /// Reverse-Pinsker comparison of two discrete laws.
    Kl { p: String, q: String },
    /// Entropy versus the Rényi-2 lower bound.
    Entropy {
        dist: Option<String>,
        samples_csv: Option<String>,
    },
    /// MGF sandwich per exponent.
    Mgf {
        dist: Option<String>,
        t: Vec<f64>,
        samples_csv: Option<String>,
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub common: CommonOpts,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), crate::CliError> {
        if !(self.common.tol > 0.0 && self.common.tol <= 1e-3) {
            return Err(crate::CliError::Usage(format!(
                "--tol must lie in (0, 1e-3], got {}",
                self.common.tol
            )));
        }
        Ok(())
    }
}

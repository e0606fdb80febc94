//! Command implementations behind the `jgap` binary.
//!
//! Each command builds a typed, serde-serializable report; CSV and markdown
//! renderings are derived from the same report, so every output format
//! carries identical numbers. CSV cells print floats with 10 significant
//! digits for golden-file testing; JSON uses shortest-round-trip encoding,
//! so `parse(emit(report)) == report`.

pub mod commands;
pub mod config;
pub mod render;

use config::{OutputFormat, RunConfig};

/// CLI failure modes, ordered by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unparseable specs: exit 2.
    Usage(String),
    /// Valid input, but the requested quantity does not apply
    /// (domain mismatch, missing density, non-convex φ): exit 3.
    Inapplicable(String),
    /// Numerical failure (quadrature budget, divergent moment): exit 1.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Inapplicable(_) => 3,
            CliError::Numeric(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Inapplicable(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<jgap_core::Error> for CliError {
    fn from(e: jgap_core::Error) -> Self {
        use jgap_core::Error::*;
        match e {
            InvalidSpec(m) => CliError::Usage(m),
            DomainMismatch(m) | NoDensity(m) | NonConvex(m) | SupportMismatch(m)
            | ZeroProbability(m) => CliError::Inapplicable(m),
            QuadratureFailure(m) | NonFiniteMoment(m) => CliError::Numeric(m),
        }
    }
}

/// Run one command and render its report in the requested format.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    use config::Command::*;
    match &cfg.command {
        Gap {
            dist,
            phi,
            cuts,
            samples_csv,
            mc_check,
        } => {
            let report = commands::gap(
                dist.as_deref(),
                phi,
                cuts,
                samples_csv.as_deref(),
                *mc_check,
                &cfg.common,
            )?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
        Table1 => {
            let report = commands::table1(&cfg.common)?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
        Capacity { snr } => {
            let report = commands::capacity(snr, &cfg.common)?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
        Kl { p, q } => {
            let report = commands::kl(p, q, &cfg.common)?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
        Entropy { dist, samples_csv } => {
            let report = commands::entropy(dist.as_deref(), samples_csv.as_deref(), &cfg.common)?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
        Mgf {
            dist,
            t,
            samples_csv,
        } => {
            let report = commands::mgf(dist.as_deref(), t, samples_csv.as_deref(), &cfg.common)?;
            render_report(&report, report.to_table(), cfg.common.format)
        }
    }
}

fn render_report<R: serde::Serialize>(
    report: &R,
    table: render::Table,
    format: OutputFormat,
) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::Numeric(format!("JSON encoding failed: {e}"))),
        OutputFormat::Csv => Ok(table.to_csv()),
        OutputFormat::Markdown => Ok(table.to_markdown()),
    }
}

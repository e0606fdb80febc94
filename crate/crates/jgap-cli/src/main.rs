use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jgap_cli::config::{Command, CommonOpts, OutputFormat, RunConfig, Units};
use jgap_cli::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Markdown,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum UnitsArg {
    Nats,
    Bits,
}

impl From<UnitsArg> for Units {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Nats => Units::Nats,
            UnitsArg::Bits => Units::Bits,
        }
    }
}

/// Jensen-gap refinement bounds, verified against quadrature oracles.
#[derive(Parser, Debug)]
#[command(name = "jgap", version, about)]
struct Cli {
    /// Quadrature error target, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for Monte-Carlo cross-checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Markdown)]
    format: FormatArg,

    /// Unit for information quantities (capacity, entropy, divergence).
    #[arg(long, global = true, value_enum, default_value_t = UnitsArg::Nats)]
    units: UnitsArg,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the full bound suite for one (distribution, function) pair.
    Gap {
        /// Distribution spec, e.g. uniform:0,2 or exp:1.
        #[arg(long)]
        dist: Option<String>,
        /// Function spec, e.g. neg_exp or log1p:rho=10.
        #[arg(long)]
        phi: String,
        /// Partition cut points (comma separated) for the partitioned bound.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        cuts: Vec<f64>,
        /// CSV file of empirical samples (one per line, '#' comments).
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Append a seeded Monte-Carlo oracle cross-check row.
        #[arg(long)]
        mc_check: bool,
    },
    /// Fixed comparison table: E[e^{-X}] for X ~ Uniform(0,2).
    Table1,
    /// Rayleigh-fading ergodic capacity per SNR.
    Capacity {
        /// SNR value ρ > 0 (repeatable).
        #[arg(long, allow_negative_numbers = true)]
        snr: Vec<f64>,
    },
    /// Reverse-Pinsker comparison of two discrete laws.
    Kl {
        /// P spec, e.g. bernoulli:0.5 or discrete:0=0.5,1=0.5.
        #[arg(long)]
        p: String,
        /// Q spec over the same support points.
        #[arg(long)]
        q: String,
    },
    /// Differential/Shannon entropy versus the Renyi-2 lower bound.
    Entropy {
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Moment-generating-function sandwich per exponent t.
    Mgf {
        #[arg(long)]
        dist: Option<String>,
        /// Exponent t (repeatable); defaults to -1, 0.5, 1, 2.
        #[arg(long, allow_negative_numbers = true)]
        t: Vec<f64>,
        #[arg(long)]
        samples: Option<PathBuf>,
    },
}

fn read_samples(path: &Option<PathBuf>) -> Result<Option<String>, CliError> {
    match path {
        None => Ok(None),
        Some(p) => std::fs::read_to_string(p)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))),
    }
}

fn build_config(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let common = CommonOpts {
        tol: cli.tol,
        seed: cli.seed,
        format: cli.format.into(),
        units: cli.units.into(),
    };
    let command = match cli.command {
        Cmd::Gap {
            dist,
            phi,
            cuts,
            samples,
            mc_check,
        } => Command::Gap {
            dist,
            phi,
            cuts,
            samples_csv: read_samples(&samples)?,
            mc_check,
        },
        Cmd::Table1 => Command::Table1,
        Cmd::Capacity { snr } => Command::Capacity { snr },
        Cmd::Kl { p, q } => Command::Kl { p, q },
        Cmd::Entropy { dist, samples } => Command::Entropy {
            dist,
            samples_csv: read_samples(&samples)?,
        },
        Cmd::Mgf { dist, t, samples } => Command::Mgf {
            dist,
            t,
            samples_csv: read_samples(&samples)?,
        },
    };
    let cfg = RunConfig { command, common };
    cfg.validate()?;
    Ok((cfg, cli.out))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let (cfg, out) = build_config(cli)?;
    let rendered = jgap_cli::execute(&cfg)?;
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| CliError::Numeric(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jgap: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

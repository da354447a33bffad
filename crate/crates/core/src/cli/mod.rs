//! Command-line front end for the `patint` binary.
//!
//! Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
//! 4 input that parses but fails validation.

pub mod commands;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{
    cmd_correlate, cmd_count, cmd_robustness, cmd_sections, cmd_simulate, correlate,
    load_records, CommandReport, CorrelationReport, OutputFormat, Predictor, RunConfig,
    SimulateOptions, DEFAULT_SEED,
};

use crate::error::Error;
use crate::reference::KwMode;
use crate::stats::robustness::{DEFAULT_GROUPS, DEFAULT_GROUP_SIZE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "patint",
    version,
    about = "Patent keyword mining and improvement-rate analysis",
    after_help = "Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input, 4 input that fails validation."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split patent texts into title, abstract, background and summary.
    Sections(CommonArgs),
    /// Count keywords per domain.
    Count(CommonArgs),
    /// Correlate improvement rate with keyword intensity.
    Correlate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "inv-kw")]
        predictor: PredictorArg,
    },
    /// Repeat the correlation on random subsets of domains.
    Robustness {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = DEFAULT_GROUP_SIZE)]
        group_size: usize,
        #[arg(long, default_value_t = DEFAULT_GROUPS)]
        groups: usize,
    },
    /// Cost curves from the interaction model and the stochastic design search.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        sim: SimulateArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Corpus directory, sections directory or count table.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Use the bundled 28-domain reference data.
    #[arg(long)]
    pub bundled: bool,
    #[arg(long)]
    pub rules: Option<PathBuf>,
    #[arg(long)]
    pub registry: Option<PathBuf>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// CSV of `domain,k_percent`.
    #[arg(long)]
    pub rates: Option<PathBuf>,
    /// Domain to leave out; repeatable. `none` keeps every domain.
    #[arg(long)]
    pub exclude: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Comma-separated: table, json, svg.
    #[arg(long, value_delimiter = ',', default_value = "table,json")]
    pub format: Vec<String>,
    #[arg(long, value_enum)]
    pub kw_mode: Option<KwModeArg>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long = "d", value_delimiter = ',', default_value = "1,2,3")]
    pub ds: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub m_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 50)]
    pub components: usize,
    #[arg(long, default_value_t = 100_000)]
    pub attempts: usize,
    #[arg(long, default_value_t = 100)]
    pub replicas: usize,
    #[arg(long)]
    pub analytic_only: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PredictorArg {
    InvKw,
    Kw,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KwModeArg {
    Published,
    FullPrecision,
}

impl CommonArgs {
    pub fn to_config(&self) -> Result<RunConfig, String> {
        let mut formats = std::collections::BTreeSet::new();
        for f in &self.format {
            formats.insert(OutputFormat::parse(f).ok_or_else(|| format!("unknown format {f:?}"))?);
        }
        let exclusions = if self.exclude.is_empty() {
            RunConfig::default().exclusions
        } else if self.exclude.iter().any(|e| e.eq_ignore_ascii_case("none")) {
            Vec::new()
        } else {
            self.exclude.clone()
        };
        if !self.bundled && self.input.is_none() {
            return Err("either --input or --bundled is required".into());
        }
        Ok(RunConfig {
            input: self.input.clone(),
            bundled: self.bundled,
            rules: self.rules.clone(),
            registry: self.registry.clone(),
            stopwords: self.stopwords.clone(),
            rates: self.rates.clone(),
            exclusions,
            seed: self.seed,
            out: self.out.clone(),
            formats,
            kw_mode: self.kw_mode.map(|m| match m {
                KwModeArg::Published => KwMode::Published,
                KwModeArg::FullPrecision => KwMode::FullPrecision,
            }),
        })
    }
}

impl SimulateArgs {
    pub fn to_options(&self) -> SimulateOptions {
        SimulateOptions {
            ds: self.ds.clone(),
            b: self.b,
            m_max: self.m_max,
            step: self.step,
            n_components: self.components,
            attempts: self.attempts,
            replicas: self.replicas,
            analytic_only: self.analytic_only,
            ..SimulateOptions::default()
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_VALIDATION
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<CommandReport, (i32, String)> {
    let usage = |m: String| (EXIT_USAGE, m);
    let res = match &cli.command {
        Command::Sections(c) => cmd_sections(&c.to_config().map_err(usage)?),
        Command::Count(c) => cmd_count(&c.to_config().map_err(usage)?),
        Command::Correlate { common, predictor } => {
            let p = match predictor {
                PredictorArg::InvKw => Predictor::InvKw,
                PredictorArg::Kw => Predictor::Kw,
            };
            cmd_correlate(&common.to_config().map_err(usage)?, p)
        }
        Command::Robustness {
            common,
            group_size,
            groups,
        } => cmd_robustness(&common.to_config().map_err(usage)?, *group_size, *groups),
        Command::Simulate { common, sim } => {
            let cfg = common_for_simulate(common).map_err(usage)?;
            cmd_simulate(&cfg, &sim.to_options())
        }
    };
    res.map_err(|e| (exit_code(&e), e.to_string()))
}

// simulate reads no input, so --input/--bundled are optional there
fn common_for_simulate(c: &CommonArgs) -> Result<RunConfig, String> {
    let mut c = c.clone();
    c.bundled = true;
    c.to_config()
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            for f in &report.files {
                eprintln!("wrote {}", f.display());
            }
            println!("{}", report.summary);
            EXIT_OK
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

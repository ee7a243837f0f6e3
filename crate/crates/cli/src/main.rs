//! `summing-lab`: norms, summing estimates, counterexample series and
//! property suites from the command line.
//!
//! Exit codes: 0 when every assertion passes, 1 when one fails, 2 for usage,
//! configuration or precondition errors.

mod checks;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use summing_lab::{Budget, Exponent};

use report::Report;

#[derive(Debug, Parser)]
#[command(name = "summing-lab", version, about = "Summability norms and operator-ideal experiments on finite sections of l_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Strong, weak and weak* p-norms of a sequence
    Norm(NormArgs),
    /// pi_p, its dual and lt_p estimates for a matrix
    Summing(SummingArgs),
    /// Divergence series of the failure constructions
    Counterexample(CounterexampleArgs),
    /// Property suites over a seeded random corpus
    Check(CheckArgs),
    /// Re-run the configuration embedded in a JSON report
    Replay {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Summing(_) => "summing",
            Command::Counterexample(_) => "counterexample",
            Command::Check(_) => "check",
            Command::Replay { .. } => "replay",
        }
    }

    fn common(&self) -> Option<&Common> {
        match self {
            Command::Norm(a) => Some(&a.common),
            Command::Summing(a) => Some(&a.common),
            Command::Counterexample(a) => Some(&a.common),
            Command::Check(a) => Some(&a.common),
            Command::Replay { .. } => None,
        }
    }

    fn common_mut(&mut self) -> Option<&mut Common> {
        match self {
            Command::Norm(a) => Some(&mut a.common),
            Command::Summing(a) => Some(&mut a.common),
            Command::Counterexample(a) => Some(&mut a.common),
            Command::Check(a) => Some(&mut a.common),
            Command::Replay { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every experiment.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Search effort as STARTSxITERATIONS
    #[arg(long, default_value = "32x500", value_parser = parse_budget)]
    pub budget: Budget,
    /// Tolerance for assertions (command-specific default)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file; the destination is not part of the experiment config
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected STARTSxITERATIONS, got `{s}`"))?;
    let starts: usize = a.trim().parse().map_err(|_| format!("bad start count `{a}`"))?;
    let iterations: usize = b.trim().parse().map_err(|_| format!("bad iteration count `{b}`"))?;
    if starts == 0 {
        return Err("need at least one start".into());
    }
    Ok(Budget::new(starts, iterations))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqGen {
    Basis,
    Random,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NormArgs {
    /// Summability exponent
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// Ambient exponent of l_q^d (defaults to p)
    #[arg(long)]
    pub q: Option<Exponent>,
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    /// Sequence length (defaults to d)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = SeqGen::Basis)]
    pub seq: SeqGen,
    /// Sequence JSON file; overrides the generator
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Assertion to evaluate: weak<=strong, weak-exact, strong-finite
    #[arg(long = "assert")]
    pub asserts: Vec<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatGen {
    Identity,
    Random,
    /// E_alpha for alpha = ((1, 1/2), (1/4, 0)) on c_0 -> l_1
    EalphaFixed,
    /// E_alpha for a random l_1 block sequence
    Ealpha,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SummingArgs {
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// Witness tuple size (defaults to min(d_in, 6))
    #[arg(long)]
    pub m: Option<usize>,
    /// Matrix JSON file; overrides the generator
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MatGen::Identity)]
    pub gen: MatGen,
    /// Output dimension (and input dimension unless --n is given)
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "2")]
    pub domain: Exponent,
    #[arg(long, default_value = "2")]
    pub codomain: Exponent,
    /// Skip the lt_p search
    #[arg(long)]
    pub skip_lt: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Case1,
    Case2,
    Case3,
    Cor312,
    Holder,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CounterexampleArgs {
    #[arg(value_enum)]
    pub case: Case,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    #[arg(long)]
    pub r: Option<Exponent>,
    #[arg(long)]
    pub s: Option<Exponent>,
    /// Largest truncation (defaults: 16384 for case1, 1000000 otherwise, 10000 for holder)
    #[arg(long)]
    pub nmax: Option<u64>,
    /// cor312: replace the pairing functional by zero
    #[arg(long)]
    pub zero_beta: bool,
    /// holder: coefficients n^-gamma (1 + ln n)^-kappa
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 2.0)]
    pub kappa: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Pairing sums against weak* and strong norms
    Pairing,
    /// weak <= lt_p <= strong
    Chain,
    /// Certificates dominate the generated set
    Domination,
    /// Certificate exists iff the double array is summable
    Certificate,
    /// pi_1 of E_alpha on c_0 -> l_1
    Ealpha,
    /// pi_2 search against Hilbert-Schmidt
    Hilbert,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Summability exponent (suite-specific default)
    #[arg(long)]
    pub p: Option<Exponent>,
    /// Largest dimension in the corpus
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

fn execute(command: &Command) -> anyhow::Result<Report> {
    let start = Instant::now();
    let (results, assertions, csv) = match command {
        Command::Norm(a) => commands::norm(a)?,
        Command::Summing(a) => commands::summing(a)?,
        Command::Counterexample(a) => commands::counterexample(a)?,
        Command::Check(a) => checks::run(a)?,
        Command::Replay { .. } => unreachable!("replay is resolved before execution"),
    };
    let mut report = Report::new(command.name(), serde_json::to_value(command)?, results, assertions);
    report.csv = csv;
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut command = cli.command;
    if let Command::Replay { report, out } = &command {
        let text = std::fs::read_to_string(report).with_context(|| format!("reading {}", report.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", report.display()))?;
        let config = value.get("config").cloned().context("report has no config")?;
        let out = out.clone();
        command = serde_json::from_value(config).context("bad embedded config")?;
        if let Some(c) = command.common_mut() {
            c.out = out;
        }
    }
    let report = execute(&command)?;
    let common = command.common().expect("experiment commands carry common options");
    report::emit(&report, common)?;
    Ok(report.passed)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("SUMMING_LAB_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("SUMMING_LAB_THREADS must be a count, got `{v}`"))?;
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
        #[cfg(not(feature = "parallel"))]
        let _ = n;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| run(cli));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // configuration, input and precondition errors
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

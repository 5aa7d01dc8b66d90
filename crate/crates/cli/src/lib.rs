//! Library surface of the batch front end, exposed so integration tests can
//! drive the commands in-process.

pub mod artifacts;
pub mod commands {
    pub mod analyze;
    pub mod automata_cmd;
    pub mod geometry;
}
pub mod config;

use clap::{Args, Parser, Subcommand};
use config::{Mode, RunConfig};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "cosetnet",
    about = "Minimal-length coset transversals of group families: exact Cayley geometry, geodesic automata, and empirical net certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full pipeline: geometry, automata, brute force, crosscheck, report.
    Analyze(CommonArgs),
    /// Build and export one automaton from the pipeline.
    Automata(AutomataArgs),
    /// Geometry profile only.
    Geometry(CommonArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Group spec: free:K, zfree:D, fpc:M,N or surface:G.
    #[arg(long)]
    pub group: Option<String>,
    /// Comma-separated subgroup generator words (caret repeats: a^2,b^2).
    #[arg(long, default_value = "")]
    pub subgroup: String,
    #[arg(long)]
    pub radius: Option<u32>,
    /// Signature radius override.
    #[arg(long)]
    pub k: Option<u32>,
    /// Word-difference bound override.
    #[arg(long)]
    pub difference_bound: Option<u32>,
    /// Same-coset constant override.
    #[arg(long)]
    pub c1: Option<i64>,
    /// `exhaustive` or `sampled:N`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Also evaluate and compare the union-over-radii transversal form.
    #[arg(long)]
    pub diagnostic: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub outdir: Option<PathBuf>,
    /// key=value config file; explicit flags win on conflict.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AutomataArgs {
    /// Which automaton: lambda, Ln:N, S, P:c, R or Rc:c.
    #[arg(long)]
    pub which: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

impl CommonArgs {
    pub fn to_run_config(&self) -> cosetnet_core::error::Result<RunConfig> {
        let mut config = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)?;
            config.apply_file_text(&text)?;
        }
        if let Some(group) = &self.group {
            config.group = group.clone();
        }
        if !self.subgroup.is_empty() || self.group.is_some() {
            // An explicit --subgroup (possibly empty alongside --group)
            // overrides the file.
            config.subgroup = self.subgroup.clone();
        }
        if let Some(radius) = self.radius {
            config.radius = radius;
        }
        if self.k.is_some() {
            config.signature_radius = self.k;
        }
        if self.difference_bound.is_some() {
            config.difference_bound = self.difference_bound;
        }
        if self.c1.is_some() {
            config.c1 = self.c1;
        }
        if let Some(mode) = &self.mode {
            config.mode = Mode::parse(mode)?;
        }
        if self.diagnostic {
            config.diagnostic = true;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(workers) = self.workers {
            config.workers = workers;
        }
        if let Some(outdir) = &self.outdir {
            config.outdir = outdir.clone();
        }
        if config.group.is_empty() {
            return Err(cosetnet_core::error::Error::GroupSpecParse {
                input: String::new(),
                reason: "--group is required (flag or config file)".into(),
            });
        }
        Ok(config)
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Analyze(args) => args
            .to_run_config()
            .and_then(|config| commands::analyze::run(&config)),
        Command::Geometry(args) => args
            .to_run_config()
            .and_then(|config| commands::geometry::run(&config)),
        Command::Automata(args) => args.common.to_run_config().and_then(|config| {
            let which = commands::automata_cmd::Which::parse(&args.which)?;
            commands::automata_cmd::run(&config, &which)
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Usage problems exit 2; failed runs and internal errors exit 1.
fn exit_code_for(e: &cosetnet_core::error::Error) -> i32 {
    use cosetnet_core::error::Error;
    match e {
        Error::WordParse { .. }
        | Error::GroupSpecParse { .. }
        | Error::UnsupportedFamily(..)
        | Error::SymbolNotInAlphabet(..) => 2,
        _ => 1,
    }
}

//! Command-line front end: the JSON interchange format and one subcommand
//! per construction or check.

pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use commands::{Bounds, Report, DEFAULT_MAX_DIM, EXIT_INVALID};
use format::Document;

#[derive(Debug, Parser)]
#[command(name = "tw2cat", version, about = "Finite twisted 2-cell categories, nerves and their (co)homology")]
pub struct Cli {
    /// Input document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the constructed document (or else the report) here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Simplicial dimension bound.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Ordinal size bound; the default depends on the command.
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    /// Enumeration ceiling; the default depends on the command.
    #[arg(long, global = true)]
    pub ceiling: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Parse and validate a document.
    Validate,
    /// Simplex counts of the nerve of a category.
    Nerve,
    /// Simplex counts of the 2-nerve of a 2-category.
    TwoNerve,
    /// The twisted arrow category.
    Tw,
    /// The twisted 2-cell category.
    Tw2,
    /// The Grothendieck construction of a category-valued functor.
    Groth,
    /// Checks that the Grothendieck projection is opfibered in categories.
    Opfibered,
    /// Tests one 1-cell of a Grothendieck construction for being coCartesian.
    Cocartesian {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        cell: String,
    },
    /// Integral homology of the (2-)nerve.
    Homology,
    /// Derived limits of a diagram of abelian groups.
    Dlim,
    /// Quillen cohomology from derived limits over the twisted 2-cell category.
    Quillen {
        /// `const-Z` or `const-Z/n`.
        #[arg(long, default_value = "const-Z")]
        coeff: String,
        /// Inclusive range `lo..hi`.
        #[arg(long, default_value = "-2..1", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Contractibility of the comma categories of a functor.
    Coinitial,
    /// Compatibility graphs of every map of ordinals up to the size bound.
    AdjSweep,
    /// Components of the bounded comma category of a decorated twisted arrow category.
    AdjComma {
        /// `gp`, `pt` or `spl`.
        #[arg(long)]
        kind: String,
    },
    /// Terminal objects in the fibers of the comparison for B²A.
    PiCheck {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Gap duality of ordinal maps.
    DualCheck,
    /// Triangle identities of the split-ordinal adjunctions.
    SplitAdjointCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Nerve => "nerve",
            Command::TwoNerve => "two-nerve",
            Command::Tw => "tw",
            Command::Tw2 => "tw2",
            Command::Groth => "groth",
            Command::Opfibered => "opfibered",
            Command::Cocartesian { .. } => "cocartesian",
            Command::Homology => "homology",
            Command::Dlim => "dlim",
            Command::Quillen { .. } => "quillen",
            Command::Coinitial => "coinitial",
            Command::AdjSweep => "adj-sweep",
            Command::AdjComma { .. } => "adj-comma",
            Command::PiCheck { .. } => "pi-check",
            Command::DualCheck => "dual-check",
            Command::SplitAdjointCheck => "split-adjoint-check",
        }
    }
}

/// What a run printed and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn execute(cli: &Cli) -> Result<Report> {
    let doc = match &cli.input {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Some(Document::parse(&text)?)
        }
        None => None,
    };
    let bounds = Bounds { max_dim: cli.max_dim, max_size: cli.max_size, ceiling: cli.ceiling };
    commands::dispatch(&cli.command, doc.as_ref(), bounds)
}

/// Parses arguments, runs one command and renders its report.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            return Outcome { code: commands::exit_code(&e), stdout: String::new(), stderr: format!("error: {e:#}\n") };
        }
    };
    let rendered = match cli.format {
        OutputFormat::Human => report.human(),
        OutputFormat::Json => report.json(),
    };
    if let Some(path) = &cli.output {
        let body = match &report.artifact {
            Some(doc) => doc.to_json() + "\n",
            None => rendered.clone(),
        };
        if let Err(e) = fs::write(path, body) {
            return Outcome {
                code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
        if report.artifact.is_none() {
            return Outcome { code: report.exit_code(), stdout: String::new(), stderr: String::new() };
        }
    }
    Outcome { code: report.exit_code(), stdout: rendered, stderr: String::new() }
}

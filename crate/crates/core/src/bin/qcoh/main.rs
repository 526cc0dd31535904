//! `qcoh`: exact small quantum cohomology from the command line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage, I/O or parse error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "qcoh", version, about = "Exact small quantum cohomology engine")]
struct Cli {
    /// Output format; JSON is stable, text is for reading.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List, show or validate ring models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Ring-level checks: flatness, associativity, relations.
    Check(CheckArgs),
    /// Build the J-function and verify it.
    Jfun(JfunArgs),
    /// Descendent invariants from the J-function.
    Gw(GwArgs),
    /// The classical limit `H = e^{t/h}` and the classical equations.
    Classical(ClassicalArgs),
    /// Constant-q theory: the exponential of the quantum product.
    Tilde(TildeArgs),
}

#[derive(Subcommand)]
pub enum ModelsAction {
    /// Names of the built-in models.
    List,
    /// Dump a model document.
    Show { name: String },
    /// Validate a model file.
    Validate { file: PathBuf },
}

#[derive(Args)]
pub struct CheckArgs {
    /// Model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Truncation order in the Novikov variables.
    #[arg(long, default_value_t = qcoh::DEFAULT_ORDER, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Flatness of the connection form.
    #[arg(long)]
    pub flatness: bool,
    /// Associativity over all basis triples.
    #[arg(long)]
    pub assoc: bool,
    /// Relation file (a path, or the name of a shipped file such as gr24.rel).
    #[arg(long)]
    pub relations: Option<String>,
}

#[derive(Args)]
pub struct JfunArgs {
    /// Model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Truncation order in the Novikov variables.
    #[arg(long, default_value_t = qcoh::DEFAULT_ORDER, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Use the hypergeometric closed form.
    #[arg(long, conflicts_with = "solve")]
    pub closed_form: bool,
    /// Solve the first-order system.
    #[arg(long)]
    pub solve: bool,
    /// Operator file whose operators must annihilate J.
    #[arg(long)]
    pub verify: Option<String>,
    /// Row operator file; rebuilds H from J and factors it.
    #[arg(long)]
    pub rows: Option<String>,
    /// Compare against another construction: both built-in ones, or a saved dump.
    #[arg(long)]
    pub diff: bool,
    /// Saved J dump to compare with (implies --diff).
    #[arg(long)]
    pub against: Option<PathBuf>,
    /// Write the full result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GwArgs {
    /// Model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Largest total curve degree.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    /// Largest descendent level; by default the largest the dimension count allows.
    #[arg(long)]
    pub max_level: Option<u32>,
    /// Write the full result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ClassicalArgs {
    /// Model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Operator file; defaults to the shipped one for the model.
    #[arg(long)]
    pub ops: Option<String>,
}

#[derive(Args)]
pub struct TildeArgs {
    /// Model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Order of the exponential in `t`.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..))]
    pub t_order: u32,
    /// Truncation order in the Novikov variables.
    #[arg(long, default_value_t = qcoh::DEFAULT_ORDER, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Operator file; defaults to the shipped one for the model.
    #[arg(long)]
    pub ops: Option<String>,
    /// Write the full result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Models { action } => commands::models(action, cli.format),
        Command::Check(args) => commands::check(args, cli.format),
        Command::Jfun(args) => commands::jfun(args, cli.format),
        Command::Gw(args) => commands::gw(args, cli.format),
        Command::Classical(args) => commands::classical(args, cli.format),
        Command::Tilde(args) => commands::tilde(args, cli.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qcoh: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

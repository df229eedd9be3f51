use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "cycleparity", version, about = "Exact checks of cycle-count identities for permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run exhaustive verification checks.
    Verify(VerifyArgs),
    /// Follow one element through φ or ψ and print every step.
    Trace(TraceArgs),
    /// Print Stirling numbers or the closed-form table.
    Table(TableArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Also write the output to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run every check.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub theorem1: bool,
    #[arg(long)]
    pub eq2: bool,
    #[arg(long)]
    pub eq4: bool,
    #[arg(long)]
    pub phi: bool,
    #[arg(long)]
    pub psi: bool,
    /// Check a single size instead of a range.
    #[arg(long)]
    pub n: Option<usize>,
    /// With --n, restrict eq4 and psi to this k.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Largest n for psi checks in a range run.
    #[arg(long, default_value_t = 7)]
    pub psi_max_n: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// `<cycles> | C=<cycle>` for φ, `<cycles> | C=<cycle> | f: ...` for ψ.
    pub element: String,
    /// Label bound; required for ψ.
    #[arg(long)]
    pub k: Option<usize>,
    /// Reject elements whose ground set is not [n].
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Stirling numbers c(n, i) for n up to --max-n (the default).
    #[arg(long)]
    pub stirling: bool,
    /// (-1)^k k! (n-k-1)! for every k at --n, or for n up to --max-n.
    #[arg(long)]
    pub eq4: bool,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

/// How a command ended.
pub enum Outcome {
    Pass(String),
    Fail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Verify(args) => (commands::verify(args), &args.output),
        Command::Trace(args) => (commands::trace(args), &args.output),
        Command::Table(args) => (commands::table(args), &args.output),
    };
    let (text, code) = match result {
        Ok(Outcome::Pass(text)) => (text, 0),
        Ok(Outcome::Fail(text)) => (text, 1),
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    print!("{text}");
    if let Some(path) = &output.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

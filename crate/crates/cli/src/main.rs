//! `cdlat`: build commutator presentations of class-2 p-groups, compute or
//! verify their Chermak-Delgado lattices, classify lattice shapes, export
//! Hasse diagrams, and replay the named verification scenarios.
//!
//! Exit codes: 0 success, 2 counterexample or failed assertion, 3 budget
//! exceeded, 4 input error.

mod commands;
mod scenario;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cdlat", version, about = "Chermak-Delgado lattice toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation and its predicted lattice
    Build(BuildArgs),
    /// Compute (full) or verify (sampled) the lattice of a presentation
    Cd(CdArgs),
    /// Classify the shape of a lattice file
    Classify(ClassifyArgs),
    /// Export a lattice file as a DOT digraph
    ExportDot(ExportDotArgs),
    /// Run a named verification scenario
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// dd | le | qe | power | abelian
    kind: String,
    /// Prime modulus
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Block count (dd, le)
    #[arg(long)]
    m: Option<usize>,
    /// Per-block width (le, qe)
    #[arg(long)]
    n: Option<usize>,
    /// Iteration count (le, qe)
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Asymmetric split for dd: two comma-separated block sizes, e.g. 2,4
    #[arg(long)]
    split: Option<String>,
    /// Rank for abelian
    #[arg(long)]
    dims: Option<usize>,
    /// Factor count for power
    #[arg(long)]
    k: Option<usize>,
    /// Base presentation for le/qe/power: trivial | heisenberg | a CGP path
    #[arg(long, default_value = "trivial")]
    base: String,
    /// Predicted lattice file certifying the base (computed when absent)
    #[arg(long)]
    base_lattice: Option<String>,
    /// Output path for the CGP file (defaults to a name derived from the parameters)
    #[arg(long)]
    out_cgp: Option<String>,
    /// Output path for the predicted lattice file
    #[arg(long)]
    out_lattice: Option<String>,
}

#[derive(Args)]
struct CdArgs {
    /// Input CGP file
    input: String,
    /// full | verify
    #[arg(long, default_value = "full")]
    mode: String,
    /// Predicted lattice file (required in verify mode)
    #[arg(long)]
    predicted: Option<String>,
    /// Full-enumeration budget in subspaces
    #[arg(long, default_value_t = cdlat_core::cdengine::DEFAULT_BUDGET)]
    budget: u128,
    /// Worker count (0 = all cores; CDLAT_JOBS overrides the default)
    #[arg(long)]
    jobs: Option<usize>,
    /// Root seed for verify-mode sampling
    #[arg(long, default_value_t = 0x0cd1a7)]
    seed: u64,
    /// Random sample count for verify mode
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Output lattice file (stdout when absent)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input lattice file
    input: String,
    /// Fail (exit 2) unless the shape summary equals this string
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Input lattice file
    input: String,
    /// Output DOT file (stdout when absent)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ScenarioArgs {
    /// thm1.1 | thm2.1-small | cor2.5-l2 | thm3.1 | lem3.3 | cor3.6-l1 |
    /// bw2012-product | remark1-asymmetric
    name: String,
    /// Unlock the long full-enumeration cross-checks
    #[arg(long)]
    heavy: bool,
    /// Worker count (0 = all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

/// Process exit codes named by the failure class.
pub(crate) enum Outcome {
    Ok,
    Counterexample(String),
    Budget(String),
    Input(String),
}

impl Outcome {
    fn exit(self) -> ! {
        match self {
            Outcome::Ok => std::process::exit(0),
            Outcome::Counterexample(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(2)
            }
            Outcome::Budget(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(3)
            }
            Outcome::Input(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(4)
            }
        }
    }
}

pub(crate) fn resolve_jobs(flag: Option<usize>) -> usize {
    match flag {
        Some(j) => j,
        None => std::env::var("CDLAT_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0),
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(args) => commands::build(args),
        Command::Cd(args) => commands::cd(args),
        Command::Classify(args) => commands::classify(args),
        Command::ExportDot(args) => commands::export_dot(args),
        Command::Scenario(args) => scenario::run(args),
    };
    outcome.exit()
}

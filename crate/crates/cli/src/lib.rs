//! Command dispatch for the `qarith` binary.
//!
//! Every command is a thin adapter over `qarith-core`: parse arguments,
//! call the library, serialize what comes back.

mod commands;
mod report;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::Envelope;

/// Process exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "qarith", version, about = "Modular arithmetic on tensor-product qudit number states")]
pub struct Cli {
    /// Digit alphabet size
    #[arg(long, global = true, default_value_t = 2)]
    pub k: u32,
    /// Number of components
    #[arg(long = "L", global = true, default_value_t = 3)]
    pub len: usize,
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for Haar sampling and sampled axiom checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digit string of a number (or the number of a digit string)
    Encode(EncodeArgs),
    /// Apply the successor V_j
    Succ(SuccArgs),
    /// |s>|w> -> |s>|s+w>
    Add(PairArgs),
    /// target + s*w
    Mul(MulArgs),
    /// Dump an operator matrix
    Matrix(MatrixArgs),
    /// Map a number state onto labelled sites, or read one back
    Map(MapArgs),
    /// Hermitian generator H with exp(-iHt) = V_j
    Hamiltonian(HamiltonianArgs),
    /// Ring-axiom suite through the operator machinery
    Axioms,
    /// Direct versus iterated successor costs
    Resources(ResourcesArgs),
    /// List every (g, d) map pair
    EnumerateMaps(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long, conflicts_with = "digits", required_unless_present = "digits")]
    pub n: Option<u64>,
    /// Digits d1,...,dL to decode
    #[arg(long)]
    pub digits: Option<String>,
}

#[derive(Debug, Args)]
pub struct SuccArgs {
    #[arg(long)]
    pub j: usize,
    /// Digits d1,...,dL, component 1 first
    #[arg(long)]
    pub digits: String,
    /// Number of applications
    #[arg(long, default_value_t = 1)]
    pub times: u64,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Debug, Args)]
pub struct MulArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// Accumulator register; zero when absent
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Shift,
    Projector,
    Successor,
    SuccessorLiteral,
    Add,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub op: OperatorKind,
    #[arg(long, default_value_t = 1)]
    pub j: usize,
    /// Digit value selected by the projector
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Dump permutation operators as index images
    #[arg(long)]
    pub permutation: bool,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// g as indices into the site list, g(1) first
    #[arg(long)]
    pub g: Option<String>,
    /// d as indices into the internal-state list, d(0) first
    #[arg(long)]
    pub d: Option<String>,
    /// Site labels A (default a1..aL)
    #[arg(long)]
    pub sites: Option<String>,
    /// Internal-state labels B (default b0..b(k-1))
    #[arg(long)]
    pub states: Option<String>,
    #[arg(long, conflicts_with = "assignment", required_unless_present = "assignment")]
    pub digits: Option<String>,
    /// site=state pairs, e.g. a1=b0,a2=b1
    #[arg(long)]
    pub assignment: Option<String>,
}

#[derive(Debug, Args)]
pub struct HamiltonianArgs {
    #[arg(long, default_value_t = 1)]
    pub j: usize,
    /// Evolution time t_j
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Conjugate V_j by a seeded Haar-random unitary first
    #[arg(long)]
    pub conjugate: bool,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    /// Also execute both strategies on this many seeded random basis states
    #[arg(long, default_value_t = 0)]
    pub verify: usize,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub count_only: bool,
    #[arg(long)]
    pub sites: Option<String>,
    #[arg(long)]
    pub states: Option<String>,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

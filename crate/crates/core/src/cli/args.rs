use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "nnamm", version, about = "Single-trace assembly memory: recall curves, ROC families, retrieval latency")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic memory performance P(d) as CSV
    Perf {
        #[command(subcommand)]
        method: PerfMethod,
    },
    /// ROC family (l, P1, Pd) by exact enumeration
    Roc(RocArgs),
    /// Memory-unit retrieval simulation
    Unit {
        #[command(subcommand)]
        action: UnitAction,
    },
    /// One-trial delta-rule learning; prints the residual per iteration
    Learn(LearnArgs),
    /// Binarize a signal and detect peaks with a white-segment template
    Peaks(PeaksArgs),
    /// Bayes misclassification / correct-classification probabilities
    Bayes(BayesArgs),
    /// Mirror-effect comparison of two exact curves
    Mirror(MirrorArgs),
}

#[derive(Debug, Args, Clone)]
pub struct NetArgs {
    /// Network size N
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    /// Learning parameter eta
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Etalon as a +/- string; defaults to a random vector drawn from --etalon-seed
    #[arg(long)]
    pub etalon: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub etalon_seed: u64,
    /// Damage spec (JSON)
    #[arg(long)]
    pub damage: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PerfMethod {
    /// Exhaustive enumeration through the forward pass
    Exact(PerfArgs),
    /// Closed-form sums (intact nets only)
    Analytic(PerfArgs),
    /// Monte Carlo estimate
    Mc(PerfArgs),
}

#[derive(Debug, Args, Clone)]
pub struct PerfArgs {
    #[command(flatten)]
    pub net: NetArgs,
    /// Noise counts, inclusive range `a..b` or comma list
    #[arg(long, default_value = "0..9")]
    pub m: String,
    /// Neuron threshold l
    #[arg(long, default_value_t = 0.0)]
    pub l: f64,
    /// Seed for damage placement and Monte Carlo sampling
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Clone)]
pub struct RocArgs {
    #[command(flatten)]
    pub net: NetArgs,
    /// Thresholds, comma separated
    #[arg(long, default_value = "0", value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Vec<f64>,
    #[arg(long, default_value = "0..9")]
    pub m: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum UnitAction {
    /// Run independent seeded retrieval trials; JSON lines output
    Simulate(UnitArgs),
}

#[derive(Debug, Args, Clone)]
pub struct UnitArgs {
    #[command(flatten)]
    pub net: NetArgs,
    /// Cue distortion d (multiple of 1/N)
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    /// Cycle frequency in Hz
    #[arg(long, default_value_t = 40.0)]
    pub f: f64,
    /// Inner-loop deadline in seconds
    #[arg(long, default_value_t = 1.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0)]
    pub max_restarts: usize,
    /// Gate window width in seconds
    #[arg(long, default_value_t = 0.002)]
    pub delta_t: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Print a latency summary instead of records
    #[arg(long)]
    pub summary: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Clone)]
pub struct LearnArgs {
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, default_value_t = 400.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1)]
    pub iters: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Clone)]
pub struct PeaksArgs {
    /// Signal file, one sample per line (plain text or CSV)
    #[arg(long)]
    pub input: PathBuf,
    /// Template length N
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    /// Width of the +1 run in the template
    #[arg(long, default_value_t = 3)]
    pub template_width: usize,
    /// Rolling-median radius used for binarization
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    #[arg(long, default_value_t = 0.0)]
    pub l: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Clone)]
pub struct BayesArgs {
    #[arg(long)]
    pub pd: f64,
    #[arg(long)]
    pub p1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
}

#[derive(Debug, Args, Clone)]
pub struct MirrorArgs {
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    #[arg(long)]
    pub etalon: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub etalon_seed: u64,
    /// Damage spec for curve A (intact if omitted)
    #[arg(long)]
    pub damage_a: Option<PathBuf>,
    /// Damage spec for curve B (intact if omitted)
    #[arg(long)]
    pub damage_b: Option<PathBuf>,
}

//! Command-line grammar. Every command serialises, so a manifest records the
//! exact resolved arguments and `replay` can run them again.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Edge statistics of random sorting networks.
#[derive(Debug, Parser)]
#[command(name = "sortedge", version)]
pub struct Cli {
    /// JSON object of flag values, keyed by long flag name. Flags given on
    /// the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Directory receiving manifest.json and the result files.
    #[arg(
        long,
        global = true,
        value_name = "DIR",
        default_value = "sortedge-out"
    )]
    pub out_dir: PathBuf,
    /// Worker threads: 0 uses every core, 1 runs sequentially. Results do
    /// not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Draw random objects.
    #[command(subcommand)]
    Sample(SampleCmd),
    /// Tabulate kernels, Fredholm determinants and limit densities.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Run an exact suite or a Monte Carlo campaign.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Draw the wiring diagram of a network as SVG.
    Wiring(WiringArgs),
    /// Run the command recorded in a manifest again.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleCmd {
    /// Uniformly random sorting networks.
    Network(SampleNetworkArgs),
    /// Uniformly random standard Young tableaux.
    Syt(SampleSytArgs),
    /// Corner spectra of anti-symmetric GUE matrices.
    Ague(SampleAgueArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleNetworkArgs {
    /// Number of wires.
    #[arg(long)]
    pub n: usize,
    /// Number of networks.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleSytArgs {
    /// `staircase:N`, `staircase-minus:N,K` or `rows:R1,R2,...`.
    #[arg(long)]
    pub shape: String,
    /// Number of tableaux.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleAgueArgs {
    /// Matrix dimension; spectra of every corner `2..=dim` are written.
    #[arg(long)]
    pub dim: usize,
    /// Number of matrices.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalyzeCmd {
    /// Law of the smallest positive eigenvalue and both spacing densities.
    Fredholm(FredholmArgs),
    /// A kernel on a square grid.
    Kernel(KernelArgs),
    /// One limiting spacing density.
    Density(DensityArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FredholmArgs {
    /// Rank.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Last grid point.
    #[arg(long, default_value_t = 3.0)]
    pub tmax: f64,
    /// Grid step.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    /// Level-`2k` block of the limiting kernel, series next to Hermite form.
    Limiting,
    /// The rank-`k` kernel.
    KernelK,
    /// The limiting kernel by residues on levels `x1`, `x2`.
    Residue,
    /// The conditioned limiting kernel on levels `x1`, `x2`.
    Conditioned,
    /// The anti-symmetric GUE corners kernel on levels `x1`, `x2`.
    Corners,
    /// The finite-`n` kernel on levels `x1`, `x2`.
    Finite,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct KernelArgs {
    /// Kernel family.
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Rank, or the index of the conditioned kernel.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Points per axis.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
    /// Upper end of the grid; defaults to `sqrt(n)` for the finite family
    /// and 3 otherwise.
    #[arg(long)]
    pub umax: Option<f64>,
    /// First level; defaults to `2k`.
    #[arg(long)]
    pub x1: Option<usize>,
    /// Second level; defaults to `x1`.
    #[arg(long)]
    pub x2: Option<usize>,
    /// Staircase size for the finite family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Removed corner `(n - k, k)` for the finite family.
    #[arg(long)]
    pub minus_k: Option<usize>,
    /// Residue cap for residue families, or series length of the corners
    /// kernel below the diagonal.
    #[arg(long)]
    pub trunc: Option<usize>,
    /// Series truncation of the limiting family.
    #[arg(long, default_value_t = 150)]
    pub i_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    /// Spacing density.
    G,
    /// Conditional spacing density.
    Ghat,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DensityArgs {
    /// Rank.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Which density.
    #[arg(long, value_enum)]
    pub which: Which,
    /// Last grid point.
    #[arg(long, default_value_t = 3.0)]
    pub xmax: f64,
    /// Grid step.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentCmd {
    /// Exact identities on all networks with at most five wires.
    Exact(ExactArgs),
    /// Scaled first-swap times against the Fredholm law.
    FirstSwap(McArgs),
    /// Scaled spacings against the spacing density.
    Spacing(McArgs),
    /// Scaled conditional spacings against the conditional density.
    ConditionalSpacing(McArgs),
    /// Tableau entries near the edge against anti-symmetric GUE corners.
    Corners(CornersArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    /// Number of wires, 3 to 5.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct McArgs {
    /// Number of wires.
    #[arg(long)]
    pub n: usize,
    /// Swap index.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Sample count.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replaces the calibrated tolerance of the main statistic.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Also write every scaled sample to samples.csv.
    #[arg(long)]
    pub samples_csv: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CornersArgs {
    /// Staircase size.
    #[arg(long)]
    pub n: usize,
    /// Highest level compared.
    #[arg(long, default_value_t = 6)]
    pub levels: usize,
    /// Samples on each side.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replaces the calibrated tolerance of the largest KS distance.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct WiringArgs {
    /// Comma-separated swap indices.
    #[arg(long, value_delimiter = ',', required = true)]
    pub network: Vec<u32>,
    /// Number of wires.
    #[arg(long)]
    pub n: usize,
    /// SVG file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
}

impl Command {
    /// Experiment identifier written to the manifest.
    pub fn id(&self) -> &'static str {
        match self {
            Command::Sample(SampleCmd::Network(_)) => "sample-network",
            Command::Sample(SampleCmd::Syt(_)) => "sample-syt",
            Command::Sample(SampleCmd::Ague(_)) => "sample-ague",
            Command::Analyze(AnalyzeCmd::Fredholm(_)) => "analyze-fredholm",
            Command::Analyze(AnalyzeCmd::Kernel(_)) => "analyze-kernel",
            Command::Analyze(AnalyzeCmd::Density(_)) => "analyze-density",
            Command::Experiment(ExperimentCmd::Exact(_)) => "experiment-exact",
            Command::Experiment(ExperimentCmd::FirstSwap(_)) => "experiment-first-swap",
            Command::Experiment(ExperimentCmd::Spacing(_)) => "experiment-spacing",
            Command::Experiment(ExperimentCmd::ConditionalSpacing(_)) => {
                "experiment-conditional-spacing"
            }
            Command::Experiment(ExperimentCmd::Corners(_)) => "experiment-corners",
            Command::Wiring(_) => "wiring",
            Command::Replay(_) => "replay",
        }
    }
}

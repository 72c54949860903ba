use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mcls", version, about = "Multi-cue level-set refinement of prior probability maps")]
pub struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refine a prior map into a mask (one case, or every case of a corpus).
    Segment(SegmentArgs),
    /// Generate a synthetic corpus.
    Synth(SynthArgs),
    /// Score predicted masks against references.
    Eval(EvalArgs),
    /// Dice of the thresholded prior over a grid of thresholds.
    Sweep(SweepArgs),
    /// Compare the five cue/initialization configurations over a corpus.
    Ablate(AblateArgs),
    /// Compare pixel variance of prior maps and refined masks over a corpus.
    Uncertainty(UncertaintyArgs),
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output directory.
    #[arg(long, env = "MCLS_OUT_DIR", default_value = "out")]
    pub out: PathBuf,
}

/// Overrides for fields of the run configuration; unset flags keep the
/// value from `--config` (or the default).
#[derive(Debug, Default, Args)]
pub struct ConfigArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Cue weights as five comma-separated values.
    #[arg(long, value_delimiter = ',', num_args = 5)]
    pub omega: Option<Vec<f64>>,
    #[arg(long)]
    pub sigma_edge: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub init_threshold: Option<f64>,
    #[arg(long)]
    pub init_amplitude: Option<f64>,
    #[arg(long)]
    pub sigma_floor: Option<f64>,
    #[arg(long)]
    pub stats_refresh: Option<usize>,
    #[arg(long, value_enum)]
    pub edge_indicator: Option<EdgeMode>,
    #[arg(long)]
    pub diffusion_tau: Option<f64>,
    #[arg(long)]
    pub diffusion_p: Option<f64>,
    #[arg(long)]
    pub diffusion_step_size: Option<f64>,
    #[arg(long)]
    pub diffusion_steps: Option<usize>,
    /// Start from a centered circle instead of the thresholded prior.
    #[arg(long)]
    pub no_position: bool,
    #[arg(long)]
    pub no_texture: bool,
    #[arg(long)]
    pub no_prior: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EdgeMode {
    SmoothedGradient,
    LiteralIntensity,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
    pub image: Option<PathBuf>,
    #[arg(long, required_unless_present = "corpus")]
    pub prior: Option<PathBuf>,
    /// Reference mask; enables Dice reporting and the agreement overlay.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    /// Corpus directory; every case is segmented into `<out>/<case>/`.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Write a red/green/yellow PPM overlay instead of the grey-level PGM.
    #[arg(long)]
    pub color: bool,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// 128x128 disk, prior eroded 2 px and blurred.
    CanonicalDisk,
    /// Lobed shapes with under-confident, eroded priors.
    ErodedPrior,
    /// Textured target with touching look-alike neighbours.
    Cluttered,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Case spec as JSON.
    #[arg(long, conflicts_with = "preset")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "canonical-disk")]
    pub preset: Preset,
    /// Override the seed of the case description.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Predictions: `<case>/mask.pgm` or `<case>.pgm`.
    #[arg(long)]
    pub pred: PathBuf,
    /// References: `<case>/gt.pgm` or `<case>.pgm`.
    #[arg(long)]
    pub gt: PathBuf,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub prior: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    /// Ascending thresholds in [0, 1); defaults to 0.0, 0.1, ..., 0.9.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct UncertaintyArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub config: ConfigArgs,
}

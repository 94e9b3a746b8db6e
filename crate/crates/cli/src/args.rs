use std::path::PathBuf;

use churn_core::TrainingConfig;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Train and score churn classifiers. Every flag can also be set through
/// the environment variable shown in its help, e.g. `CHURN_SEED=7`.
#[derive(Debug, Parser)]
#[command(name = "churn", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table, env = "CHURN_FORMAT")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned, human-readable tables.
    Table,
    /// One JSON object per line with stable keys.
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subset {
    All,
    /// Training partition the model was fit on.
    Train,
    /// Holdout partition reserved during training.
    Holdout,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model over the hidden-size range and write it to --model.
    Train(TrainArgs),
    /// Print the confusion matrix and accuracy on labeled data.
    Evaluate(EvaluateArgs),
    /// Append N_churn and NC_churn columns to every input row.
    Predict(PredictArgs),
    /// Rank input fields by permutation importance.
    Importance(ImportanceArgs),
}

#[derive(Debug, Args)]
pub struct DataArg {
    /// Churn CSV file.
    #[arg(long, env = "CHURN_DATA")]
    pub data: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArg,

    /// Where to write the model file.
    #[arg(long, env = "CHURN_MODEL")]
    pub model: PathBuf,

    /// Write the training log here instead of stdout.
    #[arg(long, env = "CHURN_OUT")]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub training: TrainingFlags,
}

#[derive(Debug, Args)]
pub struct TrainingFlags {
    /// Learning rate, in (0, 1].
    #[arg(long, env = "CHURN_ETA", default_value_t = TrainingConfig::default().eta)]
    pub eta: f64,

    /// Momentum constant, in [0, 1).
    #[arg(long, env = "CHURN_ALPHA", default_value_t = TrainingConfig::default().alpha)]
    pub alpha: f64,

    /// Upper bound on training epochs per candidate.
    #[arg(long, env = "CHURN_MAX_EPOCHS", default_value_t = TrainingConfig::default().max_epochs)]
    pub max_epochs: usize,

    /// Epochs without holdout improvement before stopping.
    #[arg(long, env = "CHURN_PATIENCE", default_value_t = TrainingConfig::default().patience)]
    pub patience: usize,

    /// Fraction of records reserved for holdout evaluation.
    #[arg(long, env = "CHURN_HOLDOUT", default_value_t = TrainingConfig::default().holdout_fraction)]
    pub holdout: f64,

    /// Smallest hidden-layer size tried.
    #[arg(long, env = "CHURN_HIDDEN_MIN", default_value_t = TrainingConfig::default().hidden_min)]
    pub hidden_min: usize,

    /// Largest hidden-layer size tried.
    #[arg(long, env = "CHURN_HIDDEN_MAX", default_value_t = TrainingConfig::default().hidden_max)]
    pub hidden_max: usize,

    /// Seed for the split, weight init and presentation order.
    #[arg(long, env = "CHURN_SEED", default_value_t = TrainingConfig::default().seed)]
    pub seed: u64,
}

impl From<&TrainingFlags> for TrainingConfig {
    fn from(f: &TrainingFlags) -> Self {
        TrainingConfig {
            eta: f.eta,
            alpha: f.alpha,
            max_epochs: f.max_epochs,
            patience: f.patience,
            holdout_fraction: f.holdout,
            hidden_min: f.hidden_min,
            hidden_max: f.hidden_max,
            seed: f.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[command(flatten)]
    pub data: DataArg,

    /// Model file written by `churn train`.
    #[arg(long, env = "CHURN_MODEL")]
    pub model: PathBuf,

    /// Write output here instead of stdout.
    #[arg(long, env = "CHURN_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub common: ModelArgs,

    /// Rows to evaluate. `train`/`holdout` re-create the model's split and
    /// assume --data is the file it was trained on.
    #[arg(long, value_enum, default_value_t = Subset::All, env = "CHURN_SUBSET")]
    pub subset: Subset,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub common: ModelArgs,
}

#[derive(Debug, Args)]
pub struct ImportanceArgs {
    #[command(flatten)]
    pub common: ModelArgs,

    /// Rows to permute and score; see `evaluate --subset`.
    #[arg(long, value_enum, default_value_t = Subset::All, env = "CHURN_SUBSET")]
    pub subset: Subset,

    /// Seed for the column permutations.
    #[arg(long, env = "CHURN_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Permutations averaged per field.
    #[arg(long, env = "CHURN_REPEATS", default_value_t = 5)]
    pub repeats: usize,
}

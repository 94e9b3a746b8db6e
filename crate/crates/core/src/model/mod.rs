//! Churn classifier: holdout-monitored training across hidden-layer sizes,
//! scoring, confusion-matrix evaluation and permutation importance.

mod config;
mod eval;
mod importance;
mod persist;
mod predict;
mod train;

pub use config::TrainingConfig;
pub use eval::{ConfusionMatrix, EvalReport};
pub use importance::{permutation_importance, ImportanceEntry, ImportanceReport, MIN_RECOMMENDED_RECORDS};
pub use persist::{FORMAT_NAME, FORMAT_VERSION};
pub use predict::Prediction;
pub use train::{train, CandidateSummary, TrainedModel, TrainingSummary};

/// SplitMix64 finalizer over `seed` and a stream id, so every consumer of
/// the run seed gets an independent generator.
pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

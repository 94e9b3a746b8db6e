//! Feed-forward sigmoid network with momentum back-propagation, and the
//! churn prediction pipeline built on it: CSV ingest, encoding, holdout
//! training with topology search, evaluation and permutation importance.

pub mod data;
pub mod error;
pub mod model;
pub mod nn;

pub use data::{CustomerRecord, EncodedExample, EncodingSchema, Field};
pub use error::{Error, Result};
pub use model::{EvalReport, ImportanceReport, Prediction, TrainedModel, TrainingConfig};
pub use nn::{LearningParams, Network};

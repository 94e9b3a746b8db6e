use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nn::LearningParams;

pub const MAX_HIDDEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    /// Learning rate.
    pub eta: f64,
    /// Momentum constant.
    pub alpha: f64,
    pub max_epochs: usize,
    /// Epochs without a holdout-accuracy improvement before stopping.
    pub patience: usize,
    pub holdout_fraction: f64,
    /// Smallest hidden-layer size tried.
    pub hidden_min: usize,
    /// Largest hidden-layer size tried (inclusive).
    pub hidden_max: usize,
    pub seed: u64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            eta: 0.3,
            alpha: 0.9,
            max_epochs: 200,
            patience: 20,
            holdout_fraction: 0.25,
            hidden_min: 3,
            hidden_max: 7,
            seed: 42,
        }
    }
}

impl TrainingConfig {
    pub fn learning_params(&self) -> Result<LearningParams> {
        LearningParams::new(self.eta, self.alpha)
    }

    pub fn hidden_sizes(&self) -> std::ops::RangeInclusive<usize> {
        self.hidden_min..=self.hidden_max
    }

    pub fn validate(&self) -> Result<()> {
        self.learning_params()?;
        if self.max_epochs == 0 {
            return Err(Error::Config("max_epochs must be at least 1".into()));
        }
        if self.patience == 0 {
            return Err(Error::Config("patience must be at least 1".into()));
        }
        if !(self.holdout_fraction > 0.0 && self.holdout_fraction < 1.0) {
            return Err(Error::Config(format!(
                "holdout fraction must lie in (0, 1), got {}",
                self.holdout_fraction
            )));
        }
        if self.hidden_min < 1 || self.hidden_max > MAX_HIDDEN || self.hidden_min > self.hidden_max {
            return Err(Error::Config(format!(
                "hidden range must satisfy 1 <= min <= max <= {MAX_HIDDEN}, got [{}, {}]",
                self.hidden_min, self.hidden_max
            )));
        }
        Ok(())
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2×2 counts; rows are the actual class, columns the predicted class,
/// index 0 = loyal (churn false), 1 = churner.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 2]; 2],
}

impl ConfusionMatrix {
    pub fn from_counts(counts: [[u64; 2]; 2]) -> Self {
        Self { counts }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (bool, bool)>) -> Self {
        let mut cm = Self::default();
        for (actual, predicted) in pairs {
            cm.record(actual, predicted);
        }
        cm
    }

    pub fn record(&mut self, actual: bool, predicted: bool) {
        self.counts[actual as usize][predicted as usize] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn true_negatives(&self) -> u64 {
        self.counts[0][0]
    }

    pub fn false_positives(&self) -> u64 {
        self.counts[0][1]
    }

    pub fn false_negatives(&self) -> u64 {
        self.counts[1][0]
    }

    pub fn true_positives(&self) -> u64 {
        self.counts[1][1]
    }

    pub fn row_total(&self, actual: bool) -> u64 {
        self.counts[actual as usize].iter().sum()
    }

    /// Share of correct predictions; 0 for an empty matrix.
    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        (self.true_negatives() + self.true_positives()) as f64 / total as f64
    }

    /// Row percentages; an empty row reports zeros.
    pub fn row_percentages(&self) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for (actual, row) in self.counts.iter().enumerate() {
            let n: u64 = row.iter().sum();
            if n > 0 {
                for (p, &c) in row.iter().enumerate() {
                    out[actual][p] = 100.0 * c as f64 / n as f64;
                }
            }
        }
        out
    }

    /// Fraction of class `actual` predicted as itself.
    pub fn recall(&self, actual: bool) -> f64 {
        let n = self.row_total(actual);
        if n == 0 {
            return 0.0;
        }
        self.counts[actual as usize][actual as usize] as f64 / n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    pub row_percentages: [[f64; 2]; 2],
    /// Recall of (loyal, churner).
    pub recall: [f64; 2],
    /// Categorical values not seen when the schema was fitted.
    pub unseen_levels: usize,
}

impl EvalReport {
    pub fn from_confusion(confusion: ConfusionMatrix, unseen_levels: usize) -> Result<Self> {
        if confusion.total() == 0 {
            return Err(Error::Evaluation("no records to evaluate".into()));
        }
        Ok(Self {
            accuracy: confusion.accuracy(),
            row_percentages: confusion.row_percentages(),
            recall: [confusion.recall(false), confusion.recall(true)],
            confusion,
            unseen_levels,
        })
    }
}

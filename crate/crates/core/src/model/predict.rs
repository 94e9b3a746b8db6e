use serde::{Deserialize, Serialize};

/// Predicted churn label with its confidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub predicted_churn: bool,
    /// Winning output activation over the sum of both, in `[0.5, 1]` for
    /// sigmoid outputs.
    pub confidence: f64,
}

impl Prediction {
    /// `outputs` are the (loyal, churn) activations. Ties predict loyal.
    pub fn from_outputs(outputs: [f64; 2]) -> Self {
        let [loyal, churn] = outputs;
        let predicted_churn = churn > loyal;
        let winner = if predicted_churn { churn } else { loyal };
        let total = loyal + churn;
        let confidence = if total > 0.0 {
            (winner / total).clamp(0.0, 1.0)
        } else {
            0.5
        };
        Self {
            predicted_churn,
            confidence,
        }
    }
}

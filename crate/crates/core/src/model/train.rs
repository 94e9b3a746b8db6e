use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::TrainingConfig;
use super::derive_seed;
use super::eval::{ConfusionMatrix, EvalReport};
use super::importance::{permutation_importance, ImportanceReport};
use super::predict::Prediction;
use crate::data::{split, CustomerRecord, EncodeStats, EncodedExample, EncodingSchema};
use crate::error::{Error, Result};
use crate::nn::{squared_error, LearningParams, Network};

pub const MIN_TRAINING_RECORDS: usize = 50;
const OUTPUTS: usize = 2;

const INIT_STREAM: u64 = 1;
const ORDER_STREAM: u64 = 2;

/// Outcome of training one hidden-layer size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSummary {
    pub hidden: usize,
    pub epochs_run: usize,
    /// Epoch of the retained snapshot; 0 means the initial weights.
    pub best_epoch: usize,
    /// Holdout accuracy of the retained snapshot.
    pub holdout_accuracy: f64,
    /// Holdout accuracy after the last epoch run.
    pub final_holdout_accuracy: f64,
    /// Mean per-example squared error over the last epoch run.
    pub final_train_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSummary {
    pub config: TrainingConfig,
    pub topology: Vec<usize>,
    pub epochs_run: usize,
    pub best_epoch: usize,
    pub holdout_accuracy: f64,
    pub train_size: usize,
    pub holdout_size: usize,
    /// Every candidate tried, ordered by hidden size.
    pub candidates: Vec<CandidateSummary>,
}

/// Network plus the schema its inputs were encoded with.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub(crate) network: Network,
    pub(crate) schema: EncodingSchema,
    pub(crate) summary: TrainingSummary,
}

impl TrainedModel {
    pub fn new(network: Network, schema: EncodingSchema, summary: TrainingSummary) -> Result<Self> {
        if network.input_size() != schema.width() {
            return Err(Error::Persist(format!(
                "network expects {} inputs but the schema encodes {}",
                network.input_size(),
                schema.width()
            )));
        }
        if network.output_size() != OUTPUTS {
            return Err(Error::Persist(format!(
                "network has {} outputs, expected {OUTPUTS}",
                network.output_size()
            )));
        }
        if network.layer_sizes() != summary.topology.as_slice() {
            return Err(Error::Persist(format!(
                "summary topology {:?} disagrees with network {:?}",
                summary.topology,
                network.layer_sizes()
            )));
        }
        Ok(Self {
            network,
            schema,
            summary,
        })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn schema(&self) -> &EncodingSchema {
        &self.schema
    }

    pub fn summary(&self) -> &TrainingSummary {
        &self.summary
    }

    pub fn config(&self) -> &TrainingConfig {
        &self.summary.config
    }

    /// Reproduces the `(train, holdout)` partition this model was fit on.
    pub fn split<T: Clone>(&self, records: &[T]) -> Result<(Vec<T>, Vec<T>)> {
        split(records, self.config().holdout_fraction, self.config().seed)
    }

    pub fn predict_features(&self, features: &[f64]) -> Result<Prediction> {
        let acts = self.network.forward(features)?;
        let out = acts.output();
        Ok(Prediction::from_outputs([out[0], out[1]]))
    }

    pub fn predict_with_stats(&self, record: &CustomerRecord, stats: &mut EncodeStats) -> Result<Prediction> {
        self.predict_features(&self.schema.encode_features(record, stats))
    }

    pub fn predict(&self, record: &CustomerRecord) -> Result<Prediction> {
        self.predict_with_stats(record, &mut EncodeStats::default())
    }

    pub fn evaluate_examples(&self, examples: &[EncodedExample], unseen_levels: usize) -> Result<EvalReport> {
        let cm = confusion(&self.network, examples)?;
        EvalReport::from_confusion(cm, unseen_levels)
    }

    /// Confusion matrix and accuracy over labeled `records`.
    pub fn evaluate(&self, records: &[CustomerRecord]) -> Result<EvalReport> {
        if records.is_empty() {
            return Err(Error::Evaluation("no records to evaluate".into()));
        }
        let (examples, stats) = self.schema.encode_all(records)?;
        self.evaluate_examples(&examples, stats.unseen_levels)
    }

    /// Permutation importance of every retained field over labeled `records`.
    pub fn importance(&self, records: &[CustomerRecord], seed: u64, repeats: usize) -> Result<ImportanceReport> {
        let (examples, _) = self.schema.encode_all(records)?;
        permutation_importance(&self.network, &self.schema, &examples, seed, repeats)
    }
}

pub(crate) fn confusion(net: &Network, examples: &[EncodedExample]) -> Result<ConfusionMatrix> {
    let mut cm = ConfusionMatrix::default();
    for ex in examples {
        cm.record(ex.label(), net.classify(&ex.features)? == 1);
    }
    Ok(cm)
}

/// Holdout accuracy and mean per-example squared error.
fn holdout_scores(net: &Network, examples: &[EncodedExample]) -> Result<(f64, f64)> {
    let mut cm = ConfusionMatrix::default();
    let mut error = 0.0;
    for ex in examples {
        let acts = net.forward(&ex.features)?;
        let out = acts.output();
        cm.record(ex.label(), out[1] > out[0]);
        error += squared_error(out, &ex.target);
    }
    Ok((cm.accuracy(), error / examples.len() as f64))
}

struct Candidate {
    summary: CandidateSummary,
    network: Network,
}

fn train_candidate(
    hidden: usize,
    train: &[EncodedExample],
    holdout: &[EncodedExample],
    config: &TrainingConfig,
    params: LearningParams,
) -> Result<Candidate> {
    let features = train[0].features.len();
    let mut net = Network::new(&[features, hidden, OUTPUTS], derive_seed(config.seed, INIT_STREAM))?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, ORDER_STREAM));
    let mut order: Vec<usize> = (0..train.len()).collect();

    let mut best = net.clone();
    let (mut best_accuracy, mut lowest_error) = holdout_scores(&net, holdout)?;
    let mut best_epoch = 0;
    let mut stale = 0;
    let mut epochs_run = 0;
    let mut final_accuracy = best_accuracy;
    let mut final_error = f64::NAN;

    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        let mut sum = 0.0;
        for &i in &order {
            let ex = &train[i];
            sum += net
                .train_example(&ex.features, &ex.target, params)
                .map_err(|e| Error::Training(format!("hidden size {hidden}, epoch {epoch}: {e}")))?;
        }
        epochs_run = epoch;
        final_error = sum / train.len() as f64;
        let (acc, err) = holdout_scores(&net, holdout)?;
        final_accuracy = acc;
        let mut improved = false;
        if acc > best_accuracy {
            best_accuracy = acc;
            best_epoch = epoch;
            best.clone_from(&net);
            improved = true;
        }
        if err < lowest_error {
            lowest_error = err;
            improved = true;
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
            if stale >= config.patience {
                break;
            }
        }
    }
    best.reset_momentum();
    Ok(Candidate {
        summary: CandidateSummary {
            hidden,
            epochs_run,
            best_epoch,
            holdout_accuracy: best_accuracy,
            final_holdout_accuracy: final_accuracy,
            final_train_error: final_error,
        },
        network: best,
    })
}

/// Splits `records` into train and holdout, fits the encoding on the train
/// part, then trains one `[features, h, 2]` network per hidden size `h`.
/// Each candidate keeps its best-holdout-accuracy snapshot and stops after
/// `patience` epochs in which neither holdout accuracy nor holdout squared
/// error reached a new best. The most accurate candidate wins;
/// ties go to the smaller hidden layer.
pub fn train(records: &[CustomerRecord], config: &TrainingConfig) -> Result<TrainedModel> {
    config.validate()?;
    let params = config.learning_params()?;
    if records.len() < MIN_TRAINING_RECORDS {
        return Err(Error::Training(format!(
            "need at least {MIN_TRAINING_RECORDS} records, got {}",
            records.len()
        )));
    }
    let mut classes = [0usize; 2];
    for (i, r) in records.iter().enumerate() {
        let label = r
            .churn
            .ok_or_else(|| Error::Training(format!("record {} has no churn label", i + 1)))?;
        classes[label as usize] += 1;
    }
    if classes.contains(&0) {
        return Err(Error::Training(format!(
            "both classes are required, got {} loyal and {} churners",
            classes[0], classes[1]
        )));
    }

    let (train_records, holdout_records) = split(records, config.holdout_fraction, config.seed)?;
    if holdout_records.is_empty() || train_records.is_empty() {
        return Err(Error::Training(format!(
            "holdout fraction {} leaves an empty partition of {} records",
            config.holdout_fraction,
            records.len()
        )));
    }
    let schema = EncodingSchema::fit(&train_records)?;
    let (train_set, _) = schema.encode_all(&train_records)?;
    let (holdout_set, _) = schema.encode_all(&holdout_records)?;

    let candidates = config
        .hidden_sizes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|h| train_candidate(h, &train_set, &holdout_set, config, params))
        .collect::<Result<Vec<_>>>()?;

    let mut winner = 0;
    for (k, c) in candidates.iter().enumerate() {
        if c.summary.holdout_accuracy > candidates[winner].summary.holdout_accuracy {
            winner = k;
        }
    }
    let summaries: Vec<CandidateSummary> = candidates.iter().map(|c| c.summary.clone()).collect();
    let best = candidates.into_iter().nth(winner).expect("non-empty hidden range");
    let summary = TrainingSummary {
        config: config.clone(),
        topology: best.network.layer_sizes().to_vec(),
        epochs_run: best.summary.epochs_run,
        best_epoch: best.summary.best_epoch,
        holdout_accuracy: best.summary.holdout_accuracy,
        train_size: train_set.len(),
        holdout_size: holdout_set.len(),
        candidates: summaries,
    };
    TrainedModel::new(best.network, schema, summary)
}

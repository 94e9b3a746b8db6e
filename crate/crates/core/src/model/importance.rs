use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::derive_seed;
use super::train::confusion;
use crate::data::{EncodedExample, EncodingSchema, Field};
use crate::error::{Error, Result};
use crate::nn::Network;

/// Below this many records the accuracy drops are too coarse to rank on.
pub const MIN_RECOMMENDED_RECORDS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceEntry {
    pub field: Field,
    /// Mean accuracy lost when the field is shuffled, floored at 0.
    pub accuracy_drop: f64,
    /// `accuracy_drop` relative to the largest drop, so the top field is 1.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceReport {
    pub baseline_accuracy: f64,
    pub sample_size: usize,
    pub seed: u64,
    pub repeats: usize,
    /// Descending by score, ties by field name.
    pub entries: Vec<ImportanceEntry>,
}

impl ImportanceReport {
    pub fn is_low_sample(&self) -> bool {
        self.sample_size < MIN_RECOMMENDED_RECORDS
    }

    pub fn top(&self, n: usize) -> impl Iterator<Item = Field> + '_ {
        self.entries.iter().take(n).map(|e| e.field)
    }
}

/// Permutation importance: for each retained field, all of its feature
/// columns are shuffled jointly across `examples` and the accuracy loss is
/// averaged over `repeats` seeded permutations.
pub fn permutation_importance(
    network: &Network,
    schema: &EncodingSchema,
    examples: &[EncodedExample],
    seed: u64,
    repeats: usize,
) -> Result<ImportanceReport> {
    if examples.is_empty() {
        return Err(Error::Evaluation("no records for importance".into()));
    }
    if repeats == 0 {
        return Err(Error::Config("importance needs at least one permutation".into()));
    }
    let baseline = confusion(network, examples)?.accuracy();

    let drops = schema
        .fields()
        .par_iter()
        .enumerate()
        .map(|(k, f)| {
            let span = schema.span(f.field).expect("retained field");
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
            let mut perm: Vec<usize> = (0..examples.len()).collect();
            let mut shuffled = examples.to_vec();
            let mut total = 0.0;
            for _ in 0..repeats {
                perm.shuffle(&mut rng);
                for (dst, &src) in shuffled.iter_mut().zip(&perm) {
                    dst.features[span.clone()].copy_from_slice(&examples[src].features[span.clone()]);
                }
                total += baseline - confusion(network, &shuffled)?.accuracy();
            }
            Ok((f.field, (total / repeats as f64).max(0.0)))
        })
        .collect::<Result<Vec<_>>>()?;

    let max_drop = drops.iter().map(|&(_, d)| d).fold(0.0, f64::max);
    let mut entries: Vec<ImportanceEntry> = drops
        .into_iter()
        .map(|(field, accuracy_drop)| ImportanceEntry {
            field,
            accuracy_drop,
            score: if max_drop > 0.0 { accuracy_drop / max_drop } else { 0.0 },
        })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.field.name().cmp(b.field.name()))
    });
    Ok(ImportanceReport {
        baseline_accuracy: baseline,
        sample_size: examples.len(),
        seed,
        repeats,
        entries,
    })
}

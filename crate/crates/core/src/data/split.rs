use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Shuffles `0..n` with `seed` and cuts off `round(fraction·n)` indices as
/// the holdout. Returns `(train, holdout)`, each in shuffled order.
pub fn split_indices(n: usize, holdout_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(holdout_fraction > 0.0 && holdout_fraction < 1.0) {
        return Err(Error::Config(format!(
            "holdout fraction must lie in (0, 1), got {holdout_fraction}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let holdout_len = (holdout_fraction * n as f64).round() as usize;
    let train = order.split_off(holdout_len);
    Ok((train, order))
}

/// Seeded random train/holdout partition of `items`.
pub fn split<T: Clone>(items: &[T], holdout_fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    let (train, holdout) = split_indices(items.len(), holdout_fraction, seed)?;
    let pick = |idx: Vec<usize>| idx.into_iter().map(|i| items[i].clone()).collect();
    Ok((pick(train), pick(holdout)))
}

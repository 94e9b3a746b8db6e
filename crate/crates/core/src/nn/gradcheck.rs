//! Central-difference gradient of `E = ½·Σ(D - y)²`, computed from forward
//! passes alone.

use super::matrix::Matrix;
use super::network::{squared_error, Network};
use crate::error::{Error, Result};

pub const MIN_EPSILON: f64 = 1e-7;
pub const MAX_EPSILON: f64 = 1e-3;

/// `∂E/∂W` and `∂E/∂θ` laid out like the network; `weights(n)` and
/// `thresholds(n)` are valid for `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    weights: Vec<Matrix>,
    thresholds: Vec<Vec<f64>>,
}

impl Gradient {
    pub fn weights(&self, n: usize) -> &Matrix {
        &self.weights[n - 1]
    }

    pub fn thresholds(&self, n: usize) -> &[f64] {
        &self.thresholds[n - 1]
    }
}

fn error_at(net: &Network, input: &[f64], target: &[f64]) -> Result<f64> {
    let acts = net.forward(input)?;
    Ok(squared_error(acts.output(), target))
}

/// `(E(w + ε) - E(w - ε)) / 2ε` for every weight and threshold.
pub fn numeric_gradient(
    net: &Network,
    input: &[f64],
    target: &[f64],
    epsilon: f64,
) -> Result<Gradient> {
    if !(MIN_EPSILON..=MAX_EPSILON).contains(&epsilon) {
        return Err(Error::Config(format!(
            "epsilon must lie in [{MIN_EPSILON:e}, {MAX_EPSILON:e}], got {epsilon:e}"
        )));
    }
    if target.len() != net.output_size() {
        return Err(Error::shape("target", net.output_size(), target.len()));
    }
    let mut probe = net.clone();
    let central = |probe: &mut Network, set: &dyn Fn(&mut Network, f64), base: f64| -> Result<f64> {
        set(probe, base + epsilon);
        let plus = error_at(probe, input, target)?;
        set(probe, base - epsilon);
        let minus = error_at(probe, input, target)?;
        set(probe, base);
        Ok((plus - minus) / (2.0 * epsilon))
    };

    let sizes = net.layer_sizes().to_vec();
    let mut weights = Vec::with_capacity(sizes.len() - 1);
    let mut thresholds = Vec::with_capacity(sizes.len() - 1);
    for n in 1..sizes.len() {
        let mut gw = Matrix::zeros(sizes[n - 1], sizes[n]);
        for i in 0..sizes[n - 1] {
            for j in 0..sizes[n] {
                let base = net.weight(n, i, j);
                let g = central(&mut probe, &|p, v| p.set_weight(n, i, j, v), base)?;
                gw.set(i, j, g);
            }
        }
        let mut gt = vec![0.0; sizes[n]];
        for (j, slot) in gt.iter_mut().enumerate() {
            let base = net.threshold(n, j);
            *slot = central(&mut probe, &|p, v| p.set_threshold(n, j, v), base)?;
        }
        weights.push(gw);
        thresholds.push(gt);
    }
    Ok(Gradient {
        weights,
        thresholds,
    })
}

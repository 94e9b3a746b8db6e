use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::activation::{sigmoid, sigmoid_derivative_from_output};
use super::matrix::Matrix;
use crate::error::{Error, Result};

const INIT_HALF_WIDTH: f64 = 0.5;

/// Learning rate `η ∈ (0, 1]` and momentum constant `α ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearningParams {
    eta: f64,
    alpha: f64,
}

impl LearningParams {
    pub fn new(eta: f64, alpha: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::Config(format!("eta must lie in (0, 1], got {eta}")));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::Config(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        Ok(Self { eta, alpha })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Outputs of every layer for one presented input. `layer(0)` is the input.
#[derive(Debug, Clone, PartialEq)]
pub struct Activations(Vec<Vec<f64>>);

impl Activations {
    pub fn layer(&self, n: usize) -> &[f64] {
        &self.0[n]
    }

    pub fn output(&self) -> &[f64] {
        self.0.last().expect("at least an input layer")
    }

    pub fn layers(&self) -> &[Vec<f64>] {
        &self.0
    }
}

/// Error signals of the computed layers; `layer(n)` is valid for `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deltas(Vec<Vec<f64>>);

impl Deltas {
    pub fn layer(&self, n: usize) -> &[f64] {
        &self.0[n - 1]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|d| d.is_finite())
    }
}

/// `½·Σ_j (D_j - y_j)²`.
pub fn squared_error(output: &[f64], target: &[f64]) -> f64 {
    0.5 * output
        .iter()
        .zip(target)
        .map(|(y, d)| (d - y) * (d - y))
        .sum::<f64>()
}

/// Fully connected feed-forward network of sigmoid units.
///
/// Index `n - 1` of `weights`/`thresholds` belongs to layer `n`. The
/// `prev_*` buffers hold the total change applied to each parameter by the
/// most recent update and feed the momentum term of the next one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkRepr", into = "NetworkRepr")]
pub struct Network {
    layer_sizes: Vec<usize>,
    weights: Vec<Matrix>,
    thresholds: Vec<Vec<f64>>,
    prev_weight_update: Vec<Matrix>,
    prev_threshold_update: Vec<Vec<f64>>,
}

/// Persisted form: parameters only, momentum restarts at zero on load.
#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    layer_sizes: Vec<usize>,
    weights: Vec<Matrix>,
    thresholds: Vec<Vec<f64>>,
}

impl From<Network> for NetworkRepr {
    fn from(net: Network) -> Self {
        Self {
            layer_sizes: net.layer_sizes,
            weights: net.weights,
            thresholds: net.thresholds,
        }
    }
}

impl TryFrom<NetworkRepr> for Network {
    type Error = Error;

    fn try_from(repr: NetworkRepr) -> Result<Self> {
        Network::from_parameters(repr.layer_sizes, repr.weights, repr.thresholds)
    }
}

fn validate_sizes(layer_sizes: &[usize]) -> Result<()> {
    if layer_sizes.len() < 2 {
        return Err(Error::Config(format!(
            "a network needs at least an input and an output layer, got {} layer(s)",
            layer_sizes.len()
        )));
    }
    if let Some(pos) = layer_sizes.iter().position(|&s| s == 0) {
        return Err(Error::Config(format!("layer {pos} has zero nodes")));
    }
    Ok(())
}

impl Network {
    /// Weights and thresholds drawn independently from `U[-0.5, 0.5]`,
    /// layer by layer (weights row-major, then thresholds), from a ChaCha8
    /// stream seeded with `seed`.
    pub fn new(layer_sizes: &[usize], seed: u64) -> Result<Self> {
        validate_sizes(layer_sizes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::with_capacity(layer_sizes.len() - 1);
        let mut thresholds = Vec::with_capacity(layer_sizes.len() - 1);
        for pair in layer_sizes.windows(2) {
            weights.push(Matrix::from_fn(pair[0], pair[1], |_, _| {
                rng.random_range(-INIT_HALF_WIDTH..=INIT_HALF_WIDTH)
            }));
            thresholds.push(
                (0..pair[1])
                    .map(|_| rng.random_range(-INIT_HALF_WIDTH..=INIT_HALF_WIDTH))
                    .collect(),
            );
        }
        Self::from_parameters(layer_sizes.to_vec(), weights, thresholds)
    }

    /// All parameters zero.
    pub fn zeros(layer_sizes: &[usize]) -> Result<Self> {
        validate_sizes(layer_sizes)?;
        let weights = layer_sizes
            .windows(2)
            .map(|p| Matrix::zeros(p[0], p[1]))
            .collect();
        let thresholds = layer_sizes[1..].iter().map(|&s| vec![0.0; s]).collect();
        Self::from_parameters(layer_sizes.to_vec(), weights, thresholds)
    }

    /// Assembles a network from explicit parameters with zeroed momentum.
    pub fn from_parameters(
        layer_sizes: Vec<usize>,
        weights: Vec<Matrix>,
        thresholds: Vec<Vec<f64>>,
    ) -> Result<Self> {
        validate_sizes(&layer_sizes)?;
        let computed = layer_sizes.len() - 1;
        if weights.len() != computed {
            return Err(Error::shape("weight matrices", computed, weights.len()));
        }
        if thresholds.len() != computed {
            return Err(Error::shape("threshold vectors", computed, thresholds.len()));
        }
        for (k, pair) in layer_sizes.windows(2).enumerate() {
            let w = &weights[k];
            if !w.is_consistent() || w.rows() != pair[0] {
                return Err(Error::shape("weight rows", pair[0], w.rows()));
            }
            if w.cols() != pair[1] {
                return Err(Error::shape("weight columns", pair[1], w.cols()));
            }
            if thresholds[k].len() != pair[1] {
                return Err(Error::shape("thresholds", pair[1], thresholds[k].len()));
            }
        }
        let mut net = Self {
            layer_sizes,
            weights,
            thresholds,
            prev_weight_update: Vec::new(),
            prev_threshold_update: Vec::new(),
        };
        net.reset_momentum();
        if let Some(layer) = net.first_non_finite_layer() {
            return Err(Error::NonFinite { layer });
        }
        Ok(net)
    }

    /// Zeroes the momentum buffers.
    pub fn reset_momentum(&mut self) {
        self.prev_weight_update = self
            .weights
            .iter()
            .map(|w| Matrix::zeros(w.rows(), w.cols()))
            .collect();
        self.prev_threshold_update = self.thresholds.iter().map(|t| vec![0.0; t.len()]).collect();
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn input_size(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_size(&self) -> usize {
        *self.layer_sizes.last().expect("validated")
    }

    /// Number of weights plus thresholds.
    pub fn parameter_count(&self) -> usize {
        self.layer_sizes
            .windows(2)
            .map(|p| p[0] * p[1] + p[1])
            .sum()
    }

    /// Weight matrix feeding layer `n` (`n >= 1`).
    pub fn weights(&self, n: usize) -> &Matrix {
        &self.weights[n - 1]
    }

    /// Thresholds of layer `n` (`n >= 1`).
    pub fn thresholds(&self, n: usize) -> &[f64] {
        &self.thresholds[n - 1]
    }

    pub fn weight(&self, n: usize, i: usize, j: usize) -> f64 {
        self.weights[n - 1].get(i, j)
    }

    pub fn set_weight(&mut self, n: usize, i: usize, j: usize, value: f64) {
        self.weights[n - 1].set(i, j, value);
    }

    pub fn threshold(&self, n: usize, j: usize) -> f64 {
        self.thresholds[n - 1][j]
    }

    pub fn set_threshold(&mut self, n: usize, j: usize, value: f64) {
        self.thresholds[n - 1][j] = value;
    }

    pub fn prev_weight_update(&self, n: usize) -> &Matrix {
        &self.prev_weight_update[n - 1]
    }

    pub fn prev_threshold_update(&self, n: usize) -> &[f64] {
        &self.prev_threshold_update[n - 1]
    }

    fn first_non_finite_layer(&self) -> Option<usize> {
        (0..self.weights.len())
            .find(|&k| {
                !(self.weights[k].as_slice().iter().all(|v| v.is_finite())
                    && self.thresholds[k].iter().all(|v| v.is_finite()))
            })
            .map(|k| k + 1)
    }

    /// Propagates `input` through every layer.
    pub fn forward(&self, input: &[f64]) -> Result<Activations> {
        if input.len() != self.input_size() {
            return Err(Error::shape("forward input", self.input_size(), input.len()));
        }
        let mut layers = Vec::with_capacity(self.layer_sizes.len());
        layers.push(input.to_vec());
        for (w, theta) in self.weights.iter().zip(&self.thresholds) {
            let prev = layers.last().expect("input pushed");
            let mut sums = theta.clone();
            for (i, &y) in prev.iter().enumerate() {
                for (s, &wij) in sums.iter_mut().zip(w.row(i)) {
                    *s += wij * y;
                }
            }
            sums.iter_mut().for_each(|s| *s = sigmoid(*s));
            layers.push(sums);
        }
        Ok(Activations(layers))
    }

    /// Output-layer error `y(1 - y)(D - y)` per node.
    pub fn output_deltas(&self, acts: &Activations, target: &[f64]) -> Result<Vec<f64>> {
        let out = acts.output();
        if target.len() != self.output_size() {
            return Err(Error::shape("target", self.output_size(), target.len()));
        }
        if out.len() != target.len() {
            return Err(Error::shape("output activations", target.len(), out.len()));
        }
        Ok(out
            .iter()
            .zip(target)
            .map(|(&y, &d)| sigmoid_derivative_from_output(y) * (d - y))
            .collect())
    }

    /// Error of layer `n - 1` propagated back from the deltas of layer `n`.
    pub fn hidden_deltas(
        &self,
        acts: &Activations,
        n: usize,
        downstream: &[f64],
    ) -> Result<Vec<f64>> {
        if n < 2 || n >= self.layer_sizes.len() {
            return Err(Error::Config(format!(
                "hidden deltas need 2 <= n < {}, got n = {n}",
                self.layer_sizes.len()
            )));
        }
        let w = &self.weights[n - 1];
        if downstream.len() != w.cols() {
            return Err(Error::shape("downstream deltas", w.cols(), downstream.len()));
        }
        let upstream = acts.layer(n - 1);
        if upstream.len() != w.rows() {
            return Err(Error::shape("hidden activations", w.rows(), upstream.len()));
        }
        Ok(upstream
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                let back: f64 = w.row(i).iter().zip(downstream).map(|(wij, dj)| wij * dj).sum();
                sigmoid_derivative_from_output(y) * back
            })
            .collect())
    }

    /// Deltas for every computed layer, all from the current weights.
    pub fn backward(&self, acts: &Activations, target: &[f64]) -> Result<Deltas> {
        if acts.layers().len() != self.layer_sizes.len() {
            return Err(Error::shape(
                "activation layers",
                self.layer_sizes.len(),
                acts.layers().len(),
            ));
        }
        let last = self.layer_sizes.len() - 1;
        let mut deltas = vec![Vec::new(); last];
        deltas[last - 1] = self.output_deltas(acts, target)?;
        for n in (2..=last).rev() {
            deltas[n - 2] = self.hidden_deltas(acts, n, &deltas[n - 1])?;
        }
        Ok(Deltas(deltas))
    }

    /// Applies the momentum update to every weight and threshold and records
    /// each total change in the `prev_*` buffers.
    pub fn apply_updates(
        &mut self,
        acts: &Activations,
        deltas: &Deltas,
        params: LearningParams,
    ) -> Result<()> {
        let (eta, alpha) = (params.eta, params.alpha);
        for n in 1..self.layer_sizes.len() {
            let k = n - 1;
            let upstream = acts.layer(k);
            let delta = deltas.layer(n);
            if upstream.len() != self.weights[k].rows() {
                return Err(Error::shape("update activations", self.weights[k].rows(), upstream.len()));
            }
            if delta.len() != self.weights[k].cols() {
                return Err(Error::shape("update deltas", self.weights[k].cols(), delta.len()));
            }
            let w = &mut self.weights[k];
            let prev = &mut self.prev_weight_update[k];
            for (i, &y) in upstream.iter().enumerate() {
                let w_row = w.row_mut(i);
                let p_row = prev.row_mut(i);
                for ((wij, pij), &dj) in w_row.iter_mut().zip(p_row.iter_mut()).zip(delta) {
                    let change = eta * dj * y + alpha * *pij;
                    *wij += change;
                    *pij = change;
                }
            }
            let theta = &mut self.thresholds[k];
            let prev = &mut self.prev_threshold_update[k];
            for ((t, p), &dj) in theta.iter_mut().zip(prev.iter_mut()).zip(delta) {
                let change = eta * dj + alpha * *p;
                *t += change;
                *p = change;
            }
        }
        match self.first_non_finite_layer() {
            Some(layer) => Err(Error::NonFinite { layer }),
            None => Ok(()),
        }
    }

    /// One full presentation: forward, deltas, update. Returns the squared
    /// error of the output produced before the update.
    pub fn train_example(
        &mut self,
        input: &[f64],
        target: &[f64],
        params: LearningParams,
    ) -> Result<f64> {
        let acts = self.forward(input)?;
        let deltas = self.backward(&acts, target)?;
        let error = squared_error(acts.output(), target);
        self.apply_updates(&acts, &deltas, params)?;
        Ok(error)
    }

    /// Index of the largest output activation; ties go to the lower index.
    pub fn classify(&self, input: &[f64]) -> Result<usize> {
        let acts = self.forward(input)?;
        let out = acts.output();
        let mut best = 0;
        for (j, &y) in out.iter().enumerate().skip(1) {
            if y > out[best] {
                best = j;
            }
        }
        Ok(best)
    }
}

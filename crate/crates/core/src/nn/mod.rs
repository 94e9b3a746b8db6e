//! Sigmoid multilayer perceptron trained by per-example back-propagation
//! with momentum.
//!
//! Layers are numbered from the input: layer 0 holds the presented input
//! vector, layers `1..L` are computed. The connection weights feeding layer
//! `n` form a `layer_sizes[n - 1] × layer_sizes[n]` matrix whose entry
//! `(i, j)` joins node `i` of layer `n - 1` to node `j` of layer `n`.
//!
//! One training presentation runs four passes:
//!
//! 1. forward: `y[n][j] = sigmoid(Σ_i W[n](i, j)·y[n-1][i] + θ[n][j])`
//! 2. output error: `δ[L][j] = y(1 - y)(D_j - y)`
//! 3. hidden error: `δ[n-1][i] = y(1 - y)·Σ_j W[n](i, j)·δ[n][j]`
//! 4. update: `ΔW = η·δ[n][j]·y[n-1][i] + α·ΔW_prev`, likewise for θ
//!
//! All deltas are taken from the pre-update weights before any parameter
//! changes. Under `E = ½·Σ(D - y)²` the delta-driven term is exactly
//! `-η·∂E/∂w`, which [`gradcheck`] verifies numerically.

mod activation;
pub mod gradcheck;
mod matrix;
mod network;

pub use activation::{sigmoid, sigmoid_derivative_from_output, EXP_CLAMP};
pub use matrix::Matrix;
pub use network::{squared_error, Activations, Deltas, LearningParams, Network};

use std::hint::black_box;

use churn_core::nn::gradcheck::numeric_gradient;
use churn_core::nn::{LearningParams, Network};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn input(width: usize) -> Vec<f64> {
    (0..width).map(|i| (i as f64 * 0.37).fract()).collect()
}

fn forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward");
    for hidden in [3, 7, 32] {
        let net = Network::new(&[20, hidden, 2], 1).unwrap();
        let x = input(20);
        group.bench_with_input(BenchmarkId::from_parameter(hidden), &net, |b, net| {
            b.iter(|| net.forward(black_box(&x)).unwrap())
        });
    }
    group.finish();
}

fn train_example(c: &mut Criterion) {
    let mut group = c.benchmark_group("train_example");
    let params = LearningParams::new(0.3, 0.9).unwrap();
    for hidden in [3, 7, 32] {
        let mut net = Network::new(&[20, hidden, 2], 1).unwrap();
        let x = input(20);
        group.bench_function(BenchmarkId::from_parameter(hidden), |b| {
            b.iter(|| net.train_example(black_box(&x), black_box(&[0.0, 1.0]), params).unwrap())
        });
    }
    group.finish();
}

fn gradient_check(c: &mut Criterion) {
    let net = Network::new(&[5, 4, 2], 3).unwrap();
    let x = input(5);
    c.bench_function("numeric_gradient/5-4-2", |b| {
        b.iter(|| numeric_gradient(&net, black_box(&x), &[1.0, 0.0], 1e-5).unwrap())
    });
}

criterion_group!(benches, forward, train_example, gradient_check);
criterion_main!(benches);

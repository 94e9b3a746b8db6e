use std::sync::OnceLock;

use churn_core::data::{self, CsvTable, CustomerRecord, EncodeStats, EncodingSchema, Field};
use churn_core::model::{self, TrainedModel, TrainingConfig};
use churn_core::Error;
use proptest::prelude::*;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/churn.csv");

fn all_records() -> &'static [CustomerRecord] {
    static RECORDS: OnceLock<Vec<CustomerRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let data = data::parse_csv(DATA).unwrap();
        assert!(data.rejected.is_empty());
        data.records
    })
}

fn sample(n: usize) -> Vec<CustomerRecord> {
    all_records()[..n].to_vec()
}

fn quick_config() -> TrainingConfig {
    TrainingConfig {
        max_epochs: 30,
        patience: 5,
        ..TrainingConfig::default()
    }
}

fn quick_model() -> &'static TrainedModel {
    static MODEL: OnceLock<TrainedModel> = OnceLock::new();
    MODEL.get_or_init(|| model::train(&sample(600), &quick_config()).unwrap())
}

#[test]
fn bundled_dataset_shape() {
    let records = all_records();
    assert_eq!(records.len(), 5000);
    let churners = records.iter().filter(|r| r.churn == Some(true)).count();
    assert_eq!(churners, 707);
    assert!(records.iter().all(|r| r.phone_number.is_none()));
}

#[test]
fn encoded_width_and_range() {
    let (train, holdout) = data::split(all_records(), 0.25, 42).unwrap();
    let schema = EncodingSchema::fit(&train).unwrap();
    assert_eq!(schema.width(), 20);
    let (train_x, stats) = schema.encode_all(&train).unwrap();
    assert_eq!(stats.unseen_levels, 0);
    let (holdout_x, _) = schema.encode_all(&holdout).unwrap();
    let area = schema.span(Field::AreaCode).unwrap();
    for ex in train_x.iter().chain(&holdout_x) {
        assert_eq!(ex.features.len(), schema.width());
        assert!(ex.features.iter().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(ex.target.iter().sum::<f64>(), 1.0);
    }
    for ex in &train_x {
        assert_eq!(ex.features[area.clone()].iter().sum::<f64>(), 1.0);
    }
}

#[test]
fn holdout_values_beyond_training_bounds_clamp() {
    let (train, holdout) = data::split(all_records(), 0.25, 42).unwrap();
    let schema = EncodingSchema::fit(&train).unwrap();
    let train_max = train.iter().map(|r| r.total_day_minutes).fold(0.0, f64::max);
    let col = schema.span(Field::TotalDayMinutes).unwrap().start;
    let mut extreme = holdout[0].clone();
    extreme.total_day_minutes = train_max * 3.0;
    let x = schema.encode_features(&extreme, &mut EncodeStats::default());
    assert_eq!(x[col], 1.0);
    // A schema fitted on everything would differ, proving bounds are train-only.
    let mut with_extreme = train.clone();
    with_extreme.push(extreme.clone());
    assert_ne!(EncodingSchema::fit(&with_extreme).unwrap(), schema);
}

#[test]
fn csv_write_parse_round_trip_on_real_rows() {
    let records = sample(300);
    let mut buf = Vec::new();
    data::write_csv(&records, &mut buf).unwrap();
    let back = CsvTable::from_reader(buf.as_slice()).unwrap().records(true).unwrap();
    assert_eq!(back.records, records);
}

proptest! {
    #[test]
    fn split_is_a_partition(n in 0usize..400, fraction in 0.01..0.99f64, seed: u64) {
        let items: Vec<usize> = (0..n).collect();
        let (train, holdout) = data::split(&items, fraction, seed).unwrap();
        prop_assert_eq!(train.len() + holdout.len(), n);
        prop_assert!((holdout.len() as f64 - fraction * n as f64).abs() <= 1.0);
        let mut all: Vec<usize> = train.iter().chain(&holdout).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, items);
    }

    #[test]
    fn record_csv_round_trip(
        idx in 0usize..5000,
        day in 0.0..400.0f64,
        calls in 0u32..50,
        intl in any::<bool>(),
        label in prop::option::of(any::<bool>()),
    ) {
        let mut r = all_records()[idx].clone();
        r.total_day_minutes = day;
        r.customer_service_calls = calls;
        r.international_plan = intl;
        r.churn = label;
        let mut buf = Vec::new();
        data::write_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        let back = CsvTable::from_reader(buf.as_slice()).unwrap().records(false).unwrap();
        prop_assert_eq!(&back.records[0], &r);
    }
}

#[test]
fn train_rejects_bad_inputs() {
    let small = sample(49);
    assert!(matches!(model::train(&small, &quick_config()), Err(Error::Training(_))));
    let loyal: Vec<_> = all_records()
        .iter()
        .filter(|r| r.churn == Some(false))
        .take(200)
        .cloned()
        .collect();
    assert!(matches!(model::train(&loyal, &quick_config()), Err(Error::Training(_))));
    let bad = TrainingConfig {
        eta: 2.0,
        ..quick_config()
    };
    assert!(matches!(model::train(&sample(200), &bad), Err(Error::Config(_))));
}

#[test]
fn single_hidden_size_trains_one_candidate() {
    let config = TrainingConfig {
        hidden_min: 3,
        hidden_max: 3,
        ..quick_config()
    };
    let m = model::train(&sample(300), &config).unwrap();
    assert_eq!(m.summary().candidates.len(), 1);
    assert_eq!(m.summary().topology, vec![20, 3, 2]);
}

#[test]
fn training_is_deterministic() {
    let again = model::train(&sample(600), &quick_config()).unwrap();
    assert_eq!(&again, quick_model());
}

#[test]
fn topology_search_picks_best_candidate() {
    let s = quick_model().summary();
    let hidden: Vec<usize> = s.candidates.iter().map(|c| c.hidden).collect();
    assert_eq!(hidden, vec![3, 4, 5, 6, 7]);
    let best = s.candidates.iter().map(|c| c.holdout_accuracy).fold(0.0, f64::max);
    assert_eq!(s.holdout_accuracy, best);
    let first_best = s.candidates.iter().find(|c| c.holdout_accuracy == best).unwrap();
    assert_eq!(s.topology[1], first_best.hidden);
    for c in &s.candidates {
        assert!(c.holdout_accuracy >= c.final_holdout_accuracy);
        assert!(c.epochs_run <= 30 && c.best_epoch <= c.epochs_run);
    }
}

#[test]
fn reported_holdout_accuracy_is_reproducible() {
    let m = quick_model();
    let (_, holdout) = m.split(&sample(600)).unwrap();
    assert_eq!(holdout.len(), m.summary().holdout_size);
    let report = m.evaluate(&holdout).unwrap();
    assert_eq!(report.accuracy, m.summary().holdout_accuracy);
}

#[test]
fn evaluation_counts_are_consistent() {
    let m = quick_model();
    let records = sample(1000);
    let report = m.evaluate(&records).unwrap();
    let cm = report.confusion;
    assert_eq!(cm.total(), 1000);
    let correct = cm.true_negatives() + cm.true_positives();
    assert_eq!(report.accuracy, correct as f64 / 1000.0);
    for row in report.row_percentages {
        assert!((row.iter().sum::<f64>() - 100.0).abs() < 0.01);
    }
    assert!(matches!(m.evaluate(&[]), Err(Error::Evaluation(_))));
}

#[test]
fn predictions_match_evaluation_and_are_bounded() {
    let m = quick_model();
    let records = sample(500);
    let report = m.evaluate(&records).unwrap();
    let mut predicted_churn = 0;
    for r in &records {
        let p = m.predict(r).unwrap();
        assert!((0.0..=1.0).contains(&p.confidence));
        assert_eq!(p, m.predict(r).unwrap());
        predicted_churn += p.predicted_churn as u64;
    }
    assert_eq!(predicted_churn, report.confusion.false_positives() + report.confusion.true_positives());
}

#[test]
fn persistence_round_trip_is_exact() {
    let m = quick_model();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    m.save(&path).unwrap();
    let back = TrainedModel::load(&path).unwrap();
    assert_eq!(&back, m);
    for r in all_records() {
        let (a, b) = (m.predict(r).unwrap(), back.predict(r).unwrap());
        assert_eq!(a.predicted_churn, b.predicted_churn);
        assert_eq!(a.confidence.to_bits(), b.confidence.to_bits());
    }
    assert_eq!(back.to_json().unwrap(), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn corrupt_model_files_are_rejected() {
    let json = quick_model().to_json().unwrap();
    let wrong_version = json.replacen("\"version\": 1", "\"version\": 9", 1);
    assert!(matches!(TrainedModel::from_json(&wrong_version), Err(Error::Persist(_))));
    let wrong_format = json.replacen("\"churn-mlp\"", "\"other\"", 1);
    assert!(matches!(TrainedModel::from_json(&wrong_format), Err(Error::Persist(_))));
    assert!(TrainedModel::from_json("{").is_err());
}

#[test]
fn importance_report_shape() {
    let m = quick_model();
    let (_, holdout) = m.split(&sample(600)).unwrap();
    let report = m.importance(&holdout, 7, 3).unwrap();
    assert_eq!(report.entries.len(), 18);
    assert!(report.entries.iter().all(|e| (0.0..=1.0).contains(&e.score)));
    for pair in report.entries.windows(2) {
        let ordered = pair[0].score > pair[1].score
            || (pair[0].score == pair[1].score && pair[0].field.name() < pair[1].field.name());
        assert!(ordered, "{:?}", pair);
    }
    assert_eq!(report, m.importance(&holdout, 7, 3).unwrap());
    assert!(report.is_low_sample() == (holdout.len() < model::MIN_RECOMMENDED_RECORDS));
}

#[test]
fn constant_field_has_zero_importance() {
    let m = quick_model();
    let mut records = sample(300);
    for r in &mut records {
        r.total_night_calls = 100;
    }
    let report = m.importance(&records, 1, 2).unwrap();
    let night = report.entries.iter().find(|e| e.field == Field::TotalNightCalls).unwrap();
    assert_eq!(night.accuracy_drop, 0.0);
    assert_eq!(night.score, 0.0);
}

use std::fmt::Write;

use churn_core::model::{EvalReport, ImportanceReport, TrainingSummary};
use serde_json::json;

use crate::args::Format;

fn jsonl(lines: impl IntoIterator<Item = serde_json::Value>) -> String {
    lines.into_iter().map(|v| format!("{v}\n")).collect()
}

pub fn training(summary: &TrainingSummary, format: Format) -> String {
    match format {
        Format::Jsonl => {
            let mut lines: Vec<_> = summary
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "record": "candidate",
                        "hidden": c.hidden,
                        "epochs_run": c.epochs_run,
                        "best_epoch": c.best_epoch,
                        "holdout_accuracy": c.holdout_accuracy,
                        "final_holdout_accuracy": c.final_holdout_accuracy,
                        "final_train_error": c.final_train_error,
                    })
                })
                .collect();
            lines.push(json!({
                "record": "winner",
                "topology": summary.topology,
                "hidden": summary.topology[1],
                "holdout_accuracy": summary.holdout_accuracy,
                "best_epoch": summary.best_epoch,
                "epochs_run": summary.epochs_run,
                "train_size": summary.train_size,
                "holdout_size": summary.holdout_size,
            }));
            jsonl(lines)
        }
        Format::Table => {
            let mut s = String::new();
            writeln!(
                s,
                "training on {} records, holdout {} records",
                summary.train_size, summary.holdout_size
            )
            .unwrap();
            writeln!(s, "{:>6}  {:>6}  {:>10}  {:>12}  {:>12}", "hidden", "epochs", "best_epoch", "holdout_acc", "final_acc").unwrap();
            for c in &summary.candidates {
                writeln!(
                    s,
                    "{:>6}  {:>6}  {:>10}  {:>11.3}%  {:>11.3}%",
                    c.hidden,
                    c.epochs_run,
                    c.best_epoch,
                    100.0 * c.holdout_accuracy,
                    100.0 * c.final_holdout_accuracy
                )
                .unwrap();
            }
            writeln!(
                s,
                "winner: topology {:?}, holdout accuracy {:.3}% (epoch {} of {})",
                summary.topology,
                100.0 * summary.holdout_accuracy,
                summary.best_epoch,
                summary.epochs_run
            )
            .unwrap();
            s
        }
    }
}

/// Rows are the actual label, columns the prediction.
pub fn evaluation(report: &EvalReport, format: Format) -> String {
    let cm = &report.confusion;
    let pct = &report.row_percentages;
    match format {
        Format::Jsonl => {
            let mut lines = Vec::new();
            for actual in [false, true] {
                for predicted in [false, true] {
                    lines.push(json!({
                        "record": "cell",
                        "actual": actual,
                        "predicted": predicted,
                        "count": cm.counts[actual as usize][predicted as usize],
                        "row_percent": pct[actual as usize][predicted as usize],
                    }));
                }
            }
            for (class, recall) in [(false, report.recall[0]), (true, report.recall[1])] {
                lines.push(json!({ "record": "recall", "actual": class, "value": recall }));
            }
            lines.push(json!({
                "record": "accuracy",
                "value": report.accuracy,
                "total": cm.total(),
                "unseen_levels": report.unseen_levels,
            }));
            jsonl(lines)
        }
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "{:<16}{:>10}", "", "N_churn").unwrap();
            writeln!(s, "{:<16}{:>10}{:>10}", "churn", "false", "true").unwrap();
            for (k, label) in ["false", "true"].iter().enumerate() {
                writeln!(s, "{:<8}{:<8}{:>10}{:>10}", label, "Count", cm.counts[k][0], cm.counts[k][1]).unwrap();
                writeln!(s, "{:<8}{:<8}{:>10.3}{:>10.3}", "", "Row %", pct[k][0], pct[k][1]).unwrap();
            }
            writeln!(s).unwrap();
            writeln!(
                s,
                "overall accuracy: {:.3}% ({} of {})",
                100.0 * report.accuracy,
                cm.true_negatives() + cm.true_positives(),
                cm.total()
            )
            .unwrap();
            writeln!(
                s,
                "recall: loyal {:.3}%, churner {:.3}%",
                100.0 * report.recall[0],
                100.0 * report.recall[1]
            )
            .unwrap();
            if report.unseen_levels > 0 {
                writeln!(s, "warning: {} unseen categorical value(s) encoded as all-zero", report.unseen_levels).unwrap();
            }
            s
        }
    }
}

pub fn importance(report: &ImportanceReport, format: Format) -> String {
    match format {
        Format::Jsonl => jsonl(report.entries.iter().enumerate().map(|(k, e)| {
            json!({
                "record": "importance",
                "rank": k + 1,
                "field": e.field.name(),
                "score": e.score,
                "accuracy_drop": e.accuracy_drop,
            })
        })),
        Format::Table => {
            let mut s = String::new();
            writeln!(
                s,
                "baseline accuracy {:.3}% on {} records, {} permutation(s) per field",
                100.0 * report.baseline_accuracy,
                report.sample_size,
                report.repeats
            )
            .unwrap();
            writeln!(s, "{:>4}  {:<24}  {:>8}  {:>13}", "rank", "field", "score", "accuracy_drop").unwrap();
            for (k, e) in report.entries.iter().enumerate() {
                writeln!(s, "{:>4}  {:<24}  {:>8.4}  {:>13.5}", k + 1, e.field.name(), e.score, e.accuracy_drop).unwrap();
            }
            s
        }
    }
}

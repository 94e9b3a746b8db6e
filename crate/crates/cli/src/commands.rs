use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use churn_core::data::{CsvTable, CustomerRecord, EncodeStats};
use churn_core::model::{self, TrainedModel, TrainingConfig};

use crate::args::{Command, EvaluateArgs, Format, ImportanceArgs, PredictArgs, Subset, TrainArgs};
use crate::render;

pub type CliResult<T = ()> = Result<T, Box<dyn Error>>;

pub fn run(command: &Command, format: Format) -> CliResult {
    match command {
        Command::Train(args) => cmd_train(args, format),
        Command::Evaluate(args) => cmd_evaluate(args, format),
        Command::Predict(args) => cmd_predict(args),
        Command::Importance(args) => cmd_importance(args, format),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                // The reader went away (e.g. `| head`); nothing left to report.
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn load_labeled(path: &Path) -> CliResult<Vec<CustomerRecord>> {
    let data = CsvTable::read(path)?.records(true)?;
    if let Some(first) = data.rejected.first() {
        eprintln!(
            "warning: skipped {} malformed row(s) in {}; first at {first}",
            data.rejected.len(),
            path.display()
        );
    }
    Ok(data.records)
}

fn select(model: &TrainedModel, records: Vec<CustomerRecord>, subset: Subset) -> CliResult<Vec<CustomerRecord>> {
    Ok(match subset {
        Subset::All => records,
        Subset::Train => model.split(&records)?.0,
        Subset::Holdout => model.split(&records)?.1,
    })
}

pub fn cmd_train(args: &TrainArgs, format: Format) -> CliResult {
    let config = TrainingConfig::from(&args.training);
    config.validate()?;
    let records = load_labeled(&args.data.data)?;
    let model = model::train(&records, &config)?;
    model.save(&args.model)?;
    let mut log = render::training(model.summary(), format);
    if format == Format::Table {
        log.push_str(&format!("model written to {}\n", args.model.display()));
    }
    emit(args.out.as_deref(), &log)
}

pub fn cmd_evaluate(args: &EvaluateArgs, format: Format) -> CliResult {
    let model = TrainedModel::load(&args.common.model)?;
    let records = load_labeled(&args.common.data.data)?;
    let records = select(&model, records, args.subset)?;
    let report = model.evaluate(&records)?;
    emit(args.common.out.as_deref(), &render::evaluation(&report, format))
}

/// Echoes each input row with `N_churn` and `NC_churn` appended.
pub fn cmd_predict(args: &PredictArgs) -> CliResult {
    let model = TrainedModel::load(&args.common.model)?;
    let table = CsvTable::read(&args.common.data.data)?;
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = table.headers().clone();
    header.push_field("N_churn");
    header.push_field("NC_churn");
    wtr.write_record(&header)?;
    let mut stats = EncodeStats::default();
    for (i, row) in table.rows().enumerate() {
        let record = table.parse_row(i)?;
        let p = model.predict_with_stats(&record, &mut stats)?;
        let mut out = row.clone();
        out.push_field(if p.predicted_churn { "true" } else { "false" });
        out.push_field(&p.confidence.to_string());
        wtr.write_record(&out)?;
    }
    if stats.unseen_levels > 0 {
        eprintln!(
            "warning: {} unseen categorical value(s) encoded as all-zero",
            stats.unseen_levels
        );
    }
    let bytes = wtr.into_inner().map_err(|e| e.to_string())?;
    emit(args.common.out.as_deref(), std::str::from_utf8(&bytes)?)
}

pub fn cmd_importance(args: &ImportanceArgs, format: Format) -> CliResult {
    let model = TrainedModel::load(&args.common.model)?;
    let records = load_labeled(&args.common.data.data)?;
    let records = select(&model, records, args.subset)?;
    let report = model.importance(&records, args.seed, args.repeats)?;
    if report.is_low_sample() {
        eprintln!(
            "warning: only {} records; at least {} are recommended for stable importance",
            report.sample_size,
            model::MIN_RECOMMENDED_RECORDS
        );
    }
    emit(args.common.out.as_deref(), &render::importance(&report, format))
}

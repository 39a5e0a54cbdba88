//! Training-log CSV input and metric CSV output.
//!
//! Input header: `augmentation,replicate,epoch,train_loss,acc_val,acc_field`.
//! The accuracy columns are read from the final epoch of each run and may be
//! left empty elsewhere.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use super::{BaselineRecord, MetricPoint, RunRecord};
use crate::error::{Error, Result};

pub const LOG_COLUMNS: [&str; 6] = ["augmentation", "replicate", "epoch", "train_loss", "acc_val", "acc_field"];

struct Row {
    epoch: u32,
    loss: f64,
    acc_val: Option<f64>,
    acc_field: Option<f64>,
}

fn field(rec: &csv::StringRecord, idx: usize) -> &str {
    rec.get(idx).unwrap_or("").trim()
}

fn parse<T: std::str::FromStr>(text: &str, column: &str, line: u64) -> Result<T> {
    text.parse()
        .map_err(|_| Error::MalformedLog(format!("line {line}: bad {column} value `{text}`")))
}

fn parse_opt(text: &str, column: &str, line: u64) -> Result<Option<f64>> {
    if text.is_empty() {
        Ok(None)
    } else {
        parse(text, column, line).map(Some)
    }
}

/// Parses a training log into one [`RunRecord`] per (augmentation, replicate).
pub fn read_logs(reader: impl Read) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut idx = [0usize; 6];
    for (slot, col) in idx.iter_mut().zip(LOG_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| Error::MissingColumn(col.to_string()))?;
    }

    let mut runs: BTreeMap<(String, u32), Vec<Row>> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let name = field(&rec, idx[0]);
        if name.is_empty() {
            return Err(Error::MalformedLog(format!("line {line}: empty augmentation name")));
        }
        let replicate = parse(field(&rec, idx[1]), "replicate", line)?;
        runs.entry((name.to_string(), replicate)).or_default().push(Row {
            epoch: parse(field(&rec, idx[2]), "epoch", line)?,
            loss: parse(field(&rec, idx[3]), "train_loss", line)?,
            acc_val: parse_opt(field(&rec, idx[4]), "acc_val", line)?,
            acc_field: parse_opt(field(&rec, idx[5]), "acc_field", line)?,
        });
    }

    runs.into_iter()
        .map(|((name, replicate), mut rows)| {
            rows.sort_by_key(|r| r.epoch);
            if rows.windows(2).any(|w| w[0].epoch == w[1].epoch) {
                return Err(Error::MalformedLog(format!("{name} replicate {replicate}: duplicate epoch")));
            }
            let last = rows.last().expect("non-empty group");
            let (Some(acc_val), Some(acc_field)) = (last.acc_val, last.acc_field) else {
                return Err(Error::MalformedLog(format!(
                    "{name} replicate {replicate}: final epoch {} has no accuracies",
                    last.epoch
                )));
            };
            let record = RunRecord {
                augmentation_name: name,
                replicate_id: replicate,
                train_losses: rows.iter().map(|r| r.loss).collect(),
                acc_val,
                acc_field,
            };
            record.validate()?;
            Ok(record)
        })
        .collect()
}

pub fn read_logs_path(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_logs(file)
}

/// Baseline losses: per-epoch mean over the replicates of `name`.
pub fn baseline_from(records: &[RunRecord], name: &str) -> Result<BaselineRecord> {
    let reps: Vec<&RunRecord> = records.iter().filter(|r| r.augmentation_name == name).collect();
    let Some(first) = reps.first() else {
        return Err(Error::Metric(format!("baseline `{name}` not found in logs")));
    };
    let epochs = first.train_losses.len();
    if reps.iter().any(|r| r.train_losses.len() != epochs) {
        return Err(Error::Metric(format!(
            "baseline `{name}` replicates have different epoch counts"
        )));
    }
    let train_losses = (0..epochs)
        .map(|e| reps.iter().map(|r| r.train_losses[e]).sum::<f64>() / reps.len() as f64)
        .collect();
    Ok(BaselineRecord { train_losses })
}

/// Writes `augmentation,affinity,affinity_std,diversity,diversity_std,n`.
pub fn write_points(writer: impl Write, points: &[MetricPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["augmentation", "affinity", "affinity_std", "diversity", "diversity_std", "n"])?;
    for p in points {
        w.write_record([
            p.augmentation_name.clone(),
            p.affinity.to_string(),
            p.affinity_std.to_string(),
            p.diversity.to_string(),
            p.diversity_std.to_string(),
            p.n_replicates.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<metrics output>", e))?;
    Ok(())
}

pub fn write_points_path(path: impl AsRef<Path>, points: &[MetricPoint]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_points(file, points)
}

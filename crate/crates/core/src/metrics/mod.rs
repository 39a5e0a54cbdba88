//! Affinity and diversity of an augmentation, computed from training logs.
//!
//! * diversity = mean training loss over the final epochs with augmentation,
//!   divided by the same quantity for the un-augmented baseline;
//! * affinity = field accuracy / validation accuracy (1 means no shift).

mod logs;
mod plot;

use std::collections::BTreeMap;

pub use logs::{baseline_from, read_logs, read_logs_path, write_points, write_points_path, LOG_COLUMNS};
pub use plot::scatter_svg;

use crate::error::{Error, Result};

/// Number of trailing epochs averaged into the converged training loss.
pub const DEFAULT_LOSS_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub augmentation_name: String,
    pub replicate_id: u32,
    /// Mean training loss per epoch, in epoch order.
    pub train_losses: Vec<f64>,
    pub acc_val: f64,
    pub acc_field: f64,
}

impl RunRecord {
    pub fn validate(&self) -> Result<()> {
        validate_losses(&self.train_losses, &self.augmentation_name)?;
        for (name, v) in [("acc_val", self.acc_val), ("acc_field", self.acc_field)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Metric(format!(
                    "{}: {name} must lie in [0, 1], got {v}",
                    self.augmentation_name
                )));
            }
        }
        Ok(())
    }
}

/// Losses of the model trained without augmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineRecord {
    pub train_losses: Vec<f64>,
}

impl From<&RunRecord> for BaselineRecord {
    fn from(r: &RunRecord) -> Self {
        BaselineRecord {
            train_losses: r.train_losses.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricPoint {
    pub augmentation_name: String,
    pub affinity: f64,
    pub affinity_std: f64,
    pub diversity: f64,
    pub diversity_std: f64,
    pub n_replicates: usize,
}

fn validate_losses(losses: &[f64], who: &str) -> Result<()> {
    if losses.is_empty() {
        return Err(Error::Metric(format!("{who}: no training losses")));
    }
    if let Some(bad) = losses.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::Metric(format!("{who}: training loss must be positive, got {bad}")));
    }
    Ok(())
}

/// Mean of the last `window` values (or all of them if fewer).
pub fn converged_loss(losses: &[f64], window: usize) -> Result<f64> {
    if window == 0 {
        return Err(Error::Metric("loss window must be at least 1".into()));
    }
    if losses.is_empty() {
        return Err(Error::Metric("no training losses".into()));
    }
    let tail = &losses[losses.len().saturating_sub(window)..];
    Ok(tail.iter().sum::<f64>() / tail.len() as f64)
}

pub fn diversity(aug: &RunRecord, base: &BaselineRecord, window: usize) -> Result<f64> {
    validate_losses(&aug.train_losses, &aug.augmentation_name)?;
    let denom = converged_loss(&base.train_losses, window)?;
    if !(denom.is_finite() && denom > 0.0) {
        return Err(Error::Metric(format!("baseline loss must be positive, got {denom}")));
    }
    Ok(converged_loss(&aug.train_losses, window)? / denom)
}

pub fn affinity(rec: &RunRecord) -> Result<f64> {
    if rec.acc_val <= 0.0 {
        return Err(Error::Metric(format!(
            "{}: affinity undefined for zero validation accuracy",
            rec.augmentation_name
        )));
    }
    Ok(rec.acc_field / rec.acc_val)
}

/// Mean and sample standard deviation (0 for a single value).
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups records by augmentation name and summarizes replicates. Output is
/// sorted by name.
pub fn aggregate(records: &[RunRecord], base: &BaselineRecord, window: usize) -> Result<Vec<MetricPoint>> {
    let mut groups: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        r.validate()?;
        groups.entry(r.augmentation_name.as_str()).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(name, mut reps)| {
            reps.sort_by_key(|r| r.replicate_id);
            let aff: Vec<f64> = reps.iter().map(|r| affinity(r)).collect::<Result<_>>()?;
            let div: Vec<f64> = reps
                .iter()
                .map(|r| diversity(r, base, window))
                .collect::<Result<_>>()?;
            let (affinity, affinity_std) = mean_std(&aff);
            let (diversity, diversity_std) = mean_std(&div);
            Ok(MetricPoint {
                augmentation_name: name.to_string(),
                affinity,
                affinity_std,
                diversity,
                diversity_std,
                n_replicates: reps.len(),
            })
        })
        .collect()
}

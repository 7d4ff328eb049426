//! Binary confusion matrix, precision / recall / F1 / accuracy, and the
//! per-activation benchmark.

use std::fmt::{self, Write as _};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::data::{split_dataset, QuestionnaireRecord};
use crate::elm::{ActivationKind, ElmConfig};
use crate::error::{ElmError, Result};
use crate::pipeline;

/// Counts for class 1 (diabetes) as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub true_positive: usize,
    pub false_positive: usize,
    pub false_negative: usize,
    pub true_negative: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.true_positive + self.false_positive + self.false_negative + self.true_negative
    }

    fn merge(self, other: ConfusionMatrix) -> ConfusionMatrix {
        ConfusionMatrix {
            true_positive: self.true_positive + other.true_positive,
            false_positive: self.false_positive + other.false_positive,
            false_negative: self.false_negative + other.false_negative,
            true_negative: self.true_negative + other.true_negative,
        }
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "              predicted 0  predicted 1")?;
        writeln!(f, "actual 0 {:>13} {:>12}", self.true_negative, self.false_positive)?;
        write!(f, "actual 1 {:>13} {:>12}", self.false_negative, self.true_positive)
    }
}

pub fn confusion(predicted: &[u8], actual: &[u8]) -> Result<ConfusionMatrix> {
    if predicted.len() != actual.len() || predicted.is_empty() {
        return Err(ElmError::LengthMismatch(predicted.len(), actual.len()));
    }
    let mut cm = ConfusionMatrix::default();
    for (&p, &a) in predicted.iter().zip(actual) {
        match (p, a) {
            (1, 1) => cm.true_positive += 1,
            (1, 0) => cm.false_positive += 1,
            (0, 1) => cm.false_negative += 1,
            (0, 0) => cm.true_negative += 1,
            (1, bad) | (0, bad) => return Err(ElmError::InvalidLabel(bad)),
            (bad, _) => return Err(ElmError::InvalidLabel(bad)),
        }
    }
    Ok(cm)
}

/// Metrics whose ratio had a zero denominator; such values are reported as 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Undefined {
    pub precision: bool,
    pub recall: bool,
    pub f1: bool,
}

impl Undefined {
    pub fn any(&self) -> bool {
        self.precision || self.recall || self.f1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub train_time_s: f64,
    pub undefined: Undefined,
}

fn ratio(num: f64, den: f64) -> (f64, bool) {
    if den == 0.0 {
        (0.0, true)
    } else {
        (num / den, false)
    }
}

pub fn report(cm: &ConfusionMatrix, train_time: Duration) -> MetricsReport {
    let tp = cm.true_positive as f64;
    let (precision, p_undef) = ratio(tp, tp + cm.false_positive as f64);
    let (recall, r_undef) = ratio(tp, tp + cm.false_negative as f64);
    let (f1, f_undef) = ratio(2.0 * precision * recall, precision + recall);
    let (accuracy, _) = ratio((cm.true_positive + cm.true_negative) as f64, cm.total() as f64);
    MetricsReport {
        precision,
        recall,
        f1,
        accuracy,
        train_time_s: train_time.as_secs_f64(),
        undefined: Undefined {
            precision: p_undef,
            recall: r_undef,
            f1: f_undef,
        },
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |u: bool| if u { " (undefined)" } else { "" };
        writeln!(f, "precision  {:.4}{}", self.precision, flag(self.undefined.precision))?;
        writeln!(f, "recall     {:.4}{}", self.recall, flag(self.undefined.recall))?;
        writeln!(f, "f1         {:.4}{}", self.f1, flag(self.undefined.f1))?;
        writeln!(f, "accuracy   {:.4}", self.accuracy)?;
        write!(f, "train time {:.4} s", self.train_time_s)
    }
}

/// One (activation, seed) evaluation on the test split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkRun {
    pub activation: ActivationKind,
    pub seed: u64,
    pub confusion: ConfusionMatrix,
    pub report: MetricsReport,
}

/// Per-activation means over all seeds; `confusion` is summed over seeds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub activation: ActivationKind,
    pub mean: MetricsReport,
    pub accuracy_std: f64,
    pub confusion: ConfusionMatrix,
    pub runs: usize,
}

impl BenchmarkRow {
    pub fn mean_false_positives(&self) -> f64 {
        self.confusion.false_positive as f64 / self.runs as f64
    }

    pub fn mean_false_negatives(&self) -> f64 {
        self.confusion.false_negative as f64 / self.runs as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkTable {
    /// One row per activation, in [`ActivationKind::ALL`] order.
    pub rows: Vec<BenchmarkRow>,
    /// Sorted by activation, then by position in the seed list.
    pub runs: Vec<BenchmarkRun>,
    pub seeds: Vec<u64>,
    /// Train / validation / test sizes (identical for every seed).
    pub split_sizes: (usize, usize, usize),
}

impl BenchmarkTable {
    pub fn row(&self, activation: ActivationKind) -> &BenchmarkRow {
        self.rows
            .iter()
            .find(|r| r.activation == activation)
            .expect("benchmark has a row per activation")
    }

    /// Activations ordered by decreasing mean accuracy.
    pub fn ranking(&self) -> Vec<ActivationKind> {
        let mut rows: Vec<&BenchmarkRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| b.mean.accuracy.total_cmp(&a.mean.accuracy));
        rows.into_iter().map(|r| r.activation).collect()
    }

    /// Per-run rows: `activation,seed,precision,recall,f1,accuracy,train_time_s`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("activation,seed,precision,recall,f1,accuracy,train_time_s\n");
        for run in &self.runs {
            let r = &run.report;
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                run.activation, run.seed, r.precision, r.recall, r.f1, r.accuracy, r.train_time_s
            );
        }
        out
    }
}

impl fmt::Display for BenchmarkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tr, va, te) = self.split_sizes;
        writeln!(
            f,
            "{} seed(s), split train/validation/test = {tr}/{va}/{te}",
            self.seeds.len()
        )?;
        writeln!(
            f,
            "{:<13} {:>9} {:>7} {:>7} {:>9} {:>8} {:>9} {:>7} {:>7}",
            "activation", "precision", "recall", "f1", "accuracy", "±std", "time (s)", "mean FP", "mean FN"
        )?;
        for row in &self.rows {
            let m = &row.mean;
            writeln!(
                f,
                "{:<13} {:>9.4} {:>7.4} {:>7.4} {:>8.2}% {:>7.2}% {:>9.4} {:>7.2} {:>7.2}",
                row.activation.name(),
                m.precision,
                m.recall,
                m.f1,
                100.0 * m.accuracy,
                100.0 * row.accuracy_std,
                m.train_time_s,
                row.mean_false_positives(),
                row.mean_false_negatives()
            )?;
        }
        Ok(())
    }
}

/// For every activation and seed: split with the seed, train on the train
/// part with `config.seed = seed`, and evaluate on the test part.
///
/// Runs are independent and execute in parallel; the result does not depend
/// on scheduling except for the measured training times.
pub fn benchmark_transfer_functions(
    dataset: &[QuestionnaireRecord],
    config: ElmConfig,
    seeds: &[u64],
) -> Result<BenchmarkTable> {
    if seeds.is_empty() {
        return Err(ElmError::InvalidConfig("benchmark needs at least one seed".into()));
    }
    config.validate()?;
    let splits = seeds
        .iter()
        .map(|&s| split_dataset(dataset, s, true))
        .collect::<Result<Vec<_>>>()?;
    if splits[0].test.is_empty() {
        return Err(ElmError::DatasetTooSmall);
    }

    let jobs: Vec<(ActivationKind, usize)> = ActivationKind::ALL
        .iter()
        .flat_map(|&a| (0..seeds.len()).map(move |i| (a, i)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(activation, i)| {
            let split = &splits[i];
            let cfg = ElmConfig {
                activation,
                seed: seeds[i],
                ..config
            };
            let model = pipeline::train(&split.train, cfg)?;
            let cm = pipeline::evaluate(&model, &split.test)?;
            Ok(BenchmarkRun {
                activation,
                seed: seeds[i],
                confusion: cm,
                report: report(&cm, model.train_time().unwrap_or_default()),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = ActivationKind::ALL
        .iter()
        .map(|&activation| aggregate(activation, runs.iter().filter(|r| r.activation == activation)))
        .collect();
    Ok(BenchmarkTable {
        rows,
        runs,
        seeds: seeds.to_vec(),
        split_sizes: splits[0].sizes(),
    })
}

fn aggregate<'a>(activation: ActivationKind, runs: impl Iterator<Item = &'a BenchmarkRun>) -> BenchmarkRow {
    let runs: Vec<&BenchmarkRun> = runs.collect();
    let n = runs.len() as f64;
    let mean = |f: fn(&MetricsReport) -> f64| runs.iter().map(|r| f(&r.report)).sum::<f64>() / n;
    let accuracy = mean(|r| r.accuracy);
    let var = runs.iter().map(|r| (r.report.accuracy - accuracy).powi(2)).sum::<f64>() / n;
    let undefined = runs.iter().fold(Undefined::default(), |u, r| Undefined {
        precision: u.precision || r.report.undefined.precision,
        recall: u.recall || r.report.undefined.recall,
        f1: u.f1 || r.report.undefined.f1,
    });
    BenchmarkRow {
        activation,
        mean: MetricsReport {
            precision: mean(|r| r.precision),
            recall: mean(|r| r.recall),
            f1: mean(|r| r.f1),
            accuracy,
            train_time_s: mean(|r| r.train_time_s),
            undefined,
        },
        accuracy_std: var.sqrt(),
        confusion: runs.iter().fold(ConfusionMatrix::default(), |acc, r| acc.merge(r.confusion)),
        runs: runs.len(),
    }
}

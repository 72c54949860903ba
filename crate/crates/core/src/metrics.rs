//! Overlap metrics, corpus summaries, threshold sweeps, and pixel variance.

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::grid::{BinaryMask, Plane, ProbMap};

/// Overlap between a predicted set `PS` and a reference set `GT`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub dice: f64,
    pub iou: f64,
    pub precision: f64,
    pub recall: f64,
    pub accuracy: f64,
    pub f1: f64,
    pub predicted: usize,
    pub reference: usize,
    pub intersection: usize,
    pub union: usize,
    pub pixels: usize,
    /// Both masks empty; scored as a perfect match.
    pub both_empty: bool,
}

/// `num / den`, with `0 / 0` resolved to `empty_value`.
fn ratio(num: usize, den: usize, empty_value: f64) -> f64 {
    if den == 0 {
        empty_value
    } else {
        num as f64 / den as f64
    }
}

pub fn overlap(ps: &BinaryMask, gt: &BinaryMask) -> Result<OverlapReport> {
    check_dims(gt.dims(), ps.dims())?;
    let mut inter = 0;
    let mut n_ps = 0;
    let mut n_gt = 0;
    for (&a, &b) in ps.data().iter().zip(gt.data()) {
        n_ps += a as usize;
        n_gt += b as usize;
        inter += (a & b) as usize;
    }
    let union = n_ps + n_gt - inter;
    let pixels = ps.data().len();
    let both_empty = union == 0;
    let fill = if both_empty { 1.0 } else { 0.0 };
    let dice = ratio(2 * inter, n_ps + n_gt, fill);
    let iou = ratio(inter, union, fill);
    let precision = ratio(inter, n_ps, fill);
    let recall = ratio(inter, n_gt, fill);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    let true_negative = pixels - union;
    Ok(OverlapReport {
        dice,
        iou,
        precision,
        recall,
        accuracy: (inter + true_negative) as f64 / pixels as f64,
        f1,
        predicted: n_ps,
        reference: n_gt,
        intersection: inter,
        union,
        pixels,
        both_empty,
    })
}

/// Mean, population standard deviation, and extremes of Dice over a corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub reports: Vec<OverlapReport>,
    pub mean: f64,
    pub std: f64,
    pub max: f64,
    pub min: f64,
}

pub fn corpus_summary(reports: &[OverlapReport]) -> Result<CorpusSummary> {
    if reports.is_empty() {
        return Err(Error::InvalidInput("corpus summary needs at least one case".into()));
    }
    let n = reports.len() as f64;
    let mean = reports.iter().map(|r| r.dice).sum::<f64>() / n;
    let var = reports.iter().map(|r| (r.dice - mean).powi(2)).sum::<f64>() / n;
    let (min, max) = reports
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r.dice), hi.max(r.dice)));
    Ok(CorpusSummary {
        reports: reports.to_vec(),
        mean,
        std: var.sqrt(),
        max,
        min,
    })
}

/// Dice of `{prior > beta}` against the reference over a grid of thresholds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdSweep {
    pub thresholds: Vec<f64>,
    pub dice: Vec<f64>,
    /// Threshold attaining the highest Dice (first one on ties).
    pub best_threshold: f64,
    pub best_dice: f64,
    /// Population variance of the Dice values across thresholds.
    pub variance: f64,
}

/// `{0.0, 0.1, ..., 0.9}`
pub fn default_sweep_grid() -> Vec<f64> {
    (0..10).map(|i| f64::from(i) / 10.0).collect()
}

pub fn threshold_sweep(prior: &ProbMap, gt: &BinaryMask, thresholds: &[f64]) -> Result<ThresholdSweep> {
    check_dims(gt.dims(), prior.dims())?;
    if thresholds.is_empty() {
        return Err(Error::InvalidInput("threshold grid is empty".into()));
    }
    if let Some(t) = thresholds.iter().find(|t| !(0.0..1.0).contains(*t)) {
        return Err(Error::InvalidInput(format!("threshold {t} outside [0, 1)")));
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("thresholds must be strictly ascending".into()));
    }
    let dice = thresholds
        .iter()
        .map(|&b| overlap(&prior.threshold(b), gt).map(|r| r.dice))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, &d) in dice.iter().enumerate() {
        if d > dice[best] {
            best = i;
        }
    }
    Ok(ThresholdSweep {
        thresholds: thresholds.to_vec(),
        best_threshold: thresholds[best],
        best_dice: dice[best],
        variance: population_variance(&dice),
        dice,
    })
}

/// Shifted-data formula; exact zero for constant input.
fn population_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let shift = values[0];
    let (s, s2) = values.iter().fold((0.0, 0.0), |(s, s2), &v| {
        let d = v - shift;
        (s + d, s2 + d * d)
    });
    let m = s / n;
    (s2 / n - m * m).max(0.0)
}

/// Population variance of all pixel values of a map.
pub fn pixel_variance(map: &Plane) -> f64 {
    population_variance(map.data())
}

use std::path::Path;

use serde::Serialize;

use super::config::AblationVariant;
use super::corpus::{create_dir, find_mask, list_case_names, CorpusCase, GT_FILE};
use crate::error::{Error, Result};
use crate::formats::{read_mask_pgm, render_overlay_gray, render_overlay_rgb, write_bytes, write_fmap, write_mask_pgm, write_pgm, write_ppm};
use crate::grid::{BinaryMask, GrayImage};
use crate::levelset::{segment, LevelSetConfig, Segmentation};
use crate::metrics::{corpus_summary, overlap, pixel_variance, CorpusSummary, OverlapReport};

pub const MASK_FILE: &str = "mask.pgm";
pub const PHI_FILE: &str = "phi.fmap";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const OVERLAY_GRAY_FILE: &str = "overlay.pgm";
pub const OVERLAY_COLOR_FILE: &str = "overlay.ppm";

/// Writes mask, final field, diagnostics, and overlay of one run into `dir`.
pub fn write_segmentation(
    seg: &Segmentation,
    image: &GrayImage,
    gt: Option<&BinaryMask>,
    dir: &Path,
    color: bool,
) -> Result<()> {
    create_dir(dir)?;
    write_mask_pgm(&seg.mask, dir.join(MASK_FILE))?;
    write_fmap(seg.phi.plane(), dir.join(PHI_FILE))?;
    write_bytes(&dir.join(DIAGNOSTICS_FILE), seg.diagnostics.to_csv().as_bytes())?;
    if color {
        let rgb = render_overlay_rgb(image, &seg.mask, gt)?;
        let (w, h) = seg.mask.dims();
        write_ppm(w, h, &rgb, dir.join(OVERLAY_COLOR_FILE))?;
    } else {
        let plane = render_overlay_gray(&seg.mask, gt)?;
        write_pgm(&GrayImage::new(plane)?, dir.join(OVERLAY_GRAY_FILE))?;
    }
    Ok(())
}

/// Level-set result of one corpus case next to the thresholded-prior baseline.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefineRow {
    pub case: String,
    /// Dice of `{prior > init_threshold}`.
    pub prior_dice: f64,
    /// Dice of the level-set result; 0 when the run failed.
    pub dice: f64,
    pub failure: Option<String>,
}

/// Segments one case; a failed run scores Dice 0 and keeps its error message.
pub fn refine_case(case: &CorpusCase, config: &LevelSetConfig) -> Result<(RefineRow, Option<Segmentation>)> {
    let prior_dice = overlap(&case.prior.threshold(config.init_threshold), &case.gt)?.dice;
    let (dice, failure, seg) = match segment(&case.image, &case.prior, config) {
        Ok(seg) => (overlap(&seg.mask, &case.gt)?.dice, None, Some(seg)),
        Err(e @ (Error::ContourCollapse { .. } | Error::Divergence { .. } | Error::EmptyForeground { .. })) => {
            log::warn!("{}: {e}", case.name);
            (0.0, Some(e.to_string()), None)
        }
        Err(e) => return Err(e),
    };
    Ok((
        RefineRow {
            case: case.name.clone(),
            prior_dice,
            dice,
            failure,
        },
        seg,
    ))
}

pub fn refine_corpus(cases: &[CorpusCase], config: &LevelSetConfig) -> Result<Vec<RefineRow>> {
    cases.iter().map(|c| refine_case(c, config).map(|(row, _)| row)).collect()
}

/// Per-case overlap of predictions against references.
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    pub rows: Vec<(String, OverlapReport)>,
    /// Cases lacking a prediction or a reference; they are skipped.
    pub missing: Vec<String>,
    pub summary: Option<CorpusSummary>,
}

/// Pairs `pred_dir` and `gt_dir` by case name. A prediction is
/// `pred_dir/<case>/mask.pgm` or `pred_dir/<case>.pgm`; a reference is
/// `gt_dir/<case>/gt.pgm` or `gt_dir/<case>.pgm`.
pub fn evaluate_dirs(pred_dir: &Path, gt_dir: &Path) -> Result<EvalOutcome> {
    let mut names = list_case_names(pred_dir)?;
    names.extend(list_case_names(gt_dir)?);
    names.sort();
    names.dedup();
    let mut rows = Vec::new();
    let mut missing = Vec::new();
    for name in names {
        match (find_mask(pred_dir, &name, MASK_FILE), find_mask(gt_dir, &name, GT_FILE)) {
            (Some(p), Some(g)) => {
                let report = overlap(&read_mask_pgm(p)?, &read_mask_pgm(g)?)?;
                rows.push((name, report));
            }
            _ => missing.push(name),
        }
    }
    let reports: Vec<_> = rows.iter().map(|(_, r)| *r).collect();
    let summary = if reports.is_empty() {
        None
    } else {
        Some(corpus_summary(&reports)?)
    };
    Ok(EvalOutcome { rows, missing, summary })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AblationRow {
    pub variant: AblationVariant,
    pub dice: Vec<f64>,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub max: f64,
    pub min: f64,
    pub failures: usize,
}

/// Runs every ablation variant over the cases, starting from `base`.
pub fn ablate(cases: &[CorpusCase], base: &LevelSetConfig) -> Result<Vec<AblationRow>> {
    if cases.is_empty() {
        return Err(Error::InvalidInput("ablation needs at least one case".into()));
    }
    AblationVariant::ALL
        .iter()
        .map(|&variant| {
            let config = variant.switches().apply(base.clone());
            config.validate()?;
            let rows = refine_corpus(cases, &config)?;
            let dice: Vec<f64> = rows.iter().map(|r| r.dice).collect();
            let failures = rows.iter().filter(|r| r.failure.is_some()).count();
            let (mean, std, max, min) = dice_stats(&dice);
            log::info!("{}: mean Dice {mean:.4}", variant.label());
            Ok(AblationRow {
                variant,
                dice,
                mean,
                std,
                max,
                min,
                failures,
            })
        })
        .collect()
}

fn dice_stats(dice: &[f64]) -> (f64, f64, f64, f64) {
    let n = dice.len() as f64;
    let mean = dice.iter().sum::<f64>() / n;
    let var = dice.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    let max = dice.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = dice.iter().copied().fold(f64::INFINITY, f64::min);
    (mean, var.sqrt(), max, min)
}

/// Sign of `result_variance - prior_variance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceDirection {
    ResultLower,
    ResultHigher,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyRow {
    pub case: String,
    /// Pixel variance of the prior probability map.
    pub prior_variance: f64,
    /// Pixel variance of the final binary result.
    pub result_variance: f64,
    pub direction: VarianceDirection,
    pub dice: f64,
}

/// Compares the pixel variance of each prior map with that of its refined mask.
pub fn uncertainty_report(cases: &[CorpusCase], config: &LevelSetConfig) -> Result<Vec<UncertaintyRow>> {
    cases
        .iter()
        .map(|case| {
            let seg = segment(&case.image, &case.prior, config)?;
            let prior_variance = pixel_variance(case.prior.plane());
            let result_variance = pixel_variance(&seg.mask.to_plane());
            let direction = if result_variance < prior_variance {
                VarianceDirection::ResultLower
            } else if result_variance > prior_variance {
                VarianceDirection::ResultHigher
            } else {
                VarianceDirection::Equal
            };
            Ok(UncertaintyRow {
                case: case.name.clone(),
                prior_variance,
                result_variance,
                direction,
                dice: overlap(&seg.mask, &case.gt)?.dice,
            })
        })
        .collect()
}

use std::fmt::Write;

use serde::Serialize;

use super::config::{InitPosition, LevelSetConfig};
use super::edge::edge_indicator;
use super::energy::energy;
use super::evolve::evolve_step_at;
use super::init::{centered_circle, init_phi_from_prior};
use super::stats::{region_stats, RegionStats};
use crate::error::{check_dims, Error, Region, Result};
use crate::grid::{BinaryMask, GrayImage, LevelSetField, ProbMap};
use crate::texture::build_features;

/// Per-iteration record of an evolution run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EvolutionDiagnostics {
    /// Energy of the field entering each iteration, with freshly estimated statistics.
    pub energy: Vec<f64>,
    pub max_delta: Vec<f64>,
    /// Foreground pixel count after each iteration.
    pub area: Vec<usize>,
    pub iterations: usize,
    /// The initial contour enclosed the whole image.
    pub empty_background_init: bool,
}

impl EvolutionDiagnostics {
    /// `iteration,energy,max_delta,area` rows, one per iteration.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,energy,max_delta,area\n");
        for i in 0..self.iterations {
            writeln!(
                out,
                "{},{:.9e},{:.9e},{}",
                i + 1,
                self.energy[i],
                self.max_delta[i],
                self.area[i]
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Segmentation {
    pub mask: BinaryMask,
    pub phi: LevelSetField,
    pub diagnostics: EvolutionDiagnostics,
    pub stats: RegionStats,
}

/// Initial level-set field according to `config.init_position`.
pub fn initial_phi(prior: &ProbMap, config: &LevelSetConfig) -> Result<(LevelSetField, bool)> {
    match config.init_position {
        InitPosition::Prior => {
            let init = init_phi_from_prior(prior, config.init_threshold, config.init_amplitude)?;
            Ok((init.phi, init.empty_background))
        }
        InitPosition::CenteredCircle => {
            let (w, h) = prior.dims();
            Ok((centered_circle(w, h, config.init_amplitude)?, false))
        }
    }
}

/// Multi-cue level-set refinement of a prior map.
///
/// Builds the cue stack once, initializes the contour, then for `steps`
/// iterations re-estimates region statistics every `stats_refresh`
/// iterations and applies one explicit update. The result mask is `{phi > 0}`.
pub fn segment(image: &GrayImage, prior: &ProbMap, config: &LevelSetConfig) -> Result<Segmentation> {
    config.validate()?;
    check_dims(image.dims(), prior.dims())?;
    let features = build_features(image, prior, &config.diffusion)?;
    let edge = edge_indicator(image, config.sigma_edge, config.edge_indicator);
    let (mut phi, empty_background_init) = initial_phi(prior, config)?;
    let total = phi.plane().len();

    let mut diag = EvolutionDiagnostics {
        empty_background_init,
        ..Default::default()
    };
    let mut stats: Option<RegionStats> = None;
    for n in 0..config.steps {
        if n % config.stats_refresh == 0 || stats.is_none() {
            stats = Some(
                region_stats(&features, &phi, config.tau, config.sigma_floor).map_err(|e| match e {
                    Error::ContourCollapse { region, .. } => Error::ContourCollapse {
                        region,
                        iteration: Some(n),
                    },
                    e => e,
                })?,
            );
        }
        let current = stats.as_ref().expect("estimated above");
        diag.energy.push(energy(&phi, &features, current, &edge, config)?);
        let step = evolve_step_at(&phi, &features, current, &edge, config, n + 1)?;
        phi = step.phi;
        let area = phi.plane().data().iter().filter(|&&v| v > 0.0).count();
        diag.max_delta.push(step.max_delta);
        diag.area.push(area);
        diag.iterations = n + 1;
        if area == 0 || (area == total && !empty_background_init) {
            return Err(Error::ContourCollapse {
                region: if area == 0 { Region::Inside } else { Region::Outside },
                iteration: Some(n + 1),
            });
        }
    }
    Ok(Segmentation {
        mask: phi.interior(),
        phi,
        diagnostics: diag,
        stats: stats.expect("steps >= 1"),
    })
}

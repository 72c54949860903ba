use serde::{Deserialize, Serialize};

use super::edge::EdgeIndicatorMode;
use crate::error::{Error, Result};
use crate::texture::DiffusionParams;

/// Where the initial contour comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitPosition {
    /// Threshold the prior map.
    #[default]
    Prior,
    /// Fixed circle of radius `min(w, h) / 4` in the middle of the image.
    CenteredCircle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LevelSetConfig {
    /// Time step.
    pub eta: f64,
    /// Distance-regularization weight.
    pub nu: f64,
    /// Length-term weight.
    pub mu: f64,
    /// Heaviside / Dirac regularization width.
    pub tau: f64,
    /// Per-channel cue weights.
    pub omega: [f64; 5],
    /// Gaussian scale of the edge indicator.
    pub sigma_edge: f64,
    pub steps: usize,
    /// Prior threshold for the initial contour.
    pub init_threshold: f64,
    /// Magnitude of the binary-step initial field.
    pub init_amplitude: f64,
    /// Per-channel on/off switches (gray, three texture, prior).
    pub channels: [bool; 5],
    pub sigma_floor: f64,
    /// Region statistics are re-estimated every this many iterations.
    pub stats_refresh: usize,
    pub edge_indicator: EdgeIndicatorMode,
    pub init_position: InitPosition,
    pub diffusion: DiffusionParams,
}

impl Default for LevelSetConfig {
    fn default() -> Self {
        Self {
            eta: 0.1,
            nu: 0.01,
            mu: 0.001 * 255.0 * 255.0,
            tau: 0.01,
            omega: [1.0; 5],
            sigma_edge: 3.0,
            steps: 500,
            init_threshold: 0.5,
            init_amplitude: 2.0,
            channels: [true; 5],
            sigma_floor: 1e-2,
            stats_refresh: 1,
            edge_indicator: EdgeIndicatorMode::SmoothedGradient,
            init_position: InitPosition::Prior,
            diffusion: DiffusionParams::default(),
        }
    }
}

impl LevelSetConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("eta", self.eta),
            ("tau", self.tau),
            ("sigma_edge", self.sigma_edge),
            ("init_amplitude", self.init_amplitude),
            ("sigma_floor", self.sigma_floor),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be > 0, got {v}")));
            }
        }
        for (name, v) in [("nu", self.nu), ("mu", self.mu)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be >= 0, got {v}")));
            }
        }
        if let Some(w) = self.omega.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidInput(format!("cue weights must be >= 0, got {w}")));
        }
        if self.steps == 0 {
            return Err(Error::InvalidInput("steps must be >= 1".into()));
        }
        if self.stats_refresh == 0 {
            return Err(Error::InvalidInput("stats_refresh must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.init_threshold) {
            return Err(Error::InvalidInput(format!(
                "init_threshold must lie in [0, 1), got {}",
                self.init_threshold
            )));
        }
        self.diffusion.validate()
    }

    /// Texture channels (1..=3) switched off.
    pub fn without_texture(mut self) -> Self {
        self.channels[1..4].fill(false);
        self
    }

    /// Prior channel switched off.
    pub fn without_prior(mut self) -> Self {
        self.channels[4] = false;
        self
    }

    /// Initial contour from a fixed centered circle instead of the prior.
    pub fn without_position(mut self) -> Self {
        self.init_position = InitPosition::CenteredCircle;
        self
    }
}

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::formats::read_bytes;
use crate::levelset::LevelSetConfig;

/// Cue and initialization switches applied on top of a level-set config.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Ablation {
    /// Start from a centered circle instead of the thresholded prior.
    pub no_position: bool,
    pub no_texture: bool,
    pub no_prior: bool,
}

impl Ablation {
    pub fn apply(&self, mut config: LevelSetConfig) -> LevelSetConfig {
        if self.no_position {
            config = config.without_position();
        }
        if self.no_texture {
            config = config.without_texture();
        }
        if self.no_prior {
            config = config.without_prior();
        }
        config
    }
}

/// Everything a run needs, as one JSON document.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub levelset: LevelSetConfig,
    pub ablation: Ablation,
    /// Seed for synthetic corpus generation.
    pub seed: u64,
    pub image: Option<PathBuf>,
    pub prior: Option<PathBuf>,
    pub gt: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = read_bytes(path.as_ref())?;
        Ok(serde_json::from_slice(&bytes)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Level-set config with the ablation switches applied, validated.
    pub fn effective(&self) -> Result<LevelSetConfig> {
        let config = self.ablation.apply(self.levelset.clone());
        config.validate()?;
        Ok(config)
    }
}

/// The five cue/initialization configurations compared in an ablation study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AblationVariant {
    Full,
    NoPosition,
    NoTexture,
    NoPrior,
    NoPriorNoTexture,
}

impl AblationVariant {
    pub const ALL: [AblationVariant; 5] = [
        AblationVariant::Full,
        AblationVariant::NoPosition,
        AblationVariant::NoTexture,
        AblationVariant::NoPrior,
        AblationVariant::NoPriorNoTexture,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AblationVariant::Full => "full",
            AblationVariant::NoPosition => "no-position",
            AblationVariant::NoTexture => "no-texture",
            AblationVariant::NoPrior => "no-prior",
            AblationVariant::NoPriorNoTexture => "no-prior-no-texture",
        }
    }

    pub fn switches(self) -> Ablation {
        let (no_position, no_texture, no_prior) = match self {
            AblationVariant::Full => (false, false, false),
            AblationVariant::NoPosition => (true, false, false),
            AblationVariant::NoTexture => (false, true, false),
            AblationVariant::NoPrior => (false, false, true),
            AblationVariant::NoPriorNoTexture => (false, true, true),
        };
        Ablation {
            no_position,
            no_texture,
            no_prior,
        }
    }
}

//! Hounsfield-unit windowing of raw CT intensities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GrayImage, Plane};

/// Display window in Hounsfield units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuWindow {
    pub level: f64,
    pub width: f64,
}

impl HuWindow {
    /// Abdominal soft-tissue window (level 50, width 250), i.e. `[-75, 175]` HU.
    pub const PANCREAS: HuWindow = HuWindow {
        level: 50.0,
        width: 250.0,
    };

    pub fn new(level: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || !level.is_finite() {
            return Err(Error::InvalidInput(format!(
                "HU window needs finite level and positive width, got level {level}, width {width}"
            )));
        }
        Ok(Self { level, width })
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.level - self.width / 2.0, self.level + self.width / 2.0)
    }

    /// Maps one HU value into `[0, 255]`.
    #[inline]
    pub fn apply(&self, hu: f64) -> f64 {
        let (lo, hi) = self.bounds();
        (hu.clamp(lo, hi) - lo) / (hi - lo) * 255.0
    }
}

/// Clamps raw HU values to the window and maps them affinely onto `[0, 255]`.
pub fn window_hu(raw: &Plane, window: HuWindow) -> Result<GrayImage> {
    if let Some(i) = raw.data().iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "raw HU value at index {i} is not finite"
        )));
    }
    GrayImage::new(raw.map(|v| window.apply(v)))
}

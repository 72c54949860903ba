use serde::{Deserialize, Serialize};

use crate::filter::{central_gradient, gaussian_blur};
use crate::grid::{GrayImage, Plane};

/// How the edge-stopping weight of the length term is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeIndicatorMode {
    /// `1 / (1 + |grad(K_sigma * I)|)`
    #[default]
    SmoothedGradient,
    /// `1 / (1 + |K_sigma * I|)`, which weights intensity rather than edges.
    /// Kept for compatibility with the formula as literally printed.
    LiteralIntensity,
}

/// Edge indicator in `(0, 1]`: close to 1 in flat regions, small on edges.
pub fn edge_indicator(image: &GrayImage, sigma: f64, mode: EdgeIndicatorMode) -> Plane {
    let smooth = gaussian_blur(image.plane(), sigma);
    match mode {
        EdgeIndicatorMode::SmoothedGradient => {
            let (gr, gc) = central_gradient(&smooth);
            gr.zip_map(&gc, |a, b| 1.0 / (1.0 + (a * a + b * b).sqrt()))
                .expect("same dims")
        }
        EdgeIndicatorMode::LiteralIntensity => smooth.map(|v| 1.0 / (1.0 + v.abs())),
    }
}

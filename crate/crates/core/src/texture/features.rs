use super::diffusion::{aos_diffuse, DiffusionParams};
use super::tensor::{structure_tensor_init, tensor_sqrt, TensorSqrt};
use crate::error::{check_dims, Result};
use crate::grid::{GrayImage, Plane, ProbMap};

/// Channel names, in stack order.
pub const CHANNELS: [&str; 5] = ["gray", "texture_rr", "texture_cc", "texture_rc", "prior"];

/// Normalized cue channels `(I, 2 s11, 2 s22, 4 s12, P)`, each min-max mapped to `[0, 255]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureStack {
    channels: [Plane; 5],
}

impl FeatureStack {
    pub fn new(channels: [Plane; 5]) -> Result<Self> {
        for ch in &channels[1..] {
            check_dims(channels[0].dims(), ch.dims())?;
        }
        Ok(Self { channels })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.channels[0].dims()
    }

    pub fn channel(&self, j: usize) -> &Plane {
        &self.channels[j]
    }

    pub fn channels(&self) -> &[Plane; 5] {
        &self.channels
    }
}

/// Min-max maps a plane onto `[0, 255]`; a constant plane maps to zeros.
pub fn normalize_channel(plane: &Plane) -> Plane {
    let (lo, hi) = plane.min_max();
    let span = hi - lo;
    if !(span > 0.0) {
        return Plane::zeros(plane.width(), plane.height());
    }
    plane.map(|v| ((v - lo) / span * 255.0).clamp(0.0, 255.0))
}

/// Scales `(gray, s11, s22, s12)` by `(1, 2, 2, 4)`, appends the prior, and
/// normalizes every channel independently.
pub fn assemble_features(image: &GrayImage, sqrt: &TensorSqrt, prior: &ProbMap) -> Result<FeatureStack> {
    let dims = image.dims();
    check_dims(dims, sqrt.s11.dims())?;
    check_dims(dims, sqrt.s22.dims())?;
    check_dims(dims, sqrt.s12.dims())?;
    check_dims(dims, prior.dims())?;
    let raw = [
        image.plane().clone(),
        sqrt.s11.map(|v| 2.0 * v),
        sqrt.s22.map(|v| 2.0 * v),
        sqrt.s12.map(|v| 4.0 * v),
        prior.plane().clone(),
    ];
    FeatureStack::new(raw.map(|p| normalize_channel(&p)))
}

/// Full cue construction: tensor initialization, nonlinear diffusion,
/// square root, and assembly with the prior.
pub fn build_features(image: &GrayImage, prior: &ProbMap, params: &DiffusionParams) -> Result<FeatureStack> {
    check_dims(image.dims(), prior.dims())?;
    let mut tensor = structure_tensor_init(image);
    let k = params.intensity_scale * params.intensity_scale;
    for ch in tensor.channels_mut() {
        *ch = ch.map(|v| v * k);
    }
    let diffused = aos_diffuse(&tensor, params)?;
    let sqrt = tensor_sqrt(&diffused)?;
    assemble_features(image, &sqrt, prior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BinaryMask;

    fn disk_image(n: usize, radius: f64) -> GrayImage {
        let c = (n / 2) as f64;
        GrayImage::new(Plane::from_fn(n, n, |r, cc| {
            let d = ((r as f64 - c).powi(2) + (cc as f64 - c).powi(2)).sqrt();
            if d <= radius {
                200.0
            } else {
                40.0
            }
        }))
        .unwrap()
    }

    #[test]
    fn binary_prior_becomes_two_level_channel() {
        let img = disk_image(21, 5.0);
        let gt = img.plane().map(|v| if v > 100.0 { 1.0 } else { 0.0 });
        let prior = ProbMap::new(gt).unwrap();
        let f = build_features(&img, &prior, &DiffusionParams::default()).unwrap();
        assert!(f.channel(4).data().iter().all(|&v| v == 0.0 || v == 255.0));
    }

    #[test]
    fn constant_texture_channel_is_zero() {
        let img = GrayImage::new(Plane::filled(8, 8, 50.0)).unwrap();
        let prior = BinaryMask::from_fn(8, 8, |r, _| r < 4).to_prob_map();
        let f = build_features(&img, &prior, &DiffusionParams::default()).unwrap();
        for j in 0..4 {
            assert!(f.channel(j).data().iter().all(|&v| v == 0.0), "channel {j}");
        }
    }

    #[test]
    fn full_range_gray_is_fixed_point() {
        let img = GrayImage::new(Plane::from_fn(16, 16, |r, c| ((r * 16 + c) as f64).min(255.0))).unwrap();
        let prior = ProbMap::new(Plane::filled(16, 16, 0.5)).unwrap();
        let f = build_features(&img, &prior, &DiffusionParams::default()).unwrap();
        assert_eq!(f.channel(0), img.plane());
        assert!(f.channel(4).data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let img = disk_image(9, 3.0);
        let prior = ProbMap::new(Plane::zeros(8, 9)).unwrap();
        assert!(build_features(&img, &prior, &DiffusionParams::default()).is_err());
    }

    #[test]
    fn every_channel_in_range() {
        let img = disk_image(33, 10.0);
        let prior = ProbMap::new(img.plane().map(|v| v / 255.0)).unwrap();
        let f = build_features(&img, &prior, &DiffusionParams::default()).unwrap();
        for ch in f.channels() {
            let (lo, hi) = ch.min_max();
            assert!(lo >= 0.0 && hi <= 255.0);
        }
    }
}

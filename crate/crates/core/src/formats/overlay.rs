use std::path::Path;

use crate::error::{check_dims, Result};
use crate::grid::{BinaryMask, GrayImage, Plane};

use super::write_bytes;

/// Grey level for pixels where prediction and reference disagree.
pub const LEVEL_DISAGREE: f64 = 128.0;
/// Grey level for pixels predicted and confirmed by the reference.
pub const LEVEL_AGREE: f64 = 255.0;

/// Three-level overlay: 0 background, 128 where exactly one of prediction and
/// reference is set, 255 where both are set. Without a reference every
/// predicted pixel renders at 255.
pub fn render_overlay_gray(pred: &BinaryMask, gt: Option<&BinaryMask>) -> Result<Plane> {
    let (w, h) = pred.dims();
    if let Some(gt) = gt {
        check_dims(pred.dims(), gt.dims())?;
    }
    Ok(Plane::from_fn(w, h, |r, c| {
        let p = pred.get(r, c);
        match gt {
            None if p => LEVEL_AGREE,
            None => 0.0,
            Some(gt) => match (p, gt.get(r, c)) {
                (true, true) => LEVEL_AGREE,
                (false, false) => 0.0,
                _ => LEVEL_DISAGREE,
            },
        }
    }))
}

/// Colour overlay on the grey image: reference-only pixels red, prediction-only
/// green, agreement yellow. Returns interleaved RGB bytes.
pub fn render_overlay_rgb(
    image: &GrayImage,
    pred: &BinaryMask,
    gt: Option<&BinaryMask>,
) -> Result<Vec<u8>> {
    check_dims(image.dims(), pred.dims())?;
    if let Some(gt) = gt {
        check_dims(pred.dims(), gt.dims())?;
    }
    let (w, h) = pred.dims();
    let mut out = Vec::with_capacity(w * h * 3);
    for r in 0..h {
        for c in 0..w {
            let g = image.plane().get(r, c).round().clamp(0.0, 255.0) as u8;
            let in_gt = gt.is_some_and(|m| m.get(r, c));
            let rgb = match (pred.get(r, c), in_gt) {
                (true, true) => [255, 255, 0],
                (true, false) => [0, 255, 0],
                (false, true) => [255, 0, 0],
                (false, false) => [g, g, g],
            };
            out.extend(rgb);
        }
    }
    Ok(out)
}

pub fn write_ppm(width: usize, height: usize, rgb: &[u8], path: impl AsRef<Path>) -> Result<()> {
    let mut bytes = format!("P6\n{width} {height}\n255\n").into_bytes();
    bytes.extend_from_slice(rgb);
    write_bytes(path.as_ref(), &bytes)?;
    Ok(())
}

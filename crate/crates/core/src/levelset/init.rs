use crate::error::{Error, Result};
use crate::grid::{LevelSetField, Plane, ProbMap};

/// Binary-step initialization from a prior map.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiInit {
    pub phi: LevelSetField,
    /// Every pixel started inside; the outside region only exists through
    /// the Heaviside tails.
    pub empty_background: bool,
}

/// `phi0 = +c` where `prior > beta`, `-c` elsewhere.
pub fn init_phi_from_prior(prior: &ProbMap, beta: f64, c: f64) -> Result<PhiInit> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidInput(format!("init threshold must lie in [0, 1), got {beta}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidInput(format!("init amplitude must be > 0, got {c}")));
    }
    let p = prior.plane();
    let inside = p.data().iter().filter(|&&v| v > beta).count();
    if inside == 0 {
        return Err(Error::EmptyForeground { beta });
    }
    let empty_background = inside == p.len();
    if empty_background {
        log::warn!("init threshold {beta} puts every pixel inside the initial contour");
    }
    let phi = LevelSetField::new(p.map(|v| if v > beta { c } else { -c }))?;
    Ok(PhiInit {
        phi,
        empty_background,
    })
}

/// Binary-step field of a circle; `center` is `[x, y]` = `[column, row]`.
pub fn init_phi_circle(width: usize, height: usize, center: [f64; 2], radius: f64, c: f64) -> Result<LevelSetField> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("circle radius must be > 0, got {radius}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidInput(format!("init amplitude must be > 0, got {c}")));
    }
    let [x, y] = center;
    if x - radius < 0.0 || y - radius < 0.0 || x + radius > (width - 1) as f64 || y + radius > (height - 1) as f64 {
        return Err(Error::InvalidInput(format!(
            "circle at ({x}, {y}) radius {radius} leaves the {width}x{height} canvas"
        )));
    }
    LevelSetField::new(Plane::from_fn(width, height, |r, col| {
        let (dx, dy) = (col as f64 - x, r as f64 - y);
        if dx * dx + dy * dy <= radius * radius {
            c
        } else {
            -c
        }
    }))
}

/// Centered circle with radius `min(width, height) / 4`.
pub fn centered_circle(width: usize, height: usize, c: f64) -> Result<LevelSetField> {
    let center = [(width - 1) as f64 / 2.0, (height - 1) as f64 / 2.0];
    init_phi_circle(width, height, center, width.min(height) as f64 / 4.0, c)
}

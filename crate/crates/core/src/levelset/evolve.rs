use super::config::LevelSetConfig;
use super::forces::log_likelihood_ratio;
use super::regularized::dirac;
use super::stats::RegionStats;
use crate::error::{check_dims, Error, Result};
use crate::filter::{central_gradient, divergence, laplacian};
use crate::grid::{LevelSetField, Plane};
use crate::texture::FeatureStack;

/// Regularizer inside `|grad phi|` to avoid dividing by zero.
pub const GRAD_EPS: f64 = 1e-8;

/// Largest per-pixel update accepted before the evolution is declared divergent.
pub const MAX_UPDATE: f64 = 1e3;

/// Updated field and the largest absolute per-pixel change.
#[derive(Clone, Debug)]
pub struct StepResult {
    pub phi: LevelSetField,
    pub max_delta: f64,
}

/// Unit normal `(n_r, n_c) = grad phi / |grad phi|_eps`.
pub(crate) fn unit_normal(phi: &Plane) -> (Plane, Plane) {
    let (pr, pc) = central_gradient(phi);
    let mag = pr
        .zip_map(&pc, |a, b| (a * a + b * b + GRAD_EPS * GRAD_EPS).sqrt())
        .expect("same dims");
    (
        pr.zip_map(&mag, |a, m| a / m).expect("same dims"),
        pc.zip_map(&mag, |a, m| a / m).expect("same dims"),
    )
}

/// Explicit update, tagging any failure with `iteration`:
/// `phi += eta * (nu (lap phi - div n) + mu delta(phi) div(g n) + LLR delta(phi))`.
pub fn evolve_step_at(
    phi: &LevelSetField,
    features: &FeatureStack,
    stats: &RegionStats,
    edge: &Plane,
    config: &LevelSetConfig,
    iteration: usize,
) -> Result<StepResult> {
    check_dims(phi.dims(), features.dims())?;
    check_dims(phi.dims(), edge.dims())?;
    let p = phi.plane();
    let (nr, nc) = unit_normal(p);
    let curvature = divergence(&nr, &nc);
    let lap = laplacian(p);
    let gnr = edge.zip_map(&nr, |g, n| g * n)?;
    let gnc = edge.zip_map(&nc, |g, n| g * n)?;
    let edge_div = divergence(&gnr, &gnc);
    let llr = log_likelihood_ratio(features, stats, &config.omega, &config.channels)?;

    let (w, h) = p.dims();
    let mut next = Vec::with_capacity(w * h);
    let mut max_delta = 0.0f64;
    for i in 0..w * h {
        let v = p.data()[i];
        let d = dirac(v, config.tau);
        let velocity = config.nu * (lap.data()[i] - curvature.data()[i])
            + config.mu * d * edge_div.data()[i]
            + llr.data()[i] * d;
        let delta = config.eta * velocity;
        if !delta.is_finite() || delta.abs() > MAX_UPDATE {
            return Err(Error::Divergence {
                iteration,
                message: format!(
                    "update {delta:e} at pixel ({}, {}) exceeds the bound {MAX_UPDATE:e}",
                    i / w,
                    i % w
                ),
            });
        }
        max_delta = max_delta.max(delta.abs());
        next.push(v + delta);
    }
    Ok(StepResult {
        phi: LevelSetField::new(Plane::new(w, h, next)?)?,
        max_delta,
    })
}

/// One explicit evolution step.
pub fn evolve_step(
    phi: &LevelSetField,
    features: &FeatureStack,
    stats: &RegionStats,
    edge: &Plane,
    config: &LevelSetConfig,
) -> Result<LevelSetField> {
    evolve_step_at(phi, features, stats, edge, config, 1).map(|s| s.phi)
}

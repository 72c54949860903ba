use serde::Serialize;

use super::config::LevelSetConfig;
use super::regularized::heaviside;
use super::stats::RegionStats;
use crate::error::{check_dims, Result};
use crate::filter::central_gradient;
use crate::grid::{LevelSetField, Plane};
use crate::texture::FeatureStack;

/// Energy split into its three terms; `total` is their sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyTerms {
    pub regularization: f64,
    pub length: f64,
    pub fitting: f64,
    pub total: f64,
}

/// `1/2 nu sum (|grad phi| - 1)^2 + mu sum g |grad H(phi)|
///  - sum_j omega_j sum_i sum log p_ij(F_j) X_i(phi)` over unit pixels.
pub fn energy_terms(
    phi: &LevelSetField,
    features: &FeatureStack,
    stats: &RegionStats,
    edge: &Plane,
    config: &LevelSetConfig,
) -> Result<EnergyTerms> {
    check_dims(phi.dims(), features.dims())?;
    check_dims(phi.dims(), edge.dims())?;
    let p = phi.plane();
    let (pr, pc) = central_gradient(p);
    // delta(phi) |grad phi| = |grad H(phi)|; differencing H(phi) keeps the
    // length term bounded when a pixel value passes close to zero
    let h = p.map(|v| heaviside(v, config.tau));
    let (hr, hc) = central_gradient(&h);
    let mut regularization = 0.0;
    let mut length = 0.0;
    for i in 0..p.len() {
        let grad = pr.data()[i].hypot(pc.data()[i]);
        regularization += (grad - 1.0).powi(2);
        length += edge.data()[i] * hr.data()[i].hypot(hc.data()[i]);
    }
    regularization *= 0.5 * config.nu;
    length *= config.mu;

    let mut fitting = 0.0;
    for j in (0..5).filter(|&j| config.channels[j] && config.omega[j] != 0.0) {
        let mut acc = 0.0;
        for (&f, &v) in features.channel(j).data().iter().zip(p.data()) {
            acc += stats.log_density(0, j, f) * heaviside(v, config.tau)
                + stats.log_density(1, j, f) * heaviside(-v, config.tau);
        }
        fitting -= config.omega[j] * acc;
    }
    Ok(EnergyTerms {
        regularization,
        length,
        fitting,
        total: regularization + length + fitting,
    })
}

pub fn energy(
    phi: &LevelSetField,
    features: &FeatureStack,
    stats: &RegionStats,
    edge: &Plane,
    config: &LevelSetConfig,
) -> Result<f64> {
    energy_terms(phi, features, stats, edge, config).map(|t| t.total)
}

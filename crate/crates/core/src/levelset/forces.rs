use super::stats::RegionStats;
use crate::error::Result;
use crate::grid::Plane;
use crate::texture::FeatureStack;

/// Bound on each channel's log-density ratio before weighting.
pub const LOG_RATIO_CLAMP: f64 = 50.0;

/// Per pixel `sum_j omega_j * clamp(log p_in,j(F_j) - log p_out,j(F_j))` over
/// the enabled channels.
pub fn log_likelihood_ratio(
    features: &FeatureStack,
    stats: &RegionStats,
    omega: &[f64; 5],
    enabled: &[bool; 5],
) -> Result<Plane> {
    let (w, h) = features.dims();
    let mut out = Plane::zeros(w, h);
    for j in (0..5).filter(|&j| enabled[j] && omega[j] != 0.0) {
        let (m1, s1) = (stats.mu[0][j], stats.sigma[0][j]);
        let (m2, s2) = (stats.mu[1][j], stats.sigma[1][j]);
        let log_ratio_sigma = (s2 / s1).ln();
        let (k1, k2) = (0.5 / (s1 * s1), 0.5 / (s2 * s2));
        for (o, &f) in out.data_mut().iter_mut().zip(features.channel(j).data()) {
            let term = log_ratio_sigma + k2 * (f - m2).powi(2) - k1 * (f - m1).powi(2);
            *o += omega[j] * term.clamp(-LOG_RATIO_CLAMP, LOG_RATIO_CLAMP);
        }
    }
    Ok(out)
}

use serde::{Deserialize, Serialize};

use super::regularized::heaviside;
use crate::error::{check_dims, Error, Region, Result};
use crate::grid::LevelSetField;
use crate::texture::FeatureStack;

/// Smallest accepted total soft-indicator mass of a region.
pub const MIN_REGION_MASS: f64 = 1e-9;

/// Gaussian parameters per region (`0` inside, `1` outside) and channel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionStats {
    pub mu: [[f64; 5]; 2],
    pub sigma: [[f64; 5]; 2],
}

impl RegionStats {
    /// Region roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            mu: [self.mu[1], self.mu[0]],
            sigma: [self.sigma[1], self.sigma[0]],
        }
    }

    /// `log N(f; mu_ij, sigma_ij)`
    #[inline]
    pub fn log_density(&self, region: usize, channel: usize, f: f64) -> f64 {
        let mu = self.mu[region][channel];
        let sigma = self.sigma[region][channel];
        let z = (f - mu) / sigma;
        -0.5 * (std::f64::consts::TAU).ln() - sigma.ln() - 0.5 * z * z
    }
}

/// Soft-indicator weighted means and standard deviations,
/// `X_in = H(phi)`, `X_out = 1 - H(phi)`, with `sigma >= sigma_floor`.
pub fn region_stats(features: &FeatureStack, phi: &LevelSetField, tau: f64, sigma_floor: f64) -> Result<RegionStats> {
    check_dims(features.dims(), phi.dims())?;
    // outside weight as H(-phi) so that negating phi swaps the regions bit-exactly
    let w_in: Vec<f64> = phi.plane().data().iter().map(|&v| heaviside(v, tau)).collect();
    let w_out: Vec<f64> = phi.plane().data().iter().map(|&v| heaviside(-v, tau)).collect();
    let mass_in: f64 = w_in.iter().sum();
    let mass_out: f64 = w_out.iter().sum();
    for (mass, region) in [(mass_in, Region::Inside), (mass_out, Region::Outside)] {
        if !(mass >= MIN_REGION_MASS) {
            return Err(Error::ContourCollapse {
                region,
                iteration: None,
            });
        }
    }
    let mut mu = [[0.0; 5]; 2];
    let mut sigma = [[0.0; 5]; 2];
    for (j, ch) in features.channels().iter().enumerate() {
        let data = ch.data();
        let (mut s_in, mut s_out) = (0.0, 0.0);
        for ((&f, &a), &b) in data.iter().zip(&w_in).zip(&w_out) {
            s_in += f * a;
            s_out += f * b;
        }
        let (m_in, m_out) = (s_in / mass_in, s_out / mass_out);
        let (mut v_in, mut v_out) = (0.0, 0.0);
        for ((&f, &a), &b) in data.iter().zip(&w_in).zip(&w_out) {
            v_in += (f - m_in).powi(2) * a;
            v_out += (f - m_out).powi(2) * b;
        }
        mu[0][j] = m_in;
        mu[1][j] = m_out;
        sigma[0][j] = (v_in / mass_in).sqrt().max(sigma_floor);
        sigma[1][j] = (v_out / mass_out).sqrt().max(sigma_floor);
    }
    Ok(RegionStats { mu, sigma })
}

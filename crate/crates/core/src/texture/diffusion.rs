//! Nonlinear diffusion of the tensor channels with a joint, edge-stopping
//! diffusivity, integrated by additive operator splitting (AOS).

use serde::{Deserialize, Serialize};

use super::tensor::TensorField;
use super::tridiag::Tridiagonal;
use crate::error::{Error, Result};
use crate::filter::central_gradient;
use crate::grid::Plane;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffusionParams {
    /// Regularizes the diffusivity at zero gradient.
    pub tau: f64,
    /// Diffusivity exponent in `(0, 2]`.
    pub p: f64,
    /// AOS time step.
    pub step_size: f64,
    pub steps: usize,
    /// Factor applied to image intensities before the tensor is built.
    pub intensity_scale: f64,
}

impl Default for DiffusionParams {
    fn default() -> Self {
        Self {
            tau: 0.01,
            p: 1.6,
            step_size: 5.0,
            steps: 5,
            intensity_scale: 1.0 / 255.0,
        }
    }
}

impl DiffusionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidInput(format!("diffusion tau must be > 0, got {}", self.tau)));
        }
        if !(self.p > 0.0 && self.p <= 2.0) {
            return Err(Error::InvalidInput(format!("diffusion p must lie in (0, 2], got {}", self.p)));
        }
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return Err(Error::InvalidInput(format!(
                "diffusion step size must be > 0, got {}",
                self.step_size
            )));
        }
        Ok(())
    }
}

/// `g(s) = (s + tau^2)^(-p/2)` where `s` is a squared gradient magnitude.
#[inline]
pub fn diffusivity(grad_sq_sum: f64, params: &DiffusionParams) -> f64 {
    (grad_sq_sum + params.tau * params.tau).powf(-0.5 * params.p)
}

/// Sum over the three channels of the squared central-difference gradient.
pub fn joint_gradient_energy(field: &TensorField) -> Plane {
    let (w, h) = field.dims();
    let mut acc = Plane::zeros(w, h);
    for ch in field.channels() {
        let (dr, dc) = central_gradient(ch);
        for ((a, r), c) in acc.data_mut().iter_mut().zip(dr.data()).zip(dc.data()) {
            *a += r * r + c * c;
        }
    }
    acc
}

/// Builds and factors `I - 2 dt A` for one line with diffusivities `g`
/// (half-point values are arithmetic means; no flux across the ends).
fn line_system(g: &[f64], dt: f64) -> Result<Tridiagonal> {
    let n = g.len();
    let mut diag = vec![1.0; n];
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let gh = 0.5 * (g[i] + g[i + 1]);
        let k = 2.0 * dt * gh;
        diag[i] += k;
        diag[i + 1] += k;
        off.push(-k);
    }
    Tridiagonal::factor(&diag, &off)
}

/// One AOS step: `u' = 1/2 * sum_axis (I - 2 dt A_axis(g))^-1 u`, with a single
/// diffusivity field `g` shared by all channels.
pub fn aos_step(field: &TensorField, params: &DiffusionParams) -> Result<TensorField> {
    let (w, h) = field.dims();
    let g = joint_gradient_energy(field).map(|s| diffusivity(s, params));
    let dt = params.step_size;
    let mut out = [
        Plane::zeros(w, h),
        Plane::zeros(w, h),
        Plane::zeros(w, h),
    ];
    let inputs = field.channels();

    // along columns index (each row is a line)
    let mut buf = vec![0.0; w.max(h)];
    for r in 0..h {
        let sys = line_system(&g.data()[r * w..(r + 1) * w], dt)?;
        for (k, input) in inputs.iter().enumerate() {
            let line = &mut buf[..w];
            line.copy_from_slice(&input.data()[r * w..(r + 1) * w]);
            sys.solve_in_place(line);
            for (o, v) in out[k].data_mut()[r * w..(r + 1) * w].iter_mut().zip(line.iter()) {
                *o = 0.5 * v;
            }
        }
    }
    // along rows index (each column is a line)
    let mut gcol = vec![0.0; h];
    for c in 0..w {
        for (r, v) in gcol.iter_mut().enumerate() {
            *v = g.get(r, c);
        }
        let sys = line_system(&gcol, dt)?;
        for (k, input) in inputs.iter().enumerate() {
            let line = &mut buf[..h];
            for (r, v) in line.iter_mut().enumerate() {
                *v = input.get(r, c);
            }
            sys.solve_in_place(line);
            for (r, v) in line.iter().enumerate() {
                let acc = out[k].get(r, c) + 0.5 * v;
                out[k].set(r, c, acc);
            }
        }
    }
    let [rr, cc, rc2] = out;
    TensorField::new(rr, cc, rc2)
}

/// Runs `params.steps` AOS steps.
pub fn aos_diffuse(field: &TensorField, params: &DiffusionParams) -> Result<TensorField> {
    params.validate()?;
    let mut current = field.clone();
    for step in 0..params.steps {
        current = aos_step(&current, params)?;
        if !current.channels().iter().all(|p| p.all_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite tensor value after diffusion step {}",
                step + 1
            )));
        }
    }
    Ok(current)
}

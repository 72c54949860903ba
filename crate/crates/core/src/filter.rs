//! Separable Gaussian smoothing and finite-difference stencils with
//! reflecting (Neumann) borders.

use crate::grid::{reflect, Plane};

/// Normalized 1-D Gaussian taps on `[-radius, radius]`, `radius = ceil(4 sigma)`.
/// `sigma <= 0` yields the identity kernel `[1]`.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    if !(sigma > 0.0) {
        return vec![1.0];
    }
    let radius = (4.0 * sigma).ceil() as isize;
    let taps: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / sum).collect()
}

/// Convolves with a Gaussian of standard deviation `sigma`, separably, using
/// a half-sample symmetric extension at the borders.
pub fn gaussian_blur(plane: &Plane, sigma: f64) -> Plane {
    let kernel = gaussian_kernel(sigma);
    if kernel.len() == 1 {
        return plane.clone();
    }
    let radius = (kernel.len() / 2) as isize;
    let (w, h) = plane.dims();
    let rows = Plane::from_fn(w, h, |r, c| {
        kernel
            .iter()
            .enumerate()
            .map(|(k, &t)| t * plane.get(r, reflect(c as isize + k as isize - radius, w)))
            .sum()
    });
    Plane::from_fn(w, h, |r, c| {
        kernel
            .iter()
            .enumerate()
            .map(|(k, &t)| t * rows.get(reflect(r as isize + k as isize - radius, h), c))
            .sum()
    })
}

/// Central differences `(d/dr, d/dc)` with the Neumann extension
/// `f[-1] = f[0]`, `f[n] = f[n-1]` at the borders.
pub fn central_gradient(plane: &Plane) -> (Plane, Plane) {
    let (w, h) = plane.dims();
    let dr = Plane::from_fn(w, h, |r, c| {
        let up = plane.get(r.saturating_sub(1), c);
        let down = plane.get((r + 1).min(h - 1), c);
        0.5 * (down - up)
    });
    let dc = Plane::from_fn(w, h, |r, c| {
        let left = plane.get(r, c.saturating_sub(1));
        let right = plane.get(r, (c + 1).min(w - 1));
        0.5 * (right - left)
    });
    (dr, dc)
}

/// Five-point Laplacian with the Neumann extension.
pub fn laplacian(plane: &Plane) -> Plane {
    let (w, h) = plane.dims();
    Plane::from_fn(w, h, |r, c| {
        let v = plane.get(r, c);
        plane.get(r.saturating_sub(1), c)
            + plane.get((r + 1).min(h - 1), c)
            + plane.get(r, c.saturating_sub(1))
            + plane.get(r, (c + 1).min(w - 1))
            - 4.0 * v
    })
}

/// Divergence of the vector field `(fr, fc)` by central differences.
pub fn divergence(fr: &Plane, fc: &Plane) -> Plane {
    let (dr, _) = central_gradient(fr);
    let (_, dc) = central_gradient(fc);
    dr.zip_map(&dc, |a, b| a + b)
        .expect("components share dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(2.5);
        assert_eq!(k.len(), 21);
        assert_abs_diff_eq!(k.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
        for i in 0..k.len() / 2 {
            assert_eq!(k[i], k[k.len() - 1 - i]);
        }
        assert_eq!(gaussian_kernel(0.0), vec![1.0]);
    }

    #[test]
    fn blur_preserves_constants() {
        let p = Plane::filled(9, 7, 42.0);
        let b = gaussian_blur(&p, 1.7);
        for &v in b.data() {
            assert_abs_diff_eq!(v, 42.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn blur_matches_direct_2d_convolution() {
        let p = Plane::from_fn(16, 12, |r, c| ((r * 7 + c * 3) % 11) as f64);
        let sigma = 1.3;
        let b = gaussian_blur(&p, sigma);
        let radius = (4.0 * sigma).ceil() as isize;
        let (r0, c0) = (6usize, 8usize);
        let mut num = 0.0;
        let mut den = 0.0;
        for dr in -radius..=radius {
            for dc in -radius..=radius {
                let wgt = (-((dr * dr + dc * dc) as f64) / (2.0 * sigma * sigma)).exp();
                num += wgt * p.get_reflect(r0 as isize + dr, c0 as isize + dc);
                den += wgt;
            }
        }
        assert_abs_diff_eq!(b.get(r0, c0), num / den, epsilon = 1e-12);
    }

    #[test]
    fn laplacian_of_quadratic() {
        let p = Plane::from_fn(7, 7, |r, c| (r * r + c * c) as f64);
        assert_abs_diff_eq!(laplacian(&p).get(3, 3), 4.0, epsilon = 1e-12);
    }
}

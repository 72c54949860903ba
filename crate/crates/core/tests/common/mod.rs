//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use mcls_core::Plane;

/// Half-sample symmetric index.
fn mirror(i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let m = i.rem_euclid(period);
    (if m < n { m } else { period - 1 - m }) as usize
}

fn at(p: &Plane, r: isize, c: isize) -> f64 {
    p.get(mirror(r, p.height()), mirror(c, p.width()))
}

/// Explicit Euler integration of `u_t = div(g grad u)` for three channels
/// sharing `g = (sum |grad u_k|^2 + tau^2)^(-p/2)`, no flux across the border.
pub fn explicit_diffusion(channels: &[Plane; 3], tau: f64, p: f64, dt: f64, steps: usize) -> [Plane; 3] {
    let (w, h) = channels[0].dims();
    let mut u = channels.clone();
    for _ in 0..steps {
        let g = Plane::from_fn(w, h, |r, c| {
            let (r, c) = (r as isize, c as isize);
            let s: f64 = u
                .iter()
                .map(|ch| {
                    let dr = 0.5 * (at(ch, r + 1, c) - at(ch, r - 1, c));
                    let dc = 0.5 * (at(ch, r, c + 1) - at(ch, r, c - 1));
                    dr * dr + dc * dc
                })
                .sum();
            (s + tau * tau).powf(-0.5 * p)
        });
        let flux = |ch: &Plane, r: usize, c: usize, r2: usize, c2: usize| {
            0.5 * (g.get(r, c) + g.get(r2, c2)) * (ch.get(r2, c2) - ch.get(r, c))
        };
        u = u.map(|ch| {
            Plane::from_fn(w, h, |r, c| {
                let mut div = 0.0;
                if r + 1 < h {
                    div += flux(&ch, r, c, r + 1, c);
                }
                if r > 0 {
                    div += flux(&ch, r, c, r - 1, c);
                }
                if c + 1 < w {
                    div += flux(&ch, r, c, r, c + 1);
                }
                if c > 0 {
                    div += flux(&ch, r, c, r, c - 1);
                }
                ch.get(r, c) + dt * div
            })
        });
    }
    u
}

pub fn rel_l2(a: &Plane, b: &Plane) -> f64 {
    let num: f64 = a.data().iter().zip(b.data()).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.data().iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

/// `(H(v), 1 - H(v))` accumulation of weighted means and standard deviations.
pub fn brute_force_stats(features: &[Plane], phi: &Plane, tau: f64, floor: f64) -> ([[f64; 5]; 2], [[f64; 5]; 2]) {
    let weight = |v: f64| 0.5 * (1.0 + std::f64::consts::FRAC_2_PI * (v / tau).atan());
    let mut mu = [[0.0; 5]; 2];
    let mut sigma = [[0.0; 5]; 2];
    for (j, f) in features.iter().enumerate() {
        for region in 0..2 {
            let w = |i: usize| {
                let hv = weight(phi.data()[i]);
                if region == 0 {
                    hv
                } else {
                    1.0 - hv
                }
            };
            let n = f.len();
            let mass: f64 = (0..n).map(w).sum();
            let m = (0..n).map(|i| w(i) * f.data()[i]).sum::<f64>() / mass;
            let var = (0..n).map(|i| w(i) * (f.data()[i] - m).powi(2)).sum::<f64>() / mass;
            mu[region][j] = m;
            sigma[region][j] = var.sqrt().max(floor);
        }
    }
    (mu, sigma)
}

/// Mean distance from each pixel of `from` lying on its boundary to the
/// nearest boundary pixel of `to`.
pub fn mean_boundary_distance(from: &mcls_core::BinaryMask, to: &mcls_core::BinaryMask) -> f64 {
    let edge = |m: &mcls_core::BinaryMask| {
        let (w, h) = m.dims();
        let mut pts = Vec::new();
        for r in 0..h {
            for c in 0..w {
                if !m.get(r, c) {
                    continue;
                }
                let border = r == 0
                    || c == 0
                    || r + 1 == h
                    || c + 1 == w
                    || !m.get(r - 1, c)
                    || !m.get(r + 1, c)
                    || !m.get(r, c - 1)
                    || !m.get(r, c + 1);
                if border {
                    pts.push((r as f64, c as f64));
                }
            }
        }
        pts
    };
    let a = edge(from);
    let b = edge(to);
    let total: f64 = a
        .iter()
        .map(|&(r, c)| {
            b.iter()
                .map(|&(r2, c2)| ((r - r2).powi(2) + (c - c2).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    total / a.len() as f64
}

/// 1-D Gaussian blur by direct summation at one pixel, reflecting borders.
pub fn blur_at(p: &Plane, sigma: f64, r: usize, c: usize) -> f64 {
    let rad = (4.0 * sigma).ceil() as isize;
    let mut num = 0.0;
    let mut den = 0.0;
    for dr in -rad..=rad {
        for dc in -rad..=rad {
            let wgt = (-((dr * dr + dc * dc) as f64) / (2.0 * sigma * sigma)).exp();
            num += wgt * at(p, r as isize + dr, c as isize + dc);
            den += wgt;
        }
    }
    num / den
}

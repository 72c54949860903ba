use crate::error::{check_dims, Error, Result};
use crate::grid::{GrayImage, Plane};

/// Image derivatives `(I_r, I_c)`: central differences inside, one-sided
/// differences on the first and last row/column.
pub fn gradients(image: &GrayImage) -> (Plane, Plane) {
    let p = image.plane();
    let (w, h) = p.dims();
    let ir = Plane::from_fn(w, h, |r, c| {
        if r == 0 {
            p.get(1, c) - p.get(0, c)
        } else if r == h - 1 {
            p.get(h - 1, c) - p.get(h - 2, c)
        } else {
            0.5 * (p.get(r + 1, c) - p.get(r - 1, c))
        }
    });
    let ic = Plane::from_fn(w, h, |r, c| {
        if c == 0 {
            p.get(r, 1) - p.get(r, 0)
        } else if c == w - 1 {
            p.get(r, w - 1) - p.get(r, w - 2)
        } else {
            0.5 * (p.get(r, c + 1) - p.get(r, c - 1))
        }
    });
    (ir, ic)
}

/// Per-pixel symmetric 2x2 tensor stored as the channel triple
/// `(t_rr, t_cc, t_rc2)`, where `t_rc2` is twice the off-diagonal entry.
/// The matrix at each pixel is `[[t_rr, t_rc2 / 2], [t_rc2 / 2, t_cc]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    pub rr: Plane,
    pub cc: Plane,
    pub rc2: Plane,
}

impl TensorField {
    pub fn new(rr: Plane, cc: Plane, rc2: Plane) -> Result<Self> {
        check_dims(rr.dims(), cc.dims())?;
        check_dims(rr.dims(), rc2.dims())?;
        Ok(Self { rr, cc, rc2 })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.rr.dims()
    }

    pub fn channels(&self) -> [&Plane; 3] {
        [&self.rr, &self.cc, &self.rc2]
    }

    pub fn channels_mut(&mut self) -> [&mut Plane; 3] {
        [&mut self.rr, &mut self.cc, &mut self.rc2]
    }

    /// Matrix entries `(a, b, d)` of `[[a, b], [b, d]]` at linear index `i`.
    #[inline]
    pub fn matrix_at(&self, i: usize) -> (f64, f64, f64) {
        (self.rr.data()[i], 0.5 * self.rc2.data()[i], self.cc.data()[i])
    }
}

/// Initial tensor `(I_r^2, I_c^2, 2 I_r I_c)`.
pub fn structure_tensor_init(image: &GrayImage) -> TensorField {
    let (ir, ic) = gradients(image);
    let rr = ir.map(|v| v * v);
    let cc = ic.map(|v| v * v);
    let rc2 = ir.zip_map(&ic, |a, b| 2.0 * a * b).expect("same dims");
    TensorField { rr, cc, rc2 }
}

/// Eigenvalues `(lambda_max, lambda_min)` and the angle of the leading eigenvector.
#[inline]
fn eig_sym2x2(a: f64, b: f64, d: f64) -> (f64, f64, f64) {
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    let theta = 0.5 * (2.0 * b).atan2(a - d);
    (mean + radius, mean - radius, theta)
}

/// Principal square root of `[[a, b], [b, d]]` as `(s11, s22, s12)`;
/// negative eigenvalues are treated as zero.
#[inline]
pub fn sqrt_sym2x2(a: f64, b: f64, d: f64) -> (f64, f64, f64) {
    if b == 0.0 {
        return (a.max(0.0).sqrt(), d.max(0.0).sqrt(), 0.0);
    }
    let (l1, l2, theta) = eig_sym2x2(a, b, d);
    let (s1, s2) = (l1.max(0.0).sqrt(), l2.max(0.0).sqrt());
    let (sin, cos) = theta.sin_cos();
    (
        s1 * cos * cos + s2 * sin * sin,
        s1 * sin * sin + s2 * cos * cos,
        (s1 - s2) * sin * cos,
    )
}

/// Square-rooted tensor components `(s11, s22, s12)` where `s12` is the
/// matrix off-diagonal entry.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSqrt {
    pub s11: Plane,
    pub s22: Plane,
    pub s12: Plane,
}

/// Per-pixel principal square root of the tensor. Eigenvalues down to
/// `-1e-6 * max|channel|` are clamped to zero; anything more negative is a
/// numerical failure.
pub fn tensor_sqrt(field: &TensorField) -> Result<TensorSqrt> {
    let scale = field
        .channels()
        .iter()
        .flat_map(|p| p.data().iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let eps_psd = 1e-6 * scale;
    let (w, h) = field.dims();
    let n = w * h;
    let (mut s11, mut s22, mut s12) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for i in 0..n {
        let (a, b, d) = field.matrix_at(i);
        let (_, l2, _) = eig_sym2x2(a, b, d);
        if !(l2 >= -eps_psd) {
            return Err(Error::Numerical(format!(
                "tensor at pixel ({}, {}) has eigenvalue {l2:e} below -{eps_psd:e}",
                i / w,
                i % w
            )));
        }
        let (x, y, z) = sqrt_sym2x2(a, b, d);
        s11[i] = x;
        s22[i] = y;
        s12[i] = z;
    }
    Ok(TensorSqrt {
        s11: Plane::new(w, h, s11)?,
        s22: Plane::new(w, h, s22)?,
        s12: Plane::new(w, h, s12)?,
    })
}

//! Raster containers shared by every stage of the pipeline.
//!
//! All rasters are row-major: pixel `(r, c)` lives at `r * width + c`, where
//! `r` indexes rows (vertical axis) and `c` indexes columns.

use crate::error::{check_dims, Error, Result};

/// Minimum side length accepted for images that go through stencil operations.
pub const MIN_SIDE: usize = 3;

/// Index reflection for a half-sample symmetric (Neumann) extension:
/// `-1 -> 0`, `-2 -> 1`, `n -> n - 1`, `n + 1 -> n - 2`.
#[inline]
pub fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let mut k = i.rem_euclid(period);
    if k >= n {
        k = period - 1 - k;
    }
    k as usize
}

/// A real-valued raster without any range constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "raster dimensions must be positive, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "raster {width}x{height} needs {} values, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "raster dimensions must be positive");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, 0.0)
    }

    /// Builds a plane by evaluating `f(r, c)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(width > 0 && height > 0, "raster dimensions must be positive");
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self { width, height, data }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    /// `(width, height)`
    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.width + c] = v;
    }

    /// Value at a possibly out-of-range position, using the Neumann
    /// (half-sample symmetric) extension.
    #[inline]
    pub fn get_reflect(&self, r: isize, c: isize) -> f64 {
        self.get(reflect(r, self.height), reflect(c, self.width))
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two planes of equal size.
    pub fn zip_map(&self, other: &Plane, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        check_dims(self.dims(), other.dims())?;
        Ok(Self {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// `(min, max)` over all pixels.
    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Rotates the raster by 90 degrees counter-clockwise.
    pub fn rotate90(&self) -> Self {
        let (w, h) = self.dims();
        // new dims: width = h, height = w; new(r, c) = old(c, w - 1 - r)
        Self::from_fn(h, w, |r, c| self.get(c, w - 1 - r))
    }

    /// Rotates the raster by 90 degrees clockwise (inverse of [`Plane::rotate90`]).
    pub fn rotate90_cw(&self) -> Self {
        let (w, h) = self.dims();
        Self::from_fn(h, w, |r, c| self.get(h - 1 - c, r))
    }
}

/// Grayscale slice with display-normalized intensities in `[0, 255]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage(Plane);

impl GrayImage {
    pub fn new(plane: Plane) -> Result<Self> {
        let (w, h) = plane.dims();
        if w < MIN_SIDE || h < MIN_SIDE {
            return Err(Error::InvalidInput(format!(
                "image must be at least {MIN_SIDE}x{MIN_SIDE}, got {w}x{h}"
            )));
        }
        if let Some(i) = plane
            .data()
            .iter()
            .position(|v| !v.is_finite() || !(0.0..=255.0).contains(v))
        {
            return Err(Error::InvalidInput(format!(
                "image pixel {i} = {} outside [0, 255]",
                plane.data()[i]
            )));
        }
        Ok(Self(plane))
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        Self::new(Plane::new(width, height, data)?)
    }

    pub fn plane(&self) -> &Plane {
        &self.0
    }

    pub fn into_plane(self) -> Plane {
        self.0
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }
}

/// Per-pixel foreground probability in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbMap(Plane);

impl ProbMap {
    pub fn new(plane: Plane) -> Result<Self> {
        if let Some(i) = plane
            .data()
            .iter()
            .position(|v| !v.is_finite() || !(0.0..=1.0).contains(v))
        {
            return Err(Error::InvalidInput(format!(
                "probability {i} = {} outside [0, 1]",
                plane.data()[i]
            )));
        }
        Ok(Self(plane))
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        Self::new(Plane::new(width, height, data)?)
    }

    pub fn plane(&self) -> &Plane {
        &self.0
    }

    pub fn into_plane(self) -> Plane {
        self.0
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }

    /// `{p > beta}`
    pub fn threshold(&self, beta: f64) -> BinaryMask {
        BinaryMask::from_predicate(self.0.width(), self.0.height(), |i| self.0.data()[i] > beta)
    }
}

/// Two-valued segmentation mask; stored values are exactly 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "mask {width}x{height} with {} values",
                data.len()
            )));
        }
        if data.iter().any(|&v| v > 1) {
            return Err(Error::InvalidInput("mask values must be 0 or 1".into()));
        }
        Ok(Self { width, height, data })
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            data: vec![0; width * height],
        }
    }

    /// Mask whose pixel at linear index `i` is set when `f(i)` holds.
    pub fn from_predicate(width: usize, height: usize, f: impl Fn(usize) -> bool) -> Self {
        Self {
            width,
            height,
            data: (0..width * height).map(|i| u8::from(f(i))).collect(),
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_predicate(width, height, |i| f(i / width, i % width))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.width + c] != 0
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r * self.width + c] = u8::from(v);
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|&v| v as usize).sum()
    }

    pub fn to_plane(&self) -> Plane {
        Plane {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f64::from(v)).collect(),
        }
    }

    pub fn to_prob_map(&self) -> ProbMap {
        ProbMap(self.to_plane())
    }
}

/// The evolving level-set function; positive inside the contour.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSetField(Plane);

impl LevelSetField {
    pub fn new(plane: Plane) -> Result<Self> {
        if !plane.all_finite() {
            return Err(Error::InvalidInput("level-set values must be finite".into()));
        }
        Ok(Self(plane))
    }

    pub fn plane(&self) -> &Plane {
        &self.0
    }

    pub fn into_plane(self) -> Plane {
        self.0
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }

    /// `{phi > 0}`
    pub fn interior(&self) -> BinaryMask {
        BinaryMask::from_predicate(self.0.width(), self.0.height(), |i| self.0.data()[i] > 0.0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

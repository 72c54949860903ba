//! Deterministic synthetic cases: a target shape over a noisy background,
//! optional textured distractors, its exact mask, and a degraded prior map
//! standing in for a coarse-stage probability output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::gaussian_blur;
use crate::grid::{BinaryMask, GrayImage, Plane, ProbMap};
use crate::morphology::{dilate, erode};

/// Geometric primitive. Coordinates are `[x, y]` = `[column, row]` in pixels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    Ellipse {
        center: [f64; 2],
        radii: [f64; 2],
        /// Rotation in radians.
        #[serde(default)]
        angle: f64,
    },
    /// Star-shaped blob `r(theta) = radius * (1 + amplitude * cos(lobes * theta + phase))`.
    Blob {
        center: [f64; 2],
        radius: f64,
        lobes: u32,
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
}

impl Shape {
    pub fn center(&self) -> [f64; 2] {
        match *self {
            Shape::Disk { center, .. } | Shape::Ellipse { center, .. } | Shape::Blob { center, .. } => {
                center
            }
        }
    }

    fn center_mut(&mut self) -> &mut [f64; 2] {
        match self {
            Shape::Disk { center, .. } | Shape::Ellipse { center, .. } | Shape::Blob { center, .. } => {
                center
            }
        }
    }

    /// Radius of a disk around the center that contains the shape.
    pub fn extent(&self) -> f64 {
        match *self {
            Shape::Disk { radius, .. } => radius,
            Shape::Ellipse { radii, .. } => radii[0].max(radii[1]),
            Shape::Blob {
                radius, amplitude, ..
            } => radius * (1.0 + amplitude.abs()),
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Disk { center, radius } => {
                let (dx, dy) = (x - center[0], y - center[1]);
                dx * dx + dy * dy <= radius * radius
            }
            Shape::Ellipse {
                center,
                radii,
                angle,
            } => {
                let (dx, dy) = (x - center[0], y - center[1]);
                let (s, c) = angle.sin_cos();
                let u = c * dx + s * dy;
                let v = -s * dx + c * dy;
                (u / radii[0]).powi(2) + (v / radii[1]).powi(2) <= 1.0
            }
            Shape::Blob {
                center,
                radius,
                lobes,
                amplitude,
                phase,
            } => {
                let (dx, dy) = (x - center[0], y - center[1]);
                let theta = dy.atan2(dx);
                let rho = radius * (1.0 + amplitude * (f64::from(lobes) * theta + phase).cos());
                dx * dx + dy * dy <= rho * rho
            }
        }
    }

    fn validate(&self, width: usize, height: usize) -> Result<()> {
        let [x, y] = self.center();
        let e = self.extent();
        let ok = match *self {
            Shape::Disk { radius, .. } => radius > 0.0,
            Shape::Ellipse { radii, .. } => radii[0] > 0.0 && radii[1] > 0.0,
            Shape::Blob {
                radius, amplitude, ..
            } => radius > 0.0 && (0.0..1.0).contains(&amplitude),
        };
        if !ok {
            return Err(Error::InvalidInput(format!("degenerate shape {self:?}")));
        }
        if x - e < 0.0 || y - e < 0.0 || x + e > (width - 1) as f64 || y + e > (height - 1) as f64 {
            return Err(Error::InvalidInput(format!(
                "shape exceeds the {width}x{height} canvas: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn mask(&self, width: usize, height: usize) -> BinaryMask {
        BinaryMask::from_fn(width, height, |r, c| self.contains(c as f64, r as f64))
    }
}

/// Sinusoidal stripe modulation added to a region's base intensity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stripes {
    pub amplitude: f64,
    /// Period in pixels.
    pub period: f64,
    /// Stripe normal direction in radians.
    #[serde(default)]
    pub angle: f64,
}

impl Stripes {
    fn value(&self, x: f64, y: f64) -> f64 {
        let (s, c) = self.angle.sin_cos();
        self.amplitude * (std::f64::consts::TAU * (c * x + s * y) / self.period).sin()
    }
}

/// Additional object rendered under the target; never part of the ground truth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Distractor {
    pub shape: Shape,
    pub intensity: f64,
    #[serde(default)]
    pub texture: Option<Stripes>,
}

/// Degradation applied to the ground-truth mask before it is blurred into a prior.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Corruption {
    #[default]
    None,
    /// Under-segmentation: erode by a disk of `radius` px.
    Erode { radius: f64 },
    /// Over-segmentation: dilate by a disk of `radius` px.
    Dilate { radius: f64 },
    /// Spurious islands: `count` disks of `radius` px placed away from the target.
    Outliers { count: usize, radius: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthCaseSpec {
    pub seed: u64,
    /// `[width, height]`
    pub canvas: [usize; 2],
    pub shape: Shape,
    pub foreground: f64,
    pub background: f64,
    pub noise_sigma: f64,
    pub prior_blur_sigma: f64,
    pub prior_noise_sigma: f64,
    #[serde(default)]
    pub prior_corruption: Corruption,
    #[serde(default)]
    pub texture: Option<Stripes>,
    #[serde(default)]
    pub clutter: Vec<Distractor>,
    /// Corpus generation only: maximum shift in px applied per case to the
    /// whole scene (see [`SynthCaseSpec::for_case`]).
    #[serde(default)]
    pub jitter: f64,
}

/// One generated case.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthCase {
    pub image: GrayImage,
    pub gt: BinaryMask,
    pub prior: ProbMap,
}

impl SynthCaseSpec {
    /// 128x128 disk of radius 30 (fg 150 / bg 80, noise sigma 10) with a prior
    /// eroded by 2 px and blurred with sigma 5.
    pub fn canonical_disk(seed: u64) -> Self {
        Self {
            seed,
            canvas: [128, 128],
            shape: Shape::Disk {
                center: [64.0, 64.0],
                radius: 30.0,
            },
            foreground: 150.0,
            background: 80.0,
            noise_sigma: 10.0,
            prior_blur_sigma: 5.0,
            prior_noise_sigma: 0.0,
            prior_corruption: Corruption::Erode { radius: 2.0 },
            texture: None,
            clutter: Vec::new(),
            jitter: 0.0,
        }
    }

    /// Lobed target whose prior is eroded by 3 px, blurred, and lightly noisy:
    /// confident in the middle and under-confident along the edge.
    pub fn eroded_prior(seed: u64) -> Self {
        Self {
            seed,
            canvas: [128, 128],
            shape: Shape::Blob {
                center: [64.0, 64.0],
                radius: 26.0,
                lobes: 4,
                amplitude: 0.15,
                phase: 0.0,
            },
            foreground: 150.0,
            background: 80.0,
            noise_sigma: 10.0,
            prior_blur_sigma: 5.0,
            prior_noise_sigma: 0.02,
            prior_corruption: Corruption::Erode { radius: 3.0 },
            texture: None,
            clutter: Vec::new(),
            jitter: 8.0,
        }
    }

    /// Textured lobed target with touching neighbours of the same intensity:
    /// one also sharing its texture (separable only through the prior), one
    /// untextured. The prior is under-confident at the edges.
    pub fn cluttered_scene(seed: u64) -> Self {
        let stripes = Stripes {
            amplitude: 30.0,
            period: 6.0,
            angle: 0.0,
        };
        Self {
            seed,
            canvas: [128, 128],
            shape: Shape::Blob {
                center: [60.0, 62.0],
                radius: 20.0,
                lobes: 3,
                amplitude: 0.12,
                phase: 0.0,
            },
            foreground: 140.0,
            background: 70.0,
            noise_sigma: 10.0,
            prior_blur_sigma: 4.0,
            prior_noise_sigma: 0.02,
            prior_corruption: Corruption::Erode { radius: 2.0 },
            texture: Some(stripes),
            clutter: vec![
                Distractor {
                    shape: Shape::Disk {
                        center: [90.0, 62.0],
                        radius: 12.0,
                    },
                    intensity: 140.0,
                    texture: Some(stripes),
                },
                Distractor {
                    shape: Shape::Disk {
                        center: [46.0, 92.0],
                        radius: 11.0,
                    },
                    intensity: 140.0,
                    texture: None,
                },
            ],
            jitter: 6.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [w, h] = self.canvas;
        if w < crate::grid::MIN_SIDE || h < crate::grid::MIN_SIDE {
            return Err(Error::InvalidInput(format!("canvas {w}x{h} too small")));
        }
        for (name, v) in [
            ("foreground", self.foreground),
            ("background", self.background),
        ] {
            if !(0.0..=255.0).contains(&v) {
                return Err(Error::InvalidInput(format!("{name} {v} outside [0, 255]")));
            }
        }
        for (name, v) in [
            ("noise_sigma", self.noise_sigma),
            ("prior_blur_sigma", self.prior_blur_sigma),
            ("prior_noise_sigma", self.prior_noise_sigma),
            ("jitter", self.jitter),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be >= 0, got {v}")));
            }
        }
        self.shape.validate(w, h)?;
        for d in &self.clutter {
            d.shape.validate(w, h)?;
        }
        match self.prior_corruption {
            Corruption::Erode { radius } | Corruption::Dilate { radius } if !(radius >= 0.0) => {
                Err(Error::InvalidInput("corruption radius must be >= 0".into()))
            }
            Corruption::Outliers { radius, .. } if !(radius > 0.0) => {
                Err(Error::InvalidInput("outlier radius must be > 0".into()))
            }
            _ => Ok(()),
        }
    }

    /// Concrete spec of case `index` in a corpus: the seed advances by `index`
    /// and, when `jitter > 0`, the whole scene is shifted by a uniform offset
    /// in `[-jitter, jitter]` px per axis and blob phases are randomized.
    pub fn for_case(&self, index: u64) -> Self {
        let mut spec = self.clone();
        spec.seed = self.seed.wrapping_add(index);
        spec.jitter = 0.0;
        if self.jitter > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e37_79b9_7f4a_7c15);
            let dx = rng.random_range(-self.jitter..=self.jitter);
            let dy = rng.random_range(-self.jitter..=self.jitter);
            let shift = |s: &mut Shape| {
                let c = s.center_mut();
                c[0] += dx;
                c[1] += dy;
            };
            shift(&mut spec.shape);
            if let Shape::Blob { phase, .. } = &mut spec.shape {
                *phase = rng.random_range(0.0..std::f64::consts::TAU);
            }
            for d in &mut spec.clutter {
                shift(&mut d.shape);
            }
        }
        spec
    }
}

/// Renders image, exact mask, and degraded prior. A pure function of `spec`.
pub fn make_synthetic_case(spec: &SynthCaseSpec) -> Result<SynthCase> {
    spec.validate()?;
    let [w, h] = spec.canvas;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let gt = spec.shape.mask(w, h);
    let mut clean = Plane::filled(w, h, spec.background);
    for d in &spec.clutter {
        for r in 0..h {
            for c in 0..w {
                let (x, y) = (c as f64, r as f64);
                if d.shape.contains(x, y) {
                    let t = d.texture.as_ref().map_or(0.0, |t| t.value(x, y));
                    clean.set(r, c, d.intensity + t);
                }
            }
        }
    }
    for r in 0..h {
        for c in 0..w {
            if gt.get(r, c) {
                let (x, y) = (c as f64, r as f64);
                let t = spec.texture.as_ref().map_or(0.0, |t| t.value(x, y));
                clean.set(r, c, spec.foreground + t);
            }
        }
    }

    let image = if spec.noise_sigma > 0.0 {
        let noise = Normal::new(0.0, spec.noise_sigma).expect("sigma validated");
        let data = clean
            .data()
            .iter()
            .map(|&v| (v + noise.sample(&mut rng)).clamp(0.0, 255.0))
            .collect();
        Plane::new(w, h, data)?
    } else {
        clean.map(|v| v.clamp(0.0, 255.0))
    };

    let corrupted = match spec.prior_corruption {
        Corruption::None => gt.clone(),
        Corruption::Erode { radius } => erode(&gt, radius),
        Corruption::Dilate { radius } => dilate(&gt, radius),
        Corruption::Outliers { count, radius } => add_outliers(&gt, count, radius, &mut rng),
    };
    let mut prior = gaussian_blur(&corrupted.to_plane(), spec.prior_blur_sigma);
    if spec.prior_noise_sigma > 0.0 {
        let noise = Normal::new(0.0, spec.prior_noise_sigma).expect("sigma validated");
        for v in prior.data_mut() {
            *v += noise.sample(&mut rng);
        }
    }
    let prior = prior.map(|v| v.clamp(0.0, 1.0));

    Ok(SynthCase {
        image: GrayImage::new(image)?,
        gt,
        prior: ProbMap::new(prior)?,
    })
}

/// Adds disks of `radius` whose centres keep at least `2 * radius + 2` px
/// clearance from the mask, so every island is disjoint from it.
fn add_outliers(mask: &BinaryMask, count: usize, radius: f64, rng: &mut ChaCha8Rng) -> BinaryMask {
    let (w, h) = mask.dims();
    let clearance = 2.0 * radius + 2.0;
    let forbidden = dilate(mask, clearance);
    let mut out = mask.clone();
    let lo = radius.ceil();
    let (hi_x, hi_y) = (w as f64 - 1.0 - lo, h as f64 - 1.0 - lo);
    if hi_x <= lo || hi_y <= lo {
        return out;
    }
    let mut placed = 0;
    for _ in 0..count * 200 {
        if placed == count {
            break;
        }
        let x = rng.random_range(lo..hi_x);
        let y = rng.random_range(lo..hi_y);
        if forbidden.get(y.round() as usize, x.round() as usize) {
            continue;
        }
        let island = Shape::Disk {
            center: [x, y],
            radius,
        };
        for r in 0..h {
            for c in 0..w {
                if island.contains(c as f64, r as f64) {
                    out.set(r, c, true);
                }
            }
        }
        placed += 1;
    }
    out
}

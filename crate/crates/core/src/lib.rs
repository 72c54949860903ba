//! Coarse-to-fine segmentation refinement.
//!
//! A prior probability map (from any coarse segmenter, or from the synthetic
//! generator in [`synth`]) initializes a level-set contour and acts as one of
//! five cues, alongside the grey value and three components of a nonlinear
//! structure tensor. The contour evolves under distance regularization, an
//! edge-weighted length term, and per-channel Gaussian region competition.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail these checks
pub mod error;
pub mod filter;
pub mod formats;
pub mod grid;
pub mod hu;
pub mod levelset;
pub mod metrics;
pub mod morphology;
pub mod pipeline;
pub mod synth;
pub mod texture;

pub use error::{Error, Region, Result};
pub use grid::{BinaryMask, GrayImage, LevelSetField, Plane, ProbMap};
pub use hu::{window_hu, HuWindow};
pub use levelset::{segment, EvolutionDiagnostics, LevelSetConfig, RegionStats, Segmentation};
pub use metrics::{corpus_summary, overlap, pixel_variance, threshold_sweep, CorpusSummary, OverlapReport, ThresholdSweep};
pub use synth::{make_synthetic_case, SynthCase, SynthCaseSpec};
pub use texture::{DiffusionParams, FeatureStack, TensorField};

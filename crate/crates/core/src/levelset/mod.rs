//! Fine-stage multi-cue level-set evolution.

mod config;
mod edge;
mod energy;
mod evolve;
mod forces;
mod init;
mod regularized;
mod segment;
mod stats;

pub use config::{InitPosition, LevelSetConfig};
pub use edge::{edge_indicator, EdgeIndicatorMode};
pub use energy::{energy, energy_terms, EnergyTerms};
pub use evolve::{evolve_step, evolve_step_at, StepResult, GRAD_EPS, MAX_UPDATE};
pub use forces::{log_likelihood_ratio, LOG_RATIO_CLAMP};
pub use init::{centered_circle, init_phi_circle, init_phi_from_prior, PhiInit};
pub use regularized::{dirac, heaviside};
pub use segment::{initial_phi, segment, EvolutionDiagnostics, Segmentation};
pub use stats::{region_stats, RegionStats, MIN_REGION_MASS};

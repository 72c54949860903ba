//! Five-channel cue stack: grey value, three nonlinear structure tensor
//! components, and the prior probability.

mod diffusion;
mod features;
mod tensor;
mod tridiag;

pub use diffusion::{aos_diffuse, aos_step, diffusivity, joint_gradient_energy, DiffusionParams};
pub use features::{assemble_features, build_features, normalize_channel, FeatureStack, CHANNELS};
pub use tensor::{gradients, sqrt_sym2x2, structure_tensor_init, tensor_sqrt, TensorField, TensorSqrt};
pub use tridiag::Tridiagonal;

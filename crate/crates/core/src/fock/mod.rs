//! Single- and two-mode states in a truncated photon-number basis.

mod amplitude;
mod beamsplitter;
mod displacement;
mod joint;
mod state;
mod stats;

pub use amplitude::ComplexAmplitude;
pub use beamsplitter::{beamsplitter_amplitude, beamsplitter_apply, beamsplitter_unitary};
pub use displacement::{
    compose_displacements, default_dimension, displacement_block, displacement_element,
    displacement_operator, resolved_dimension,
};
pub use joint::{partial_trace, JointState, Mode};
pub use state::{DensityOperator, FockVector};
pub use stats::{mean_and_variance, photon_pmf, Moments};

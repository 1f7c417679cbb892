//! Non-unitary maps: photon loss, threshold detection and the phase-noise
//! averaged re-displacement.

mod detection;
mod loss;
mod params;
pub mod quadrature;
mod redisplacement;

pub use detection::{click_pattern_probabilities, click_probability, no_click_weights};
pub use loss::{loss_channel, loss_channel_joint};
pub use params::{DetectorParams, LossParams, NoiseParams, PhaseVarianceConvention};
pub use redisplacement::{
    mc_redisplacement, mc_redisplacement_with_errors, noisy_redisplacement,
    noisy_redisplacement_joint, redisplacement_dimension, residual_displacement, McEstimate,
    MAX_QUADRATURE_ORDER,
};

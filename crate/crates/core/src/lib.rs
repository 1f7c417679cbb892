//! Truncated Fock-space simulation of displaced single-photon path entanglement.
//!
//! The crate is split into three layers:
//!
//! * [`fock`]: states of one or two bosonic modes in a truncated photon-number
//!   basis, displacement and beamsplitter unitaries, photon statistics.
//! * [`channels`]: photon loss, threshold detection and the phase-noise
//!   averaged re-displacement channel.
//! * [`experiment`]: the heralded source, the end-to-end tomography pipeline,
//!   sweeps over the displacement size and the auxiliary figures (HOM dip
//!   visibility, coarse-grained distinguishability).
//!
//! Conventions used throughout:
//!
//! * complex entries are `num_complex::Complex64`, matrices are row-major
//!   `ndarray::Array2`;
//! * two-mode operators are indexed A-major: basis state `|a, b>` sits at
//!   `a * dim_b + b`;
//! * a beamsplitter of intensity transmittance `t` maps
//!   `a† -> sqrt(t) a† + i sqrt(1-t) b†` and `b† -> i sqrt(1-t) a† + sqrt(t) b†`.

pub mod channels;
pub mod error;
pub mod experiment;
pub mod fock;
mod util;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default bound on the probability weight lost to basis truncation.
pub const DEFAULT_LEAKAGE_TOLERANCE: f64 = 1e-10;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex displacement amplitude stored in polar form.
///
/// The phase is kept in `[0, 2π)`; the mean photon number of the coherent
/// state `D(α)|0>` is `magnitude²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAmplitude {
    magnitude: f64,
    phase: f64,
}

fn wrap_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

impl ComplexAmplitude {
    pub fn new(magnitude: f64, phase: f64) -> Result<Self> {
        if !magnitude.is_finite() || magnitude < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "amplitude magnitude must be finite and >= 0, got {magnitude}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "amplitude phase {phase} is not finite"
            )));
        }
        Ok(Self {
            magnitude,
            phase: wrap_phase(phase),
        })
    }

    /// Amplitude whose coherent state carries `mean_photons` photons on average.
    pub fn from_mean_photons(mean_photons: f64, phase: f64) -> Result<Self> {
        if !mean_photons.is_finite() || mean_photons < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mean photon number must be finite and >= 0, got {mean_photons}"
            )));
        }
        Self::new(mean_photons.sqrt(), phase)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self {
            magnitude: z.norm(),
            phase: wrap_phase(z.arg()),
        }
    }

    pub const fn zero() -> Self {
        Self {
            magnitude: 0.0,
            phase: 0.0,
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.magnitude * self.magnitude
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }
}

impl From<Complex64> for ComplexAmplitude {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

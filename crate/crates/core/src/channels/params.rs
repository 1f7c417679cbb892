use crate::{Error, Result, DEFAULT_LEAKAGE_TOLERANCE};

fn check_unit(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter(format!(
            "{name} = {value} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Intensity transmission of a lossy segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossParams {
    pub transmission: f64,
}

impl LossParams {
    pub fn new(transmission: f64) -> Result<Self> {
        check_unit("transmission", transmission)?;
        Ok(Self { transmission })
    }

    pub const fn lossless() -> Self {
        Self { transmission: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("transmission", self.transmission)
    }
}

/// Threshold (click / no-click) detector with per-gate dark-count probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams {
    pub efficiency: f64,
    pub dark_prob: f64,
}

impl DetectorParams {
    pub fn new(efficiency: f64, dark_prob: f64) -> Result<Self> {
        let det = Self {
            efficiency,
            dark_prob,
        };
        det.validate()?;
        Ok(det)
    }

    pub const fn ideal() -> Self {
        Self {
            efficiency: 1.0,
            dark_prob: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("detector efficiency", self.efficiency)?;
        check_unit("dark-count probability", self.dark_prob)
    }
}

/// How the interferometer visibility deficit `ε` maps onto the variance of
/// the relative local-oscillator phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseVarianceConvention {
    /// `σ² = 2ε`.
    TwoEpsilon,
    /// `σ² = ε`: the extinction reading, one leaked photon per `1/ε` photons.
    OneEpsilon,
}

impl PhaseVarianceConvention {
    pub fn factor(self) -> f64 {
        match self {
            Self::TwoEpsilon => 2.0,
            Self::OneEpsilon => 1.0,
        }
    }
}

/// Phase noise of the re-displacement plus the numerics used to average over it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Visibility deficit `1 - V` of the displacement interferometer.
    pub epsilon: f64,
    pub convention: PhaseVarianceConvention,
    /// Gauss–Hermite order; odd and at least 7.
    pub quadrature_order: usize,
    /// Largest entry change tolerated when the order is doubled.
    pub convergence_tolerance: f64,
    /// Largest trace lost to the mode-A truncation.
    pub leakage_tolerance: f64,
}

impl NoiseParams {
    pub const DEFAULT_ORDER: usize = 21;

    pub fn new(epsilon: f64, convention: PhaseVarianceConvention) -> Result<Self> {
        let noise = Self {
            epsilon,
            convention,
            quadrature_order: Self::DEFAULT_ORDER,
            convergence_tolerance: 1e-8,
            leakage_tolerance: DEFAULT_LEAKAGE_TOLERANCE,
        };
        noise.validate()?;
        Ok(noise)
    }

    pub fn noiseless() -> Self {
        Self {
            epsilon: 0.0,
            convention: PhaseVarianceConvention::TwoEpsilon,
            quadrature_order: Self::DEFAULT_ORDER,
            convergence_tolerance: 1e-8,
            leakage_tolerance: DEFAULT_LEAKAGE_TOLERANCE,
        }
    }

    /// Variance `σ²` of the Gaussian relative phase.
    pub fn phase_variance(&self) -> f64 {
        self.convention.factor() * self.epsilon
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {} must be finite and >= 0",
                self.epsilon
            )));
        }
        if self.quadrature_order < 7 || self.quadrature_order.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "quadrature order {} must be odd and >= 7",
                self.quadrature_order
            )));
        }
        if !(self.convergence_tolerance > 0.0 && self.leakage_tolerance > 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

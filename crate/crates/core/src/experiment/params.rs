use crate::channels::{DetectorParams, LossParams, NoiseParams, PhaseVarianceConvention};
use crate::fock::ComplexAmplitude;
use crate::{Error, Result, DEFAULT_LEAKAGE_TOLERANCE};

/// Pair probability above which the low-gain source model is flagged.
pub const PAIR_PROB_WARNING: f64 = 0.1;

/// Spontaneous down-conversion source heralded by a threshold detector on the idler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceParams {
    /// Mean number of pairs per pulse.
    pub pair_prob: f64,
    /// Transmission of the heralded signal photon into the experiment.
    pub signal_coupling: f64,
    pub herald_det: DetectorParams,
    /// Largest pair number kept in the two-mode squeezed state.
    pub max_pairs: usize,
    pub leakage_tolerance: f64,
}

impl SourceParams {
    pub fn new(pair_prob: f64, signal_coupling: f64, herald_det: DetectorParams) -> Result<Self> {
        let src = Self {
            pair_prob,
            signal_coupling,
            herald_det,
            max_pairs: 4,
            leakage_tolerance: DEFAULT_LEAKAGE_TOLERANCE,
        };
        src.validate()?;
        Ok(src)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.pair_prob > 0.0 && self.pair_prob.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "pair probability {} must be positive",
                self.pair_prob
            )));
        }
        LossParams::new(self.signal_coupling)?;
        self.herald_det.validate()?;
        if self.max_pairs < 2 {
            return Err(Error::InvalidParameter(format!(
                "max_pairs = {} must be >= 2",
                self.max_pairs
            )));
        }
        Ok(())
    }

    /// Human-readable notes on where the model is being pushed past its regime.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.pair_prob > PAIR_PROB_WARNING {
            out.push(format!(
                "pair probability {} exceeds {PAIR_PROB_WARNING}: multi-pair emission dominates",
                self.pair_prob
            ));
        }
        out
    }
}

/// Which analysis configuration a run is primarily meant to report.
/// Both are always evaluated by the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalyzerSetting {
    /// Modes detected separately: click-pattern probabilities `p_mn`.
    Separate,
    /// Modes recombined on a balanced beamsplitter: fringe visibility.
    Interfere,
}

/// Every knob of the setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentParams {
    pub source: SourceParams,
    pub alpha: ComplexAmplitude,
    pub noise: NoiseParams,
    /// Transmission of arm A between the entangling beamsplitter and the displacement.
    pub pre_loss_a: LossParams,
    /// Transmission of arm A between displacement and detector.
    pub loss_a: LossParams,
    pub loss_b: LossParams,
    pub analysis_det_a: DetectorParams,
    pub analysis_det_b: DetectorParams,
    pub analyzer_setting: AnalyzerSetting,
    pub phase_scan_points: usize,
}

impl ExperimentParams {
    /// Post-displacement transmission used when none is specified.
    pub const DEFAULT_TRANSMISSION: f64 = 0.8;
    pub const DEFAULT_SCAN_POINTS: usize = 32;

    /// Lossless, noiseless, perfectly detected single photons at `pair_prob`.
    pub fn ideal(pair_prob: f64) -> Result<Self> {
        Ok(Self {
            source: SourceParams::new(pair_prob, 1.0, DetectorParams::ideal())?,
            alpha: ComplexAmplitude::zero(),
            noise: NoiseParams::noiseless(),
            pre_loss_a: LossParams::lossless(),
            loss_a: LossParams::lossless(),
            loss_b: LossParams::lossless(),
            analysis_det_a: DetectorParams::ideal(),
            analysis_det_b: DetectorParams::ideal(),
            analyzer_setting: AnalyzerSetting::Interfere,
            phase_scan_points: Self::DEFAULT_SCAN_POINTS,
        })
    }

    /// Measured values for source, detectors and interferometer; the arm
    /// transmissions and dark counts are not measured and take defaults.
    pub fn reference() -> Self {
        Self {
            source: SourceParams {
                pair_prob: 0.01,
                signal_coupling: 0.5,
                herald_det: DetectorParams {
                    efficiency: 0.20,
                    dark_prob: 0.0,
                },
                max_pairs: 4,
                leakage_tolerance: DEFAULT_LEAKAGE_TOLERANCE,
            },
            alpha: ComplexAmplitude::zero(),
            noise: NoiseParams {
                epsilon: 1.5e-4,
                ..NoiseParams::noiseless()
            },
            pre_loss_a: LossParams::lossless(),
            loss_a: LossParams {
                transmission: Self::DEFAULT_TRANSMISSION,
            },
            loss_b: LossParams {
                transmission: Self::DEFAULT_TRANSMISSION,
            },
            analysis_det_a: DetectorParams {
                efficiency: 0.25,
                dark_prob: 0.0,
            },
            analysis_det_b: DetectorParams {
                efficiency: 0.25,
                dark_prob: 0.0,
            },
            analyzer_setting: AnalyzerSetting::Interfere,
            phase_scan_points: Self::DEFAULT_SCAN_POINTS,
        }
    }

    pub fn with_alpha_sq(mut self, alpha_sq: f64) -> Result<Self> {
        self.alpha = ComplexAmplitude::from_mean_photons(alpha_sq, self.alpha.phase())?;
        Ok(self)
    }

    pub fn with_convention(mut self, convention: PhaseVarianceConvention) -> Self {
        self.noise.convention = convention;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.noise.validate()?;
        self.pre_loss_a.validate()?;
        self.loss_a.validate()?;
        self.loss_b.validate()?;
        self.analysis_det_a.validate()?;
        self.analysis_det_b.validate()?;
        if self.analyzer_setting == AnalyzerSetting::Interfere && self.phase_scan_points < 8 {
            return Err(Error::InvalidParameter(format!(
                "phase scan needs >= 8 points, got {}",
                self.phase_scan_points
            )));
        }
        if self.phase_scan_points < 3 {
            return Err(Error::InvalidParameter(
                "phase scan needs at least 3 points".into(),
            ));
        }
        Ok(())
    }
}

//! TOML run configuration. Every section is optional; missing keys fall back
//! to the reference values of [`ExperimentParams::reference`]. Unknown keys
//! are rejected.

use std::path::{Path, PathBuf};

use mmsim::channels::{DetectorParams, LossParams, NoiseParams, PhaseVarianceConvention};
use mmsim::experiment::{AnalyzerSetting, DetectionWindow, ExperimentParams, SourceParams};
use mmsim::fock::ComplexAmplitude;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub source: SourceSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub arms: ArmsSection,
    #[serde(default)]
    pub detectors: DetectorsSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub sweep: GridSection,
    #[serde(default)]
    pub hom: HomSection,
    #[serde(default)]
    pub distinguish: DistinguishSection,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub mc_samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SourceSection {
    pub pair_prob: f64,
    pub signal_coupling: f64,
    pub herald_efficiency: f64,
    pub herald_dark_prob: f64,
    pub max_pairs: usize,
}

impl Default for SourceSection {
    fn default() -> Self {
        let s = ExperimentParams::reference().source;
        Self {
            pair_prob: s.pair_prob,
            signal_coupling: s.signal_coupling,
            herald_efficiency: s.herald_det.efficiency,
            herald_dark_prob: s.herald_det.dark_prob,
            max_pairs: s.max_pairs,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    TwoEpsilon,
    OneEpsilon,
}

impl From<Convention> for PhaseVarianceConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::TwoEpsilon => Self::TwoEpsilon,
            Convention::OneEpsilon => Self::OneEpsilon,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSection {
    pub epsilon: f64,
    pub convention: Convention,
    pub quadrature_order: usize,
    pub convergence_tolerance: f64,
    pub leakage_tolerance: f64,
}

impl Default for NoiseSection {
    fn default() -> Self {
        let n = ExperimentParams::reference().noise;
        Self {
            epsilon: n.epsilon,
            convention: Convention::TwoEpsilon,
            quadrature_order: n.quadrature_order,
            convergence_tolerance: n.convergence_tolerance,
            leakage_tolerance: n.leakage_tolerance,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ArmsSection {
    pub pre_displacement_transmission_a: f64,
    pub transmission_a: f64,
    pub transmission_b: f64,
}

impl Default for ArmsSection {
    fn default() -> Self {
        Self {
            pre_displacement_transmission_a: 1.0,
            transmission_a: ExperimentParams::DEFAULT_TRANSMISSION,
            transmission_b: ExperimentParams::DEFAULT_TRANSMISSION,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DetectorsSection {
    pub efficiency_a: f64,
    pub dark_prob_a: f64,
    pub efficiency_b: f64,
    pub dark_prob_b: f64,
}

impl Default for DetectorsSection {
    fn default() -> Self {
        let p = ExperimentParams::reference();
        Self {
            efficiency_a: p.analysis_det_a.efficiency,
            dark_prob_a: p.analysis_det_a.dark_prob,
            efficiency_b: p.analysis_det_b.efficiency,
            dark_prob_b: p.analysis_det_b.dark_prob,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    Separate,
    Interfere,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSection {
    pub setting: Setting,
    pub phase_scan_points: usize,
    /// Phase of α in radians.
    pub alpha_phase: f64,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            setting: Setting::Interfere,
            phase_scan_points: ExperimentParams::DEFAULT_SCAN_POINTS,
            alpha_phase: 0.0,
        }
    }
}

/// Either an explicit list or an inclusive `start..=stop` range with `step`.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub alpha_sq: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
}

impl GridSection {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let grid = match (&self.alpha_sq, self.start, self.stop, self.step) {
            (Some(list), None, None, None) => list.clone(),
            (None, Some(start), Some(stop), Some(step)) => {
                if !(step > 0.0) || stop < start {
                    return Err(CliError::Config(format!(
                        "grid needs step > 0 and stop >= start (got {start}, {stop}, {step})"
                    )));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=count).map(|i| start + i as f64 * step).collect()
            }
            (None, None, None, None) => Vec::new(),
            _ => {
                return Err(CliError::Config(
                    "grid takes either `alpha_sq = [...]` or all of start, stop, step".into(),
                ))
            }
        };
        if grid.is_empty() {
            return Err(CliError::Config("grid is empty".into()));
        }
        if grid.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(CliError::Config(
                "grid values must be finite and >= 0".into(),
            ));
        }
        if grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(CliError::Config("grid must be ascending".into()));
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct HomSection {
    pub lo_mean: f64,
    /// Intensity reflectance of the configured splitter.
    pub reflectance: f64,
    /// Optional direct overrides of the input-configuration probabilities.
    pub p11: Option<f64>,
    pub p20: Option<f64>,
    pub p02: Option<f64>,
}

impl Default for HomSection {
    fn default() -> Self {
        Self {
            lo_mean: 0.05,
            reflectance: 0.1,
            p11: None,
            p20: None,
            p02: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    OneSigma,
    Everything,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DistinguishSection {
    pub alpha_sq: Vec<f64>,
    pub window: Window,
}

impl Default for DistinguishSection {
    fn default() -> Self {
        Self {
            alpha_sq: vec![100.0, 250.0, 500.0, 1000.0],
            window: Window::OneSigma,
        }
    }
}

impl DistinguishSection {
    pub fn detection_window(&self) -> DetectionWindow {
        match self.window {
            Window::OneSigma => DetectionWindow::OneSigma,
            Window::Everything => DetectionWindow::Everything,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Experiment parameters at `α = 0`; validated.
    pub fn experiment(&self) -> Result<ExperimentParams, CliError> {
        let s = &self.source;
        let n = &self.noise;
        let d = &self.detectors;
        let params = ExperimentParams {
            source: SourceParams {
                pair_prob: s.pair_prob,
                signal_coupling: s.signal_coupling,
                herald_det: DetectorParams {
                    efficiency: s.herald_efficiency,
                    dark_prob: s.herald_dark_prob,
                },
                max_pairs: s.max_pairs,
                leakage_tolerance: n.leakage_tolerance,
            },
            alpha: ComplexAmplitude::new(0.0, self.analysis.alpha_phase)
                .map_err(|e| CliError::Config(e.to_string()))?,
            noise: NoiseParams {
                epsilon: n.epsilon,
                convention: n.convention.into(),
                quadrature_order: n.quadrature_order,
                convergence_tolerance: n.convergence_tolerance,
                leakage_tolerance: n.leakage_tolerance,
            },
            pre_loss_a: LossParams {
                transmission: self.arms.pre_displacement_transmission_a,
            },
            loss_a: LossParams {
                transmission: self.arms.transmission_a,
            },
            loss_b: LossParams {
                transmission: self.arms.transmission_b,
            },
            analysis_det_a: DetectorParams {
                efficiency: d.efficiency_a,
                dark_prob: d.dark_prob_a,
            },
            analysis_det_b: DetectorParams {
                efficiency: d.efficiency_b,
                dark_prob: d.dark_prob_b,
            },
            analyzer_setting: match self.analysis.setting {
                Setting::Separate => AnalyzerSetting::Separate,
                Setting::Interfere => AnalyzerSetting::Interfere,
            },
            phase_scan_points: self.analysis.phase_scan_points,
        };
        params
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(params)
    }

    /// Seed from the command line, else from the file.
    pub fn seed(&self, cli: Option<u64>) -> Option<u64> {
        cli.or(self.run.seed)
    }
}

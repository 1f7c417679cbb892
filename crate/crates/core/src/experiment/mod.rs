//! End-to-end model of the experiment: heralded source, entangling
//! beamsplitter, displacement and noisy undo, lossy threshold detection.

mod distinguish;
mod hom;
mod params;
mod pipeline;
mod source;
mod sweep;
mod tomography;

pub use distinguish::{
    coarse_grained_distinguishability, coarse_grained_distinguishability_with, coherent_pmf,
    displaced_single_photon_pmf, DetectionWindow,
};
pub use hom::{hom_visibility, HomInputs};
pub use params::{AnalyzerSetting, ExperimentParams, SourceParams};
pub use pipeline::{detected_state, run_pipeline, visibility_scan, VisibilityScan};
pub use source::{g2_zero, heralded_source_state, unheralded_signal_marginal};
pub use sweep::{factor_out_loss, sweep_alpha, LossStage, SweepResult};
pub use tomography::{concurrence_lower_bound, TomographyRecord};

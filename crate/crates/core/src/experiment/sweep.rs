use rayon::prelude::*;

use super::{run_pipeline, ExperimentParams, TomographyRecord};
use crate::channels::{DetectorParams, LossParams};
use crate::{Error, Result};

/// Records along a grid of displacement sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<TomographyRecord>,
    /// `|α|²` where the concurrence bound first turns negative, linearly interpolated.
    pub zero_crossing: Option<f64>,
}

impl SweepResult {
    pub fn from_points(points: Vec<TomographyRecord>) -> Self {
        let zero_crossing = points.windows(2).find_map(|w| {
            let (c0, c1) = (w[0].concurrence_bound, w[1].concurrence_bound);
            (c0 > 0.0 && c1 <= 0.0)
                .then(|| w[0].alpha_sq + (w[1].alpha_sq - w[0].alpha_sq) * c0 / (c0 - c1))
        });
        Self {
            points,
            zero_crossing,
        }
    }
}

/// Runs the pipeline at each `|α|²` of a non-empty, ascending grid.
/// Points are evaluated in parallel; the output order follows the grid.
pub fn sweep_alpha(params: &ExperimentParams, grid: &[f64]) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter(
            "sweep grid must be ascending".into(),
        ));
    }
    let points = grid
        .par_iter()
        .map(|&a2| {
            let mut rec = run_pipeline(&params.with_alpha_sq(a2)?)?;
            // keep the grid value exactly rather than |√a2|²
            rec.alpha_sq = a2;
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::from_points(points))
}

/// Which imperfections are removed by [`factor_out_loss`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossStage {
    /// Analysis detectors and the arms after the displacement become perfect.
    DetectionAndTransmission,
    /// As above, and every loss before the displacement too.
    AlsoPreDisplacement,
}

impl LossStage {
    /// `params` with the selected efficiencies set to one. Dark counts are kept.
    pub fn apply(self, params: &ExperimentParams) -> ExperimentParams {
        let mut p = *params;
        p.loss_a = LossParams::lossless();
        p.loss_b = LossParams::lossless();
        p.analysis_det_a = DetectorParams {
            efficiency: 1.0,
            ..p.analysis_det_a
        };
        p.analysis_det_b = DetectorParams {
            efficiency: 1.0,
            ..p.analysis_det_b
        };
        if self == Self::AlsoPreDisplacement {
            p.source.signal_coupling = 1.0;
            p.pre_loss_a = LossParams::lossless();
        }
        p
    }
}

/// Re-runs the sweep with the losses of `stage` removed.
pub fn factor_out_loss(
    params: &ExperimentParams,
    grid: &[f64],
    stage: LossStage,
) -> Result<SweepResult> {
    sweep_alpha(&stage.apply(params), grid)
}

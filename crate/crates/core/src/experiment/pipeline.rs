use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{heralded_source_state, ExperimentParams, TomographyRecord};
use crate::channels::{
    click_pattern_probabilities, loss_channel_joint, no_click_weights, noisy_redisplacement_joint,
    redisplacement_dimension, DetectorParams,
};
use crate::experiment::concurrence_lower_bound;
use crate::fock::{beamsplitter_amplitude, beamsplitter_apply, DensityOperator, JointState, Mode};
use crate::util::ln_factorials;
use crate::Result;

/// Click probability of one detector behind a balanced recombination of A and B,
/// as a function of the phase `θ` applied to mode B:
/// `P(θ) = mean - Re Σ_{Δ≥1} 2 c_Δ e^{iΔθ}`.
#[derive(Debug, Clone)]
pub struct VisibilityScan {
    /// `trace - c_0`.
    mean: f64,
    /// `c_Δ` for `Δ = 1..dim_b`.
    harmonics: Vec<Complex64>,
}

impl VisibilityScan {
    pub fn click_probability(&self, theta: f64) -> f64 {
        let oscillating: f64 = self
            .harmonics
            .iter()
            .enumerate()
            .map(|(d, c)| 2.0 * (c * Complex64::from_polar(1.0, (d + 1) as f64 * theta)).re)
            .sum();
        self.mean - oscillating
    }

    /// Visibility from the fundamental harmonic alone.
    pub fn analytic_visibility(&self) -> f64 {
        match self.harmonics.first() {
            Some(c1) if self.mean > 0.0 => 2.0 * c1.norm() / self.mean,
            _ => 0.0,
        }
    }

    /// `(max - min) / (max + min)` over an even grid of `points` phases; each
    /// extremum is then polished by golden-section search within one grid step.
    pub fn scanned_visibility(&self, points: usize) -> f64 {
        let step = TAU / points as f64;
        let grid: Vec<f64> = (0..points)
            .map(|i| self.click_probability(i as f64 * step))
            .collect();
        let (imax, _) = grid
            .iter()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc },
            );
        let (imin, _) =
            grid.iter().enumerate().fold(
                (0, f64::INFINITY),
                |acc, (i, &p)| if p < acc.1 { (i, p) } else { acc },
            );
        // golden_extremum returns minus the minimum of its objective
        let max = golden_extremum(|t| -self.click_probability(t), imax as f64 * step, step)
            .max(grid[imax]);
        let min = (-golden_extremum(|t| self.click_probability(t), imin as f64 * step, step))
            .min(grid[imin]);
        if max + min <= 0.0 {
            return 0.0;
        }
        (max - min) / (max + min)
    }

    /// Residual of the best `A + B cos(θ + θ0)` fit, relative to `B`, on a uniform grid.
    pub fn sinusoid_residual(&self, points: usize) -> f64 {
        let amplitude = self
            .harmonics
            .first()
            .map(|c| 2.0 * c.norm())
            .unwrap_or(0.0);
        if amplitude == 0.0 {
            return 0.0;
        }
        let c1 = self.harmonics[0];
        (0..points)
            .map(|i| {
                let theta = TAU * i as f64 / points as f64;
                let fit = self.mean - 2.0 * (c1 * Complex64::from_polar(1.0, theta)).re;
                (self.click_probability(theta) - fit).abs()
            })
            .fold(0.0, f64::max)
            / amplitude
    }
}

/// Minimises `f` on `[center - half, center + half]`; returns `-min f`.
fn golden_extremum<F: Fn(f64) -> f64>(f: F, center: f64, half: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (center - half, center + half);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    -f1.min(f2)
}

/// Fringe of a threshold detector on output A after mixing A and B on a
/// balanced beamsplitter with phase `θ` on B.
pub fn visibility_scan(state: &JointState, det: &DetectorParams) -> VisibilityScan {
    let (da, db) = state.dims();
    let max_total = da + db - 2;
    let lnf = ln_factorials(max_total + 1);
    let quiet = no_click_weights(max_total + 1, det);
    let rho = state.entries();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); db];
    for total in 0..=max_total {
        // inputs (a, b) with a + b = total that fit the truncation
        let inputs: Vec<(usize, usize)> = (0..db)
            .filter(|&b| b <= total && total - b < da)
            .map(|b| (total - b, b))
            .collect();
        if inputs.is_empty() {
            continue;
        }
        for j in 0..=total {
            // output |j, total - j>; detector on the A output sees j photons
            let amps: Vec<Complex64> = inputs
                .iter()
                .map(|&(a, b)| beamsplitter_amplitude(0.5, a, b, j, &lnf))
                .collect();
            let w = quiet[j];
            for (x, &(a, b)) in inputs.iter().enumerate() {
                let row = a * db + b;
                for (y, &(a2, b2)) in inputs.iter().enumerate() {
                    if b < b2 {
                        continue;
                    }
                    let term = amps[x] * rho[[row, a2 * db + b2]] * amps[y].conj() * w;
                    coeffs[b - b2] += term;
                }
            }
        }
    }
    // no-click(θ) = Re[c_0] + 2 Re Σ_{Δ>0} c_Δ e^{iΔθ}
    VisibilityScan {
        mean: state.trace() - coeffs[0].re,
        harmonics: coeffs[1..].to_vec(),
    }
}

/// Mode-A/B state just before the analysis detectors, plus the herald probability.
pub fn detected_state(params: &ExperimentParams) -> Result<(f64, JointState)> {
    params.validate()?;
    let (herald_prob, signal) = heralded_source_state(&params.source)?;
    let k = signal.dim();
    let input = JointState::product(&signal, &DensityOperator::vacuum(k));
    let entangled = beamsplitter_apply(&input, 0.5)?;
    let entangled = loss_channel_joint(&entangled, Mode::A, params.pre_loss_a);
    let undone = if params.alpha.magnitude() == 0.0 || params.noise.phase_variance() == 0.0 {
        // perfect undo: the channel is the identity
        entangled
    } else {
        let dim_a = redisplacement_dimension(params.alpha, &params.noise, k - 1);
        let widened = entangled.embed_mode_a(dim_a.max(k))?;
        noisy_redisplacement_joint(&widened, params.alpha, &params.noise)?
    };
    let lossy = loss_channel_joint(&undone, Mode::A, params.loss_a);
    let lossy = loss_channel_joint(&lossy, Mode::B, params.loss_b);
    Ok((herald_prob, lossy))
}

/// Runs source, entangling beamsplitter, displacement with noisy undo, arm
/// losses and both analysis settings; returns the heralded record.
pub fn run_pipeline(params: &ExperimentParams) -> Result<TomographyRecord> {
    let (herald_prob, state) = detected_state(params)?;
    let p = click_pattern_probabilities(&state, &params.analysis_det_a, &params.analysis_det_b);
    let scan = visibility_scan(&state, &params.analysis_det_a);
    let visibility = scan.scanned_visibility(params.phase_scan_points);
    let (p00, p01, p10, p11) = (p[0][0], p[0][1], p[1][0], p[1][1]);
    Ok(TomographyRecord {
        alpha_sq: params.alpha.mean_photon_number(),
        visibility,
        visibility_analytic: scan.analytic_visibility(),
        p00,
        p01,
        p10,
        p11,
        concurrence_bound: concurrence_lower_bound(visibility, p00, p01, p10, p11),
        herald_prob,
    })
}

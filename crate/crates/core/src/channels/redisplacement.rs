use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::quadrature::normal_rule;
use super::NoiseParams;
use crate::fock::{
    compose_displacements, displacement_block, resolved_dimension, ComplexAmplitude,
    DensityOperator, JointState, Mode,
};
use crate::util::max_abs_diff;
use crate::{Error, Result};

/// Net displacement left by `D(α)` followed by the imperfect undo
/// `D(-α e^{iφ})`: `α(1 - e^{iφ})`. The composition phase is global and dropped.
pub fn residual_displacement(alpha: ComplexAmplitude, phi: f64) -> ComplexAmplitude {
    let undo =
        ComplexAmplitude::from_complex(-alpha.to_complex() * Complex64::from_polar(1.0, phi));
    compose_displacements(alpha, undo).0
}

/// Mode-A truncation for a state with at most `max_photons` photons passed
/// through the noisy re-displacement: resolves residual displacements up to
/// six phase standard deviations.
pub fn redisplacement_dimension(
    alpha: ComplexAmplitude,
    noise: &NoiseParams,
    max_photons: usize,
) -> usize {
    let sigma = noise.phase_variance().sqrt();
    let reach =
        residual_displacement(alpha, 6.0 * sigma.min(std::f64::consts::PI / 6.0)).magnitude();
    resolved_dimension(reach, max_photons)
}

fn average_mode_a(
    state: &JointState,
    alpha: ComplexAmplitude,
    rule: &[(f64, f64)],
) -> Array2<Complex64> {
    let cols = state.support(Mode::A) + 1;
    let n = state.entries().nrows();
    let mut acc = Array2::zeros((n, n));
    for &(phi, w) in rule {
        // far-tail nodes cannot move any entry by more than their weight
        if w < NEGLIGIBLE_WEIGHT {
            continue;
        }
        let beta = residual_displacement(alpha, phi);
        let block = displacement_block(beta, state.dim_a(), cols);
        state.accumulate_conjugated(&block, w, &mut acc);
    }
    acc
}

const NEGLIGIBLE_WEIGHT: f64 = 1e-17;

/// Highest Gauss–Hermite order the node generator is trusted at.
pub const MAX_QUADRATURE_ORDER: usize = 175;

/// Phase-noise averaged re-displacement on mode A of a two-mode state:
/// `E_φ[D(β(φ)) ρ D(β(φ))†]`, `β(φ) = α(1 - e^{iφ})`, `φ ~ Normal(0, σ²)`.
///
/// The average is a Gauss–Hermite sum starting at `noise.quadrature_order`.
/// The order is doubled (`n -> 2n + 1`) until two successive sums agree
/// entry-wise within `noise.convergence_tolerance`; the finer sum is returned.
pub fn noisy_redisplacement_joint(
    state: &JointState,
    alpha: ComplexAmplitude,
    noise: &NoiseParams,
) -> Result<JointState> {
    noise.validate()?;
    let variance = noise.phase_variance();
    if variance == 0.0 || alpha.magnitude() == 0.0 {
        return Ok(state.clone());
    }
    let check_leakage = |avg: &Array2<Complex64>| {
        let kept: f64 = avg.diag().iter().map(|c| c.re).sum();
        let leakage = state.trace() - kept;
        if leakage > noise.leakage_tolerance {
            return Err(Error::Truncation {
                dim: state.dim_a(),
                leakage,
                tolerance: noise.leakage_tolerance,
            });
        }
        Ok(())
    };
    let mut order = noise.quadrature_order;
    let mut current = average_mode_a(state, alpha, &normal_rule(order, variance));
    check_leakage(&current)?;
    loop {
        let refined = 2 * order + 1;
        if refined > MAX_QUADRATURE_ORDER {
            return Err(Error::Convergence {
                order,
                refined,
                change: f64::INFINITY,
                tolerance: noise.convergence_tolerance,
            });
        }
        let next = average_mode_a(state, alpha, &normal_rule(refined, variance));
        check_leakage(&next)?;
        let change = max_abs_diff(&current, &next);
        if change <= noise.convergence_tolerance {
            return Ok(JointState::from_entries_unchecked(
                next,
                state.dim_a(),
                state.dim_b(),
            ));
        }
        if 2 * refined + 1 > MAX_QUADRATURE_ORDER {
            return Err(Error::Convergence {
                order,
                refined,
                change,
                tolerance: noise.convergence_tolerance,
            });
        }
        order = refined;
        current = next;
    }
}

/// Single-mode form of [`noisy_redisplacement_joint`].
///
/// The state's dimension must already resolve the residual displacement
/// (see [`redisplacement_dimension`]); lost trace is reported as a truncation error.
pub fn noisy_redisplacement(
    state: &DensityOperator,
    alpha: ComplexAmplitude,
    noise: &NoiseParams,
) -> Result<DensityOperator> {
    let joint = JointState::from_entries_unchecked(state.entries().clone(), state.dim(), 1);
    let out = noisy_redisplacement_joint(&joint, alpha, noise)?;
    Ok(DensityOperator::from_entries_unchecked(
        out.entries().clone(),
    ))
}

/// Monte-Carlo estimate of the noisy re-displacement with per-entry standard errors.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub mean: DensityOperator,
    /// Standard error of the real part of each entry.
    pub std_error_re: Array2<f64>,
    /// Standard error of the imaginary part of each entry.
    pub std_error_im: Array2<f64>,
    pub samples: usize,
}

/// Samples `φ ~ Normal(0, σ²)` from a ChaCha8 stream seeded with `seed`.
pub fn mc_redisplacement_with_errors(
    state: &DensityOperator,
    alpha: ComplexAmplitude,
    noise: &NoiseParams,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    noise.validate()?;
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "Monte-Carlo needs at least one sample".into(),
        ));
    }
    let dim = state.dim();
    let sigma = noise.phase_variance().sqrt();
    let normal = Normal::new(0.0, sigma)
        .map_err(|e| Error::InvalidParameter(format!("phase distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let joint = JointState::from_entries_unchecked(state.entries().clone(), dim, 1);
    let cols = joint.support(Mode::A) + 1;

    let mut sum: Array2<Complex64> = Array2::zeros((dim, dim));
    let mut sq_re: Array2<f64> = Array2::zeros((dim, dim));
    let mut sq_im: Array2<f64> = Array2::zeros((dim, dim));
    for _ in 0..samples {
        let phi: f64 = normal.sample(&mut rng);
        let beta = residual_displacement(alpha, phi);
        let block = displacement_block(beta, dim, cols);
        let draw = joint.conjugate_mode_a(&block);
        sum += &draw;
        sq_re.zip_mut_with(&draw, |s, c| *s += c.re * c.re);
        sq_im.zip_mut_with(&draw, |s, c| *s += c.im * c.im);
    }
    let n = samples as f64;
    let mean = sum.mapv(|c| c / n);
    let stderr = |sq: &Array2<f64>, part: fn(&Complex64) -> f64| {
        Array2::from_shape_fn((dim, dim), |(i, j)| {
            if samples < 2 {
                return f64::INFINITY;
            }
            let m = part(&mean[[i, j]]);
            let var = ((sq[[i, j]] / n - m * m) * n / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        })
    };
    let std_error_re = stderr(&sq_re, |c| c.re);
    let std_error_im = stderr(&sq_im, |c| c.im);
    Ok(McEstimate {
        mean: DensityOperator::from_entries_unchecked(mean),
        std_error_re,
        std_error_im,
        samples,
    })
}

/// Monte-Carlo average of the re-displacement channel; deterministic in `seed`.
pub fn mc_redisplacement(
    state: &DensityOperator,
    alpha: ComplexAmplitude,
    noise: &NoiseParams,
    samples: usize,
    seed: u64,
) -> Result<DensityOperator> {
    Ok(mc_redisplacement_with_errors(state, alpha, noise, samples, seed)?.mean)
}

use super::SourceParams;
use crate::channels::{loss_channel, no_click_weights, LossParams};
use crate::fock::{photon_pmf, DensityOperator};
use crate::{Error, Result};

/// Pair-number distribution of the two-mode squeezed vacuum `Σ λ^n |n, n>`,
/// `λ² = p / (1 + p)` for mean pair number `p`, truncated at `max_pairs`.
fn pair_distribution(src: &SourceParams) -> Result<Vec<f64>> {
    src.validate()?;
    let ratio = src.pair_prob / (1.0 + src.pair_prob);
    let tail = ratio.powi(src.max_pairs as i32 + 1);
    if tail > src.leakage_tolerance {
        return Err(Error::Truncation {
            dim: src.max_pairs + 1,
            leakage: tail,
            tolerance: src.leakage_tolerance,
        });
    }
    Ok((0..=src.max_pairs)
        .map(|n| (1.0 - ratio) * ratio.powi(n as i32))
        .collect())
}

/// Signal state conditioned on a herald click.
///
/// The idler detector fires on `n` pairs with probability
/// `1 - (1-d)(1-η)^n`; the heralded signal then passes the coupling loss.
/// Returns `(herald probability, normalised signal state)`.
pub fn heralded_source_state(src: &SourceParams) -> Result<(f64, DensityOperator)> {
    let pairs = pair_distribution(src)?;
    let silent = no_click_weights(pairs.len(), &src.herald_det);
    let weights: Vec<f64> = pairs
        .iter()
        .zip(&silent)
        .map(|(p, q)| p * (1.0 - q))
        .collect();
    let herald_prob: f64 = weights.iter().sum();
    if herald_prob <= 0.0 {
        return Err(Error::Undefined("herald never fires"));
    }
    let normalised: Vec<f64> = weights.iter().map(|w| w / herald_prob).collect();
    let signal = DensityOperator::from_diagonal(&normalised)?;
    let coupled = loss_channel(&signal, LossParams::new(src.signal_coupling)?);
    Ok((herald_prob, coupled))
}

/// Signal marginal without conditioning: a truncated thermal state after the coupling loss.
pub fn unheralded_signal_marginal(src: &SourceParams) -> Result<DensityOperator> {
    let pairs = pair_distribution(src)?;
    let signal = DensityOperator::from_diagonal(&pairs)?;
    Ok(loss_channel(&signal, LossParams::new(src.signal_coupling)?))
}

/// Normalised second-order autocorrelation `<n(n-1)> / <n>²`
/// (trace-normalised, so unnormalised states are accepted).
pub fn g2_zero(state: &DensityOperator) -> Result<f64> {
    let pmf = photon_pmf(state);
    let total: f64 = pmf.iter().sum();
    let mean: f64 = pmf.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    if total <= 0.0 || mean <= 0.0 {
        return Err(Error::Undefined(
            "g2(0) needs a positive mean photon number",
        ));
    }
    let factorial2: f64 = pmf
        .iter()
        .enumerate()
        .map(|(n, p)| (n as f64) * (n as f64 - 1.0) * p)
        .sum();
    Ok(total * factorial2 / (mean * mean))
}

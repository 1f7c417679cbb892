use super::DensityOperator;

/// Photon-number distribution: the diagonal of `ρ`. Sums to the trace.
pub fn photon_pmf(state: &DensityOperator) -> Vec<f64> {
    state.entries().diag().iter().map(|c| c.re).collect()
}

/// Mean and variance of a photon-number distribution, with truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    /// `1 - Σ pmf`, the weight lost above the truncation.
    pub leakage: f64,
    /// Set when `leakage` exceeds the tolerance passed to [`mean_and_variance`].
    pub leakage_warning: bool,
}

/// Moments of `pmf`, taken over the retained (normalised) weight.
pub fn mean_and_variance(pmf: &[f64], leakage_tol: f64) -> Moments {
    let total: f64 = pmf.iter().sum();
    let leakage = (1.0 - total).max(0.0);
    if total <= 0.0 {
        return Moments {
            mean: f64::NAN,
            variance: f64::NAN,
            leakage,
            leakage_warning: true,
        };
    }
    let mean = pmf
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum::<f64>()
        / total;
    let variance = pmf
        .iter()
        .enumerate()
        .map(|(n, p)| (n as f64 - mean).powi(2) * p)
        .sum::<f64>()
        / total;
    Moments {
        mean,
        variance,
        leakage,
        leakage_warning: leakage > leakage_tol,
    }
}

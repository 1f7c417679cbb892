use crate::util::ln_factorials;

/// Photon-count bin on which the coarse-grained detector fires.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionWindow {
    /// `[μ - √μ, μ + √μ]` with both ends rounded to the nearest integer.
    OneSigma,
    /// Every photon number: the detector always fires.
    Everything,
    /// Explicit inclusive bounds.
    Range { low: u64, high: u64 },
}

impl DetectionWindow {
    fn bounds(self, mean: f64) -> (usize, usize) {
        match self {
            Self::OneSigma => {
                let s = mean.sqrt();
                (
                    (mean - s).max(0.0).round() as usize,
                    (mean + s).round() as usize,
                )
            }
            Self::Everything => (0, usize::MAX),
            Self::Range { low, high } => (low as usize, high as usize),
        }
    }
}

/// Photon numbers beyond which both distributions carry negligible weight.
fn support_limit(mean: f64) -> usize {
    (mean + 40.0 * (mean + 1.0).sqrt() + 40.0).ceil() as usize
}

/// Poisson distribution of a coherent state with mean `mean`, over `0..len`.
pub fn coherent_pmf(mean: f64, len: usize) -> Vec<f64> {
    let lnf = ln_factorials(len);
    (0..len)
        .map(|n| {
            if mean == 0.0 {
                return if n == 0 { 1.0 } else { 0.0 };
            }
            (n as f64 * mean.ln() - mean - lnf[n]).exp()
        })
        .collect()
}

/// Number distribution of a displaced single photon,
/// `e^{-μ} μ^{n-1} (n - μ)² / n!`, over `0..len`.
pub fn displaced_single_photon_pmf(mean: f64, len: usize) -> Vec<f64> {
    let lnf = ln_factorials(len);
    (0..len)
        .map(|n| {
            let gap = n as f64 - mean;
            if mean == 0.0 {
                return if n == 1 { 1.0 } else { 0.0 };
            }
            if gap == 0.0 {
                return 0.0;
            }
            ((n as f64 - 1.0) * mean.ln() - mean - lnf[n] + 2.0 * gap.abs().ln()).exp()
        })
        .collect()
}

/// Single-shot guessing probability between `|α>` and `D(α)|1>` for a
/// detector that only reports whether the count lies in the one-sigma window.
pub fn coarse_grained_distinguishability(alpha_sq: f64) -> f64 {
    coarse_grained_distinguishability_with(alpha_sq, DetectionWindow::OneSigma)
}

/// Guess "coherent" on a click and "displaced photon" otherwise.
pub fn coarse_grained_distinguishability_with(alpha_sq: f64, window: DetectionWindow) -> f64 {
    let len = support_limit(alpha_sq);
    let (low, high) = window.bounds(alpha_sq);
    let inside = |pmf: &[f64]| -> f64 {
        pmf.iter()
            .enumerate()
            .filter(|(n, _)| *n >= low && *n <= high)
            .map(|(_, p)| p)
            .sum()
    };
    let coherent_in = inside(&coherent_pmf(alpha_sq, len));
    let photon_in = inside(&displaced_single_photon_pmf(alpha_sq, len));
    0.5 * coherent_in + 0.5 * (1.0 - photon_in)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmfs_are_normalised_with_right_moments() {
        for mu in [0.5, 4.0, 100.0, 1000.0] {
            let len = support_limit(mu);
            let c = coherent_pmf(mu, len);
            let d = displaced_single_photon_pmf(mu, len);
            let mean = |p: &[f64]| p.iter().enumerate().map(|(n, w)| n as f64 * w).sum::<f64>();
            assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            assert!((mean(&c) - mu).abs() < 1e-9 * mu.max(1.0));
            assert!((mean(&d) - mu - 1.0).abs() < 1e-9 * mu.max(1.0));
        }
    }

    #[test]
    fn everything_window_carries_no_information() {
        let p = coarse_grained_distinguishability_with(1000.0, DetectionWindow::Everything);
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn large_amplitude_value() {
        let p = coarse_grained_distinguishability(1000.0);
        assert!((p - 0.74).abs() < 0.01, "{p}");
    }
}

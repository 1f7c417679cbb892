/// Lower bound on the concurrence of the detected two-mode state from the
/// fringe visibility and click-pattern probabilities:
/// `V (p01 + p10) - 2 sqrt(p00 p11)`. Not clamped; negative values mean
/// entanglement is not certified.
pub fn concurrence_lower_bound(v: f64, p00: f64, p01: f64, p10: f64, p11: f64) -> f64 {
    v * (p01 + p10) - 2.0 * (p00 * p11).sqrt()
}

/// Heralded measurement record at one displacement size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographyRecord {
    pub alpha_sq: f64,
    /// Fringe visibility from the phase scan.
    pub visibility: f64,
    /// Visibility from the first Fourier component of the fringe.
    pub visibility_analytic: f64,
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
    pub concurrence_bound: f64,
    pub herald_prob: f64,
}

impl TomographyRecord {
    pub fn probability_sum(&self) -> f64 {
        self.p00 + self.p01 + self.p10 + self.p11
    }
}

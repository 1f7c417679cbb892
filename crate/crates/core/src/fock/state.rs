use ndarray::Array2;
use num_complex::Complex64;

use super::{displacement, ComplexAmplitude};
use crate::{Error, Result};

/// Entry-wise tolerance used when validating user-supplied operators.
const VALIDATION_TOL: f64 = 1e-9;

/// Pure state of one mode: amplitudes for photon numbers `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
}

impl FockVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("FockVector needs dim >= 1".into()));
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !(norm > 0.0 && norm <= 1.0 + VALIDATION_TOL) {
            return Err(Error::InvalidParameter(format!(
                "squared norm {norm} outside (0, 1]"
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::number(0, dim)
    }

    /// Fock state `|n>`; panics if `n >= dim`.
    pub fn number(n: usize, dim: usize) -> Self {
        assert!(n < dim, "photon number {n} does not fit in dim {dim}");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Coherent state `|α> = D(α)|0>`.
    pub fn coherent(alpha: ComplexAmplitude, dim: usize, leakage_tol: f64) -> Result<Self> {
        Self::displaced_number(alpha, 0, dim, leakage_tol)
    }

    /// Displaced Fock state `D(α)|n>`, failing if more than `leakage_tol`
    /// of its weight lies above the truncation.
    pub fn displaced_number(
        alpha: ComplexAmplitude,
        n: usize,
        dim: usize,
        leakage_tol: f64,
    ) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidParameter(format!(
                "photon number {n} does not fit in dim {dim}"
            )));
        }
        let column = displacement::displacement_block(alpha, dim, n + 1);
        let amplitudes: Vec<Complex64> = column.column(n).to_vec();
        let state = Self { amplitudes };
        let leakage = state.leakage();
        if leakage > leakage_tol {
            return Err(Error::Truncation {
                dim,
                leakage,
                tolerance: leakage_tol,
            });
        }
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Weight missing from the truncated basis, `1 - <ψ|ψ>`.
    pub fn leakage(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator::from_pure(self)
    }
}

/// Mixed state of one mode as a `dim × dim` matrix in the photon-number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    entries: Array2<Complex64>,
}

impl DensityOperator {
    /// Validated constructor: square, Hermitian, positive semidefinite, trace in `(0, 1]`.
    pub fn from_matrix(entries: Array2<Complex64>) -> Result<Self> {
        let state = Self { entries };
        state.validate(VALIDATION_TOL)?;
        Ok(state)
    }

    pub(crate) fn from_entries_unchecked(entries: Array2<Complex64>) -> Self {
        debug_assert_eq!(entries.nrows(), entries.ncols());
        Self { entries }
    }

    pub fn from_pure(psi: &FockVector) -> Self {
        let a = psi.amplitudes();
        let dim = a.len();
        let entries = Array2::from_shape_fn((dim, dim), |(m, n)| a[m] * a[n].conj());
        Self { entries }
    }

    /// Diagonal (photon-number mixture) state.
    pub fn from_diagonal(probabilities: &[f64]) -> Result<Self> {
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidParameter(
                "diagonal probabilities must be finite and >= 0".into(),
            ));
        }
        let dim = probabilities.len();
        let mut entries = Array2::zeros((dim, dim));
        for (n, p) in probabilities.iter().enumerate() {
            entries[[n, n]] = Complex64::new(*p, 0.0);
        }
        Self::from_matrix(entries)
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::from_pure(&FockVector::vacuum(dim))
    }

    pub fn number(n: usize, dim: usize) -> Self {
        Self::from_pure(&FockVector::number(n, dim))
    }

    /// Truncated thermal state with mean photon number `mean` (before truncation).
    pub fn thermal(mean: f64, dim: usize) -> Result<Self> {
        if !(mean >= 0.0 && mean.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "thermal mean {mean} must be >= 0"
            )));
        }
        let ratio = mean / (1.0 + mean);
        let probs: Vec<f64> = (0..dim)
            .map(|n| (1.0 - ratio) * ratio.powi(n as i32))
            .collect();
        Self::from_diagonal(&probs)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[[m, n]]
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().iter().map(|c| c.re).sum()
    }

    /// Copy into a basis of size `new_dim`; shrinking fails if it would drop weight.
    pub fn embed(&self, new_dim: usize) -> Result<Self> {
        let dim = self.dim();
        if new_dim < dim {
            let dropped: f64 = (new_dim..dim).map(|n| self.entries[[n, n]].re).sum();
            if dropped > 0.0 {
                return Err(Error::Truncation {
                    dim: new_dim,
                    leakage: dropped,
                    tolerance: 0.0,
                });
            }
        }
        let keep = dim.min(new_dim);
        let mut entries = Array2::zeros((new_dim, new_dim));
        entries
            .slice_mut(ndarray::s![..keep, ..keep])
            .assign(&self.entries.slice(ndarray::s![..keep, ..keep]));
        Ok(Self { entries })
    }

    /// Largest entry of `|ρ - ρ†|`.
    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.entries)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        validate_operator(&self.entries, tol)
    }
}

pub(crate) fn hermiticity_error(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

/// Checks that `m + tol·I` admits a Cholesky factorisation, i.e. that no
/// eigenvalue of the Hermitian matrix `m` is below `-tol`.
pub(crate) fn is_positive_within(m: &Array2<Complex64>, tol: f64) -> bool {
    let n = m.nrows();
    let mut l: Array2<Complex64> = Array2::zeros((n, n));
    for j in 0..n {
        let mut diag = m[[j, j]].re + tol;
        for k in 0..j {
            diag -= l[[j, k]].norm_sqr();
        }
        if diag < 0.0 {
            return false;
        }
        let d = diag.sqrt();
        l[[j, j]] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = m[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]].conj();
            }
            l[[i, j]] = if d > 0.0 {
                s / d
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
    }
    true
}

pub(crate) fn validate_operator(m: &Array2<Complex64>, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "density operator must be square and non-empty, got {:?}",
            m.dim()
        )));
    }
    if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidParameter(
            "operator has non-finite entries".into(),
        ));
    }
    let herm = hermiticity_error(m);
    if herm > tol {
        return Err(Error::InvalidParameter(format!(
            "operator is not Hermitian (deviation {herm:.3e})"
        )));
    }
    let trace: f64 = m.diag().iter().map(|c| c.re).sum();
    if !(trace > 0.0 && trace <= 1.0 + tol) {
        return Err(Error::InvalidParameter(format!(
            "trace {trace} outside (0, 1]"
        )));
    }
    if !is_positive_within(m, tol) {
        return Err(Error::InvalidParameter(
            "operator has an eigenvalue below -tolerance".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_physical_matrices() {
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = Complex64::new(0.5, 0.0);
        m[[1, 1]] = Complex64::new(0.5, 0.0);
        m[[0, 1]] = Complex64::new(0.6, 0.0);
        m[[1, 0]] = Complex64::new(0.6, 0.0);
        // eigenvalues 1.1 and -0.1
        assert!(DensityOperator::from_matrix(m.clone()).is_err());
        m[[0, 1]] = Complex64::new(0.5, 0.0);
        m[[1, 0]] = Complex64::new(0.5, 0.0);
        assert!(DensityOperator::from_matrix(m.clone()).is_ok());
        m[[1, 0]] = Complex64::new(0.4, 0.0);
        assert!(DensityOperator::from_matrix(m).is_err());
    }

    #[test]
    fn coherent_state_leakage_is_reported() {
        let alpha = ComplexAmplitude::from_mean_photons(25.0, 0.3).unwrap();
        assert!(matches!(
            FockVector::coherent(alpha, 20, 1e-10),
            Err(Error::Truncation { dim: 20, .. })
        ));
        let psi = FockVector::coherent(alpha, 80, 1e-10).unwrap();
        assert!(psi.leakage() < 1e-10);
    }

    #[test]
    fn embed_pads_and_refuses_lossy_shrink() {
        let rho = DensityOperator::number(2, 4);
        let big = rho.embed(7).unwrap();
        assert_eq!(big.dim(), 7);
        assert_eq!(big.get(2, 2).re, 1.0);
        assert!(big.embed(3).is_ok());
        assert!(rho.embed(2).is_err());
    }

    #[test]
    fn thermal_state_has_geometric_diagonal() {
        let rho = DensityOperator::thermal(1.0, 40).unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(3, 3).re - 0.0625).abs() < 1e-15);
    }
}

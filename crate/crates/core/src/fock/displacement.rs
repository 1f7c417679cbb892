use ndarray::Array2;
use num_complex::Complex64;

use super::ComplexAmplitude;
use crate::util::ln_factorials;
use crate::{Error, Result};

/// Generalised Laguerre polynomial `L_n^{(k)}(x)` by forward recurrence.
fn laguerre(n: usize, k: usize, x: f64) -> f64 {
    let k = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for j in 1..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `<m|D(α)|n>` from the associated-Laguerre closed form, with the factorial
/// prefactor accumulated in log space. `lnf` must cover `max(m, n)`.
pub(crate) fn displacement_element_ln(
    alpha: ComplexAmplitude,
    m: usize,
    n: usize,
    lnf: &[f64],
) -> Complex64 {
    let r = alpha.magnitude();
    let x = r * r;
    let (lo, hi) = if m >= n { (n, m) } else { (m, n) };
    let k = hi - lo;
    if k > 0 && r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut log_mag = 0.5 * (lnf[lo] - lnf[hi]) - 0.5 * x;
    if k > 0 {
        log_mag += k as f64 * r.ln();
    }
    let value = log_mag.exp() * laguerre(lo, k, x);
    // α^k above the diagonal, (-α*)^k below it
    let phase = if m >= n {
        k as f64 * alpha.phase()
    } else {
        k as f64 * (std::f64::consts::PI - alpha.phase())
    };
    Complex64::from_polar(value, phase)
}

/// Single matrix element `<m|D(α)|n>`.
pub fn displacement_element(alpha: ComplexAmplitude, m: usize, n: usize) -> Complex64 {
    let lnf = ln_factorials(m.max(n));
    displacement_element_ln(alpha, m, n, &lnf)
}

/// The `rows × cols` upper-left block of `D(α)`. Entries are exact matrix
/// elements of the untruncated operator.
pub fn displacement_block(alpha: ComplexAmplitude, rows: usize, cols: usize) -> Array2<Complex64> {
    let lnf = ln_factorials(rows.max(cols));
    Array2::from_shape_fn((rows, cols), |(m, n)| {
        displacement_element_ln(alpha, m, n, &lnf)
    })
}

/// `dim × dim` displacement matrix.
///
/// Fails with a truncation error when the displaced vacuum (column 0) loses
/// more than `leakage_tol` of its norm above the cut.
pub fn displacement_operator(
    alpha: ComplexAmplitude,
    dim: usize,
    leakage_tol: f64,
) -> Result<Array2<Complex64>> {
    if dim == 0 {
        return Err(Error::InvalidParameter(
            "displacement needs dim >= 1".into(),
        ));
    }
    let d = displacement_block(alpha, dim, dim);
    let kept: f64 = d.column(0).iter().map(|c| c.norm_sqr()).sum();
    let leakage = (1.0 - kept).max(0.0);
    if leakage > leakage_tol {
        return Err(Error::Truncation {
            dim,
            leakage,
            tolerance: leakage_tol,
        });
    }
    Ok(d)
}

/// Default truncation for states displaced by `alpha`: `ceil((|α| + 6)²) + 4`.
pub fn default_dimension(alpha: ComplexAmplitude) -> usize {
    ((alpha.magnitude() + 6.0).powi(2)).ceil() as usize + 4
}

/// Truncation that resolves `D(β)|n>` for all `n <= max_photons` and
/// `|β| <= max_magnitude`: `n̄ + 8√n̄ + 20` with `n̄ = (|β| + √n)²`.
pub fn resolved_dimension(max_magnitude: f64, max_photons: usize) -> usize {
    let reach = max_magnitude + (max_photons as f64).sqrt();
    let mean = reach * reach;
    (mean + 8.0 * mean.sqrt() + 20.0).ceil() as usize + max_photons
}

/// Merges two successive displacements, `alpha` first and then `beta`:
/// `D(β) D(α) = exp(i·Im(β α*)) D(α + β)`.
///
/// Returns `(α + β, Im(β α*))`.
pub fn compose_displacements(
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
) -> (ComplexAmplitude, f64) {
    let a = alpha.to_complex();
    let b = beta.to_complex();
    let gamma = ComplexAmplitude::from_complex(a + b);
    let phase = (b * a.conj()).im;
    (gamma, phase)
}

use ndarray::Array2;
use num_complex::Complex64;

use super::JointState;
use crate::util::{i_pow, ln_binomial, ln_factorials};
use crate::{Error, Result};

/// `<j, N-j| U_BS(t) |a, b>` with `N = a + b`, for intensity transmittance `t`.
///
/// Convention: `a† -> √t a† + i√r b†`, `b† -> i√r a† + √t b†`, `r = 1 - t`.
/// `lnf` must cover `a + b`.
pub fn beamsplitter_amplitude(t: f64, a: usize, b: usize, j: usize, lnf: &[f64]) -> Complex64 {
    let total = a + b;
    if j > total {
        return Complex64::new(0.0, 0.0);
    }
    let r = 1.0 - t;
    let norm = 0.5 * (lnf[j] + lnf[total - j] - lnf[a] - lnf[b]);
    let mut sum = Complex64::new(0.0, 0.0);
    // q creation operators of the output A mode come from the input b, p = j - q from input a
    let q_lo = j.saturating_sub(a);
    let q_hi = j.min(b);
    for q in q_lo..=q_hi {
        let p = j - q;
        let t_pow = (p + b - q) as f64 / 2.0;
        let r_pow = (a - p + q) as f64 / 2.0;
        let mag = (ln_binomial(lnf, a, p) + ln_binomial(lnf, b, q) + norm).exp()
            * t.powf(t_pow)
            * r.powf(r_pow);
        sum += i_pow(a - p + q) * mag;
    }
    sum
}

/// Full beamsplitter unitary on `dim_a × dim_b`, restricted to the photon-number
/// sectors `N <= max_total` (sectors above are left zero).
pub fn beamsplitter_unitary(
    t: f64,
    dim_a: usize,
    dim_b: usize,
    max_total: usize,
) -> Array2<Complex64> {
    let lnf = ln_factorials(dim_a + dim_b);
    let n = dim_a * dim_b;
    let mut u = Array2::zeros((n, n));
    for a in 0..dim_a {
        for b in 0..dim_b {
            let total = a + b;
            if total > max_total {
                continue;
            }
            for j in 0..=total {
                let k = total - j;
                if j >= dim_a || k >= dim_b {
                    continue;
                }
                u[[j * dim_b + k, a * dim_b + b]] = beamsplitter_amplitude(t, a, b, j, &lnf);
            }
        }
    }
    u
}

/// Mixes modes A and B on a beamsplitter of intensity transmittance `t`.
///
/// Photon number is conserved, so the result is exact as long as every
/// populated total photon number `N` fits in both modes (`N < dim`);
/// otherwise a truncation error is returned.
pub fn beamsplitter_apply(state: &JointState, transmittance: f64) -> Result<JointState> {
    if !(0.0..=1.0).contains(&transmittance) {
        return Err(Error::InvalidParameter(format!(
            "transmittance {transmittance} outside [0, 1]"
        )));
    }
    let (da, db) = state.dims();
    let pmf = state.joint_pmf();
    let mut max_total = 0;
    for ((a, b), p) in pmf.indexed_iter() {
        if *p > 0.0 {
            max_total = max_total.max(a + b);
        }
    }
    if max_total >= da.min(db) {
        let spill: f64 = pmf
            .indexed_iter()
            .filter(|((a, b), _)| a + b >= da.min(db))
            .map(|(_, p)| *p)
            .sum();
        return Err(Error::Truncation {
            dim: da.min(db),
            leakage: spill,
            tolerance: 0.0,
        });
    }
    let u = beamsplitter_unitary(transmittance, da, db, max_total);
    let rotated = u.dot(state.entries()).dot(&u.t().mapv(|c| c.conj()));
    Ok(JointState::from_entries_unchecked(rotated, da, db))
}

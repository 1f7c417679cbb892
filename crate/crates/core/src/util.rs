/// Table of `ln(n!)` for `n = 0..=max`.
pub(crate) fn ln_factorials(max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    table.push(acc);
    for n in 1..=max {
        acc += (n as f64).ln();
        table.push(acc);
    }
    table
}

/// `ln C(n, k)` from a log-factorial table.
#[inline]
pub(crate) fn ln_binomial(lnf: &[f64], n: usize, k: usize) -> f64 {
    lnf[n] - lnf[k] - lnf[n - k]
}

/// `i^k` as a complex number.
#[inline]
pub(crate) fn i_pow(k: usize) -> num_complex::Complex64 {
    use num_complex::Complex64;
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Largest absolute entry-wise difference between two complex arrays of equal shape.
pub(crate) fn max_abs_diff(
    a: &ndarray::Array2<num_complex::Complex64>,
    b: &ndarray::Array2<num_complex::Complex64>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

use ndarray::Array2;
use num_complex::Complex64;

use super::state::validate_operator;
use super::DensityOperator;
use crate::{Error, Result};

/// Which of the two optical modes an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// Two-mode density operator on `A ⊗ B`, A-major: `|a, b>` has index `a * dim_b + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    entries: Array2<Complex64>,
    dim_a: usize,
    dim_b: usize,
}

impl JointState {
    pub fn from_matrix(entries: Array2<Complex64>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if entries.nrows() != dim_a * dim_b || entries.ncols() != dim_a * dim_b {
            return Err(Error::DimensionMismatch(format!(
                "joint state of dims ({dim_a}, {dim_b}) needs a {0}x{0} matrix, got {1:?}",
                dim_a * dim_b,
                entries.dim()
            )));
        }
        validate_operator(&entries, 1e-9)?;
        Ok(Self {
            entries,
            dim_a,
            dim_b,
        })
    }

    pub(crate) fn from_entries_unchecked(
        entries: Array2<Complex64>,
        dim_a: usize,
        dim_b: usize,
    ) -> Self {
        debug_assert_eq!(entries.nrows(), dim_a * dim_b);
        Self {
            entries,
            dim_a,
            dim_b,
        }
    }

    /// Pure two-mode state from A-major amplitudes.
    pub fn from_amplitudes(amplitudes: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Self> {
        if amplitudes.len() != dim_a * dim_b {
            return Err(Error::DimensionMismatch(format!(
                "expected {} amplitudes, got {}",
                dim_a * dim_b,
                amplitudes.len()
            )));
        }
        let n = amplitudes.len();
        let entries = Array2::from_shape_fn((n, n), |(i, j)| amplitudes[i] * amplitudes[j].conj());
        Self::from_matrix(entries, dim_a, dim_b)
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &DensityOperator, b: &DensityOperator) -> Self {
        let (da, db) = (a.dim(), b.dim());
        let entries = Array2::from_shape_fn((da * db, da * db), |(i, j)| {
            a.get(i / db, j / db) * b.get(i % db, j % db)
        });
        Self {
            entries,
            dim_a: da,
            dim_b: db,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.dim_b + b
    }

    /// `<a, b| ρ |a2, b2>`.
    pub fn get(&self, a: usize, b: usize, a2: usize, b2: usize) -> Complex64 {
        self.entries[[self.index(a, b), self.index(a2, b2)]]
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().iter().map(|c| c.re).sum()
    }

    /// Joint photon-number distribution `P(a, b)` as a `dim_a × dim_b` array.
    pub fn joint_pmf(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.dim_a, self.dim_b), |(a, b)| {
            let i = self.index(a, b);
            self.entries[[i, i]].re
        })
    }

    /// Expected total photon number `<n_A + n_B>`.
    pub fn mean_total_photons(&self) -> f64 {
        let pmf = self.joint_pmf();
        pmf.indexed_iter()
            .map(|((a, b), p)| (a + b) as f64 * p)
            .sum()
    }

    /// Highest photon number `a` (for mode A) or `b` (for B) carrying weight.
    pub fn support(&self, mode: Mode) -> usize {
        let pmf = self.joint_pmf();
        let mut top = 0;
        for ((a, b), p) in pmf.indexed_iter() {
            if *p > 0.0 {
                top = top.max(match mode {
                    Mode::A => a,
                    Mode::B => b,
                });
            }
        }
        top
    }

    /// Same state with mode A re-embedded in a basis of size `new_dim_a`.
    pub fn embed_mode_a(&self, new_dim_a: usize) -> Result<Self> {
        if new_dim_a < self.dim_a && self.support(Mode::A) >= new_dim_a {
            return Err(Error::Truncation {
                dim: new_dim_a,
                leakage: (new_dim_a..self.dim_a)
                    .flat_map(|a| (0..self.dim_b).map(move |b| (a, b)))
                    .map(|(a, b)| self.get(a, b, a, b).re)
                    .sum(),
                tolerance: 0.0,
            });
        }
        let db = self.dim_b;
        let keep = self.dim_a.min(new_dim_a);
        let n = new_dim_a * db;
        let mut entries = Array2::zeros((n, n));
        for a in 0..keep {
            for b in 0..db {
                for a2 in 0..keep {
                    for b2 in 0..db {
                        entries[[a * db + b, a2 * db + b2]] = self.get(a, b, a2, b2);
                    }
                }
            }
        }
        Ok(Self {
            entries,
            dim_a: new_dim_a,
            dim_b: db,
        })
    }

    /// Maps `ρ -> (U ⊗ I) ρ (U ⊗ I)†` for a `dim_a × s` block `U` acting on the
    /// lowest `s` levels of mode A. Mode-A weight above `s` must be zero.
    pub(crate) fn conjugate_mode_a(&self, block: &Array2<Complex64>) -> Array2<Complex64> {
        let n = self.dim_a * self.dim_b;
        let mut out = Array2::zeros((n, n));
        self.accumulate_conjugated(block, 1.0, &mut out);
        out
    }

    /// `acc += weight · (U ⊗ I) ρ (U ⊗ I)†`, see [`Self::conjugate_mode_a`].
    pub(crate) fn accumulate_conjugated(
        &self,
        block: &Array2<Complex64>,
        weight: f64,
        acc: &mut Array2<Complex64>,
    ) {
        let (da, db) = (self.dim_a, self.dim_b);
        let s = block.ncols();
        let n = da * db;
        debug_assert_eq!(block.nrows(), da);
        debug_assert!(s <= da);
        let zero = Complex64::new(0.0, 0.0);
        // u[c * da + a] = U[a, c], contiguous per column of U
        let u: Vec<Complex64> = (0..s)
            .flat_map(|c| (0..da).map(move |a| (a, c)))
            .map(|(a, c)| block[[a, c]])
            .collect();
        let u_conj: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
        // half[((a * db + b) * s + c2) * db + b2] = Σ_c U[a, c] ρ[c, b; c2, b2]
        let mut half = vec![zero; n * s * db];
        for c in 0..s {
            let uc = &u[c * da..(c + 1) * da];
            for b in 0..db {
                let row = self.entries.row(c * db + b);
                for c2 in 0..s {
                    for b2 in 0..db {
                        let rho = row[c2 * db + b2];
                        if rho == zero {
                            continue;
                        }
                        let offset = (b * s + c2) * db + b2;
                        let rho = rho * weight;
                        for (a, ua) in uc.iter().enumerate() {
                            half[a * db * s * db + offset] += ua * rho;
                        }
                    }
                }
            }
        }
        let out = acc.as_slice_mut().expect("standard layout");
        for (i, out_row) in out.chunks_exact_mut(n).enumerate() {
            let h_row = &half[i * s * db..(i + 1) * s * db];
            for c2 in 0..s {
                let uc = &u_conj[c2 * da..(c2 + 1) * da];
                for b2 in 0..db {
                    let h = h_row[c2 * db + b2];
                    if h == zero {
                        continue;
                    }
                    for (a2, ua) in uc.iter().enumerate() {
                        out_row[a2 * db + b2] += h * ua;
                    }
                }
            }
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        validate_operator(&self.entries, tol)
    }
}

/// Reduced state of the `keep` mode.
pub fn partial_trace(state: &JointState, keep: Mode) -> DensityOperator {
    let (da, db) = state.dims();
    let entries = match keep {
        Mode::A => Array2::from_shape_fn((da, da), |(a, a2)| {
            (0..db).map(|b| state.get(a, b, a2, b)).sum()
        }),
        Mode::B => Array2::from_shape_fn((db, db), |(b, b2)| {
            (0..da).map(|a| state.get(a, b, a, b2)).sum()
        }),
    };
    DensityOperator::from_entries_unchecked(entries)
}

use ndarray::Array2;
use num_complex::Complex64;

use super::LossParams;
use crate::fock::{DensityOperator, JointState, Mode};
use crate::util::{ln_binomial, ln_factorials};

/// Weight linking `ρ[m+k, m'+k]` to `ρ'[m, m']` under the binomial loss
/// Kraus family, `√(C(m+k,k) C(m'+k,k) η^{m+m'} (1-η)^{2k})`. It factorises
/// as `g[m][k] g[m'][k]` with `g[m][k] = √(C(m+k,k) η^m (1-η)^k)`.
struct LossKernel {
    dim: usize,
    g: Vec<f64>,
}

impl LossKernel {
    fn new(dim: usize, eta: f64) -> Self {
        let lnf = ln_factorials(2 * dim);
        let mut g = vec![0.0; dim * dim];
        for m in 0..dim {
            for k in 0..dim - m {
                let ln = ln_binomial(&lnf, m + k, k) + ln_pow(eta, m) + ln_pow(1.0 - eta, k);
                g[m * dim + k] = (0.5 * ln).exp();
            }
        }
        Self { dim, g }
    }

    fn weight(&self, m: usize, m2: usize, k: usize) -> f64 {
        self.g[m * self.dim + k] * self.g[m2 * self.dim + k]
    }
}

/// `ln(x^n)` with `0^0 = 1`.
fn ln_pow(x: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * x.ln()
    }
}

/// Pure loss with intensity transmission `η`: each photon survives independently
/// with probability `η`. Trace preserving.
pub fn loss_channel(state: &DensityOperator, loss: LossParams) -> DensityOperator {
    let eta = loss.transmission;
    if eta == 1.0 {
        return state.clone();
    }
    let dim = state.dim();
    let kernel = LossKernel::new(dim, eta);
    let rho = state.entries();
    let out = Array2::from_shape_fn((dim, dim), |(m, m2)| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut k = 0;
        while m + k < dim && m2 + k < dim {
            acc += rho[[m + k, m2 + k]] * kernel.weight(m, m2, k);
            k += 1;
        }
        acc
    });
    DensityOperator::from_entries_unchecked(out)
}

/// Loss acting on one mode of a two-mode state.
pub fn loss_channel_joint(state: &JointState, mode: Mode, loss: LossParams) -> JointState {
    let eta = loss.transmission;
    if eta == 1.0 {
        return state.clone();
    }
    let (da, db) = state.dims();
    let lossy_dim = match mode {
        Mode::A => da,
        Mode::B => db,
    };
    let kernel = LossKernel::new(lossy_dim, eta);
    let rho = state.entries();
    let out = Array2::from_shape_fn((da * db, da * db), |(i, j)| {
        let (a, b, a2, b2) = (i / db, i % db, j / db, j % db);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut k = 0;
        match mode {
            Mode::A => {
                while a + k < da && a2 + k < da {
                    acc += rho[[(a + k) * db + b, (a2 + k) * db + b2]] * kernel.weight(a, a2, k);
                    k += 1;
                }
            }
            Mode::B => {
                while b + k < db && b2 + k < db {
                    acc += rho[[a * db + b + k, a2 * db + b2 + k]] * kernel.weight(b, b2, k);
                    k += 1;
                }
            }
        }
        acc
    });
    JointState::from_entries_unchecked(out, da, db)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{partial_trace, photon_pmf, ComplexAmplitude, FockVector};

    fn lp(t: f64) -> LossParams {
        LossParams::new(t).unwrap()
    }

    #[test]
    fn unit_transmission_is_identity() {
        let rho = DensityOperator::thermal(0.7, 6).unwrap();
        assert_eq!(loss_channel(&rho, lp(1.0)), rho);
    }

    #[test]
    fn half_transmission_on_single_photon() {
        let out = loss_channel(&DensityOperator::number(1, 3), lp(0.5));
        let pmf = photon_pmf(&out);
        assert!((pmf[0] - 0.5).abs() < 1e-15 && (pmf[1] - 0.5).abs() < 1e-15);
        assert!(out.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn attenuated_coherent_state_by_kraus_sum() {
        // explicit Kraus operators K_k = Σ_n √C(n,k) η^{(n-k)/2} (1-η)^{k/2} |n-k><n|
        let dim = 40;
        let eta: f64 = 0.25;
        let alpha = ComplexAmplitude::from_mean_photons(4.0, 0.0).unwrap();
        let rho = FockVector::coherent(alpha, dim, 1e-12)
            .unwrap()
            .to_density();
        let mut oracle: Array2<Complex64> = Array2::zeros((dim, dim));
        let mut binom = vec![vec![0.0f64; dim]; dim];
        for n in 0..dim {
            binom[n][0] = 1.0;
            for k in 1..=n {
                binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0.0 };
            }
        }
        for k in 0..dim {
            let mut kraus: Array2<Complex64> = Array2::zeros((dim, dim));
            for n in k..dim {
                let c =
                    (binom[n][k] * eta.powi((n - k) as i32) * (1.0 - eta).powi(k as i32)).sqrt();
                kraus[[n - k, n]] = Complex64::new(c, 0.0);
            }
            oracle += &kraus.dot(rho.entries()).dot(&kraus.t());
        }
        let out = loss_channel(&rho, lp(eta));
        assert!(crate::util::max_abs_diff(out.entries(), &oracle) < 1e-13);
        // Poisson(1)
        let mut p = (-1.0f64).exp();
        for (n, got) in photon_pmf(&out).iter().enumerate().take(15) {
            assert!((got - p).abs() < 1e-12, "n={n}");
            p /= (n + 1) as f64;
        }
    }

    #[test]
    fn joint_loss_matches_single_mode_on_marginal() {
        let rho_a = DensityOperator::thermal(0.5, 5).unwrap();
        let rho_b = DensityOperator::number(2, 3);
        let joint = JointState::product(&rho_a, &rho_b);
        let out = loss_channel_joint(&joint, Mode::A, lp(0.3));
        let direct = loss_channel(&rho_a, lp(0.3));
        assert!(
            crate::util::max_abs_diff(partial_trace(&out, Mode::A).entries(), direct.entries())
                < 1e-15
        );
        let out_b = loss_channel_joint(&joint, Mode::B, lp(0.6));
        let direct_b = loss_channel(&rho_b, lp(0.6));
        let tr_a = Complex64::new(rho_a.trace(), 0.0);
        assert!(
            crate::util::max_abs_diff(
                partial_trace(&out_b, Mode::B).entries(),
                &(direct_b.entries() * tr_a)
            ) < 1e-15
        );
    }
}

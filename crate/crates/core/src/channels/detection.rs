use super::DetectorParams;
use crate::fock::{photon_pmf, DensityOperator, JointState};

/// No-click probability for each photon number `n < dim`: `(1-d)(1-η)^n`.
pub fn no_click_weights(dim: usize, det: &DetectorParams) -> Vec<f64> {
    let miss = 1.0 - det.efficiency;
    let quiet = 1.0 - det.dark_prob;
    let mut w = Vec::with_capacity(dim);
    let mut acc = quiet;
    for _ in 0..dim {
        w.push(acc);
        acc *= miss;
    }
    w
}

/// Probability that a threshold detector fires:
/// `1 - (1-d) Σ_n P(n) (1-η)^n`.
pub fn click_probability(state: &DensityOperator, det: &DetectorParams) -> f64 {
    let pmf = photon_pmf(state);
    let weights = no_click_weights(pmf.len(), det);
    let silent: f64 = pmf.iter().zip(&weights).map(|(p, w)| p * w).sum();
    // trace, not 1, so unnormalised inputs scale consistently
    (pmf.iter().sum::<f64>() - silent).clamp(0.0, 1.0)
}

/// Joint click-pattern probabilities `p[m][n]`, `m` for detector A and `n`
/// for detector B, with `1` meaning "clicked".
pub fn click_pattern_probabilities(
    state: &JointState,
    det_a: &DetectorParams,
    det_b: &DetectorParams,
) -> [[f64; 2]; 2] {
    let pmf = state.joint_pmf();
    let (da, db) = state.dims();
    let quiet_a = no_click_weights(da, det_a);
    let quiet_b = no_click_weights(db, det_b);
    let mut p = [[0.0; 2]; 2];
    for a in 0..da {
        for b in 0..db {
            let w = pmf[[a, b]];
            let (qa, qb) = (quiet_a[a], quiet_b[b]);
            p[0][0] += w * qa * qb;
            p[0][1] += w * qa * (1.0 - qb);
            p[1][0] += w * (1.0 - qa) * qb;
            p[1][1] += w * (1.0 - qa) * (1.0 - qb);
        }
    }
    p
}

//! Gauss–Hermite rules for averaging over a Gaussian phase.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Hermite rule for weight `e^{-x²}`,
/// nodes in descending order. Newton iteration on the orthonormal Hermite
/// recurrence, seeded with the usual asymptotic guesses.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Hermite rule needs at least one node");
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    let nf = n as f64;
    let mut z: f64 = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Rule for `E[f(φ)]` with `φ ~ Normal(0, σ²)`: pairs `(φ_k, w_k)` with `Σ w_k = 1`.
pub fn normal_rule(order: usize, variance: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_hermite(order);
    let scale = (2.0 * variance).sqrt();
    let norm = PI.sqrt();
    x.into_iter()
        .zip(w)
        .map(|(xi, wi)| (scale * xi, wi / norm))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_rule_is_exact() {
        let (x, w) = gauss_hermite(3);
        let r = 1.5f64.sqrt();
        assert!((x[0] - r).abs() < 1e-14 && x[1] == 0.0 && (x[2] + r).abs() < 1e-14);
        let sp = PI.sqrt();
        assert!((w[1] - 2.0 * sp / 3.0).abs() < 1e-14);
        assert!((w[0] - sp / 6.0).abs() < 1e-14);
    }

    #[test]
    fn normal_moments_are_integrated_exactly() {
        for order in [7, 21, 43] {
            let rule = normal_rule(order, 0.3);
            let m0: f64 = rule.iter().map(|(_, w)| w).sum();
            let m2: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
            let m4: f64 = rule.iter().map(|(x, w)| w * x.powi(4)).sum();
            assert!((m0 - 1.0).abs() < 1e-13, "order {order}");
            assert!((m2 - 0.3).abs() < 1e-13);
            assert!((m4 - 3.0 * 0.09).abs() < 1e-13);
        }
    }

    #[test]
    fn characteristic_function() {
        // E[cos φ] = exp(-σ²/2)
        let rule = normal_rule(21, 2.0);
        let got: f64 = rule.iter().map(|(x, w)| w * x.cos()).sum();
        assert!((got - (-1.0f64).exp()).abs() < 1e-12);
    }
}

use approx::assert_abs_diff_eq;
use mmsim::fock::*;
use mmsim::Complex64;
use proptest::prelude::*;

fn amplitude() -> impl Strategy<Value = ComplexAmplitude> {
    (0.0f64..4.0, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(m, p)| ComplexAmplitude::new(m, p).unwrap())
}

fn normalised(raw: Vec<(f64, f64)>) -> Vec<Complex64> {
    let v: Vec<Complex64> = raw.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
    let norm = v
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1e-300);
    v.into_iter().map(|c| c / norm).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn displacement_is_unitary_on_resolved_columns(alpha in amplitude()) {
        let dim = default_dimension(alpha);
        let d = displacement_operator(alpha, dim, 1e-10).unwrap();
        let cols = 12;
        for i in 0..cols {
            for j in 0..cols {
                let dot: Complex64 = (0..dim).map(|k| d[[k, i]].conj() * d[[k, j]]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - target).norm() <= 1e-8, "({i},{j}) {dot}");
            }
        }
    }

    #[test]
    fn displacements_compose_up_to_a_phase(a in amplitude(), b in amplitude()) {
        let (sum, phase) = compose_displacements(a, b);
        let dim = default_dimension(ComplexAmplitude::from_complex(
            Complex64::new(a.magnitude() + b.magnitude(), 0.0),
        ));
        let da = displacement_block(a, dim, 8);
        let db = displacement_block(b, dim, dim);
        let ds = displacement_block(sum, dim, 8);
        let rot = Complex64::from_polar(1.0, phase);
        for m in 0..8 {
            for n in 0..8 {
                let prod: Complex64 = (0..dim).map(|k| db[[m, k]] * da[[k, n]]).sum();
                prop_assert!((prod - rot * ds[[m, n]]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn displacement_is_phase_covariant(alpha in amplitude(), theta in 0.0f64..6.3) {
        let rotated = ComplexAmplitude::new(alpha.magnitude(), alpha.phase() + theta).unwrap();
        for m in 0..10 {
            for n in 0..10 {
                let expect = displacement_element(alpha, m, n)
                    * Complex64::from_polar(1.0, theta * (m as f64 - n as f64));
                prop_assert!((displacement_element(rotated, m, n) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn displaced_photon_moments(alpha_sq in 0.0f64..25.0, phase in 0.0f64..6.3) {
        let alpha = ComplexAmplitude::from_mean_photons(alpha_sq, phase).unwrap();
        let dim = default_dimension(alpha);
        let psi = FockVector::displaced_number(alpha, 1, dim, 1e-10).unwrap();
        let m = mean_and_variance(&photon_pmf(&psi.to_density()), 1e-10);
        prop_assert!((m.mean - alpha_sq - 1.0).abs() < 1e-6);
        prop_assert!((m.variance - 3.0 * alpha_sq).abs() < 1e-6);
    }

    #[test]
    fn beamsplitter_conserves_photon_number(
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36),
        t in 0.0f64..=1.0,
    ) {
        // 6 x 6 basis; keep only sectors a + b < 6 so nothing is truncated
        let mut amps = normalised(raw);
        for a in 0..6 {
            for b in 0..6 {
                if a + b >= 6 {
                    amps[a * 6 + b] = Complex64::new(0.0, 0.0);
                }
            }
        }
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let amps: Vec<Complex64> = amps.iter().map(|c| c / norm).collect();
        let state = JointState::from_amplitudes(&amps, 6, 6).unwrap();
        let out = beamsplitter_apply(&state, t).unwrap();
        let sectors = |s: &JointState| {
            let pmf = s.joint_pmf();
            let mut by_total = [0.0; 11];
            for a in 0..6 {
                for b in 0..6 {
                    by_total[a + b] += pmf[[a, b]];
                }
            }
            by_total
        };
        let (before, after) = (sectors(&state), sectors(&out));
        for n in 0..11 {
            prop_assert!((before[n] - after[n]).abs() < 1e-12);
        }
        prop_assert!((out.trace() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn beamsplitter_matrix_is_unitary() {
    for t in [0.0, 0.1, 0.5, 0.9] {
        let u = beamsplitter_unitary(t, 5, 5, 4);
        let n = u.nrows();
        for i in 0..n {
            let (a, b) = (i / 5, i % 5);
            if a + b > 4 {
                continue;
            }
            for j in 0..n {
                let (c, d) = (j / 5, j % 5);
                if c + d > 4 {
                    continue;
                }
                let dot: Complex64 = (0..n).map(|k| u[[k, i]].conj() * u[[k, j]]).sum();
                assert_abs_diff_eq!(dot.re, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-12);
                assert_abs_diff_eq!(dot.im, 0.0, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn displacement_survives_large_amplitudes() {
    let alpha = ComplexAmplitude::from_mean_photons(400.0, 0.3).unwrap();
    let psi = FockVector::coherent(alpha, default_dimension(alpha), 1e-10).unwrap();
    let m = mean_and_variance(&photon_pmf(&psi.to_density()), 1e-10);
    assert!((m.mean - 400.0).abs() < 1e-6 && (m.variance - 400.0).abs() < 1e-5);
}

#[test]
fn partial_trace_of_product_returns_factors() {
    let a = DensityOperator::thermal(0.3, 12).unwrap();
    let b = DensityOperator::number(1, 3);
    let joint = JointState::product(&a, &b);
    let back = partial_trace(&joint, Mode::A);
    for i in 0..12 {
        for j in 0..12 {
            assert!((back.get(i, j) - a.get(i, j)).norm() < 1e-15);
        }
    }
}

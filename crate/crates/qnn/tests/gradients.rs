use proptest::prelude::*;
use qbench_qimage::BinaryImage;
use qbench_qnn::*;
use qbench_statevec::{Complex64, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn random_config(rng: &mut impl Rng) -> QnnConfig {
    let side = [2usize, 4, 8][rng.gen_range(0..3)];
    QnnConfig {
        image_side: side,
        compressed: side >= 4 && rng.gen_bool(0.5),
        layers: rng.gen_range(1..=6),
        arch: if rng.gen_bool(0.5) { Arch::Cradl } else { Arch::Craml },
        loss: if rng.gen_bool(0.5) { LossKind::Hinge } else { LossKind::Mse },
        seed: 0,
    }
}

fn random_image(side: usize, rng: &mut impl Rng) -> BinaryImage {
    BinaryImage::new(side, (0..side * side).map(|_| rng.gen_range(0..2)).collect()).unwrap()
}

fn random_params(c: &QnnConfig, rng: &mut impl Rng) -> ParamVector {
    ParamVector::from_angles(c, (0..count_params(c)).map(|_| rng.gen_range(0.0..TAU)).collect()).unwrap()
}

fn central_difference(c: &QnnConfig, params: &ParamVector, batch: &[Sample<StateVector>], step: f64) -> Vec<f64> {
    (0..params.len())
        .map(|i| {
            let mut hi = params.clone();
            let mut lo = params.clone();
            hi.angles[i] += step;
            lo.angles[i] -= step;
            (mean_loss(c, &hi, batch).unwrap() - mean_loss(c, &lo, batch).unwrap()) / (2.0 * step)
        })
        .collect()
}

fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let scale: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    diff / scale.max(1e-12)
}

#[test]
fn shift_rule_matches_finite_differences_on_fifty_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let c = random_config(&mut rng);
        let params = random_params(&c, &mut rng);
        let img = random_image(c.image_side, &mut rng);
        let label = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let batch = vec![Sample { input: c.encode(&img).unwrap(), label }];
        let shift = gradient(&c, &params, &batch).unwrap();
        let fd = central_difference(&c, &params, &batch, 1e-4);
        worst = worst.max(relative_error(&shift.angles, &fd));
    }
    assert!(worst <= 1e-5, "worst relative error {worst:e}");
}

#[test]
fn adjoint_equals_shift_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..30 {
        let c = random_config(&mut rng);
        let params = random_params(&c, &mut rng);
        let encoded = c.encode(&random_image(c.image_side, &mut rng)).unwrap();
        let (pred, adj) = adjoint_gradient(&c, &params, &encoded).unwrap();
        let shift = prediction_gradient_shift(&c, &params, &encoded).unwrap();
        assert!((pred - forward(&c, &params, &encoded).unwrap()).abs() < 1e-14);
        for (a, s) in adj.iter().zip(&shift) {
            assert!((a - s).abs() < 1e-10, "{a} vs {s}");
        }
    }
}

#[test]
fn stationary_at_zero_parameters() {
    // at all-zero angles the readout stays in |0⟩, and every first-order change
    // of ⟨Z⟩ vanishes; a batch with both labels on the same image is stationary too
    let c = QnnConfig { loss: LossKind::Mse, ..QnnConfig::qnn2() };
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let encoded = c.encode(&random_image(8, &mut rng)).unwrap();
    let batch = vec![
        Sample { input: encoded.clone(), label: 1.0 },
        Sample { input: encoded, label: -1.0 },
    ];
    let zero = ParamVector::zeros(&c);
    let g = gradient(&c, &zero, &batch).unwrap();
    let fd = central_difference(&c, &zero, &batch, 1e-4);
    assert!(g.angles.iter().chain(&fd).all(|v| v.abs() < 1e-7));
    assert!(matches!(gradient(&c, &zero, &[]), Err(QnnError::EmptyBatch)));
}

#[test]
fn mixed_layer_half_turn_on_basis_states() {
    // XX(π) = -i X⊗X and ZZ(π) = -i Z⊗Z, so a CRAML layer with angle π on
    // pixel qubit p alone maps |k⟩ to -(-1)^(bit p + bit colour) |k'⟩ where
    // k' = k with bits p and readout flipped.
    let c = QnnConfig { image_side: 4, compressed: false, layers: 1, arch: Arch::Craml, loss: LossKind::Mse, seed: 0 };
    let (colour, readout) = (c.colour_qubit(), c.readout_qubit());
    for p in 0..c.pixel_qubits() {
        let mut angles = vec![0.0; 4];
        angles[p] = PI;
        let program = ansatz_program(&c, &ParamVector::from_angles(&c, angles).unwrap()).unwrap();
        for k in 0..1usize << c.total_qubits() {
            let flipped = k ^ (1 << p) ^ (1 << readout);
            let parity = (flipped >> p & 1) + (flipped >> colour & 1);
            let sign = if parity % 2 == 0 { -1.0 } else { 1.0 };
            let out = program.run_on(StateVector::basis(c.total_qubits(), k)).unwrap();
            for (i, a) in out.amplitudes().iter().enumerate() {
                let want = if i == flipped { Complex64::new(sign, 0.0) } else { Complex64::new(0.0, 0.0) };
                assert!((a - want).norm() < 1e-12, "p={p} k={k} i={i}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forward_is_bounded_deterministic_and_norm_preserving(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_config(&mut rng);
        let params = random_params(&c, &mut rng);
        let encoded = c.encode(&random_image(c.image_side, &mut rng)).unwrap();
        let a = forward(&c, &params, &encoded).unwrap();
        prop_assert!(a.abs() <= 1.0 + 1e-12);
        prop_assert_eq!(a.to_bits(), forward(&c, &params, &encoded).unwrap().to_bits());
        let out = ansatz_program(&c, &params).unwrap().run_on(encoded).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn losses_are_non_negative(pred in -1.0f64..=1.0, positive in any::<bool>()) {
        let label = if positive { 1.0 } else { -1.0 };
        let h = hinge_loss(pred, label).unwrap();
        prop_assert!(h >= 0.0 && mse_loss(pred, label).unwrap() >= 0.0);
        prop_assert_eq!(h == 0.0, label * pred >= 1.0);
    }

    #[test]
    fn kfold_is_a_balanced_partition(n in 2usize..200, k in 2usize..12, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let folds = kfold_partition(n, k, seed).unwrap();
        let mut all = folds.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }
}

#[test]
fn parameter_counts_for_every_shape() {
    for side in [4usize, 8, 16, 32] {
        for compressed in [false, true] {
            for layers in 1..50 {
                let c = QnnConfig { image_side: side, compressed, layers, ..QnnConfig::qnn1() };
                let pixels = 2 * side.trailing_zeros() as usize - if compressed { 2 } else { 0 };
                assert_eq!(count_params(&c), layers * pixels);
            }
        }
    }
}

#[test]
fn mismatched_inputs_are_rejected() {
    let c = QnnConfig::qnn2();
    let zero = ParamVector::zeros(&c);
    let wrong = QnnConfig::qnn1().encode(&BinaryImage::zeros(8).unwrap()).unwrap();
    assert!(matches!(forward(&c, &zero, &wrong), Err(QnnError::Dimension { .. })));
    assert!(matches!(c.encode(&BinaryImage::zeros(4).unwrap()), Err(QnnError::Dimension { .. })));
    assert!(ParamVector::from_angles(&c, vec![0.0; 3]).is_err());
}

use qbench_qimage::BinaryImage;
use qbench_qnn::*;
use qbench_statevec::StateVector;

fn solid(side: usize, white: bool) -> BinaryImage {
    BinaryImage::new(side, vec![white as u8; side * side]).unwrap()
}

fn qnn_data(c: &QnnConfig, copies: usize) -> Vec<Sample<StateVector>> {
    (0..copies)
        .flat_map(|_| {
            [
                Sample { input: c.encode(&solid(8, false)).unwrap(), label: 1.0 },
                Sample { input: c.encode(&solid(8, true)).unwrap(), label: -1.0 },
            ]
        })
        .collect()
}

fn mlp_data(copies: usize) -> Vec<Sample<Vec<f64>>> {
    (0..copies)
        .flat_map(|_| {
            [
                Sample { input: solid(8, false).signed_features(), label: 1.0 },
                Sample { input: solid(8, true).signed_features(), label: -1.0 },
            ]
        })
        .collect()
}

#[test]
fn black_versus_white_is_learned_quickly() {
    let opt = OptConfig { epochs: 5, ..OptConfig::default() };
    for c in [QnnConfig::qnn1(), QnnConfig::qnn2()] {
        for loss in [LossKind::Hinge, LossKind::Mse] {
            let c = QnnConfig { loss, seed: 3, ..c.clone() };
            let h = train_holdout(&c, &qnn_data(&c, 32), &qnn_data(&c, 8), &opt, 0).unwrap();
            assert_eq!(h.best_val_accuracy(), 1.0, "{c:?}: {:?}", h.val_accuracy);
        }
    }
    let h = train_holdout(&MlpBaseline::nn1(), &mlp_data(32), &mlp_data(8), &opt, 0).unwrap();
    assert_eq!(h.final_val_accuracy(), 1.0);
}

#[test]
fn zero_epochs_reports_initial_accuracy_only() {
    let c = QnnConfig::qnn2();
    let opt = OptConfig { epochs: 0, ..OptConfig::default() };
    let h = train_holdout(&c, &qnn_data(&c, 4), &qnn_data(&c, 2), &opt, 0).unwrap();
    assert!(h.train_loss.is_empty() && h.val_accuracy.is_empty());
    assert!(h.initial_val_accuracy == 0.5 || h.initial_val_accuracy == 1.0 || h.initial_val_accuracy == 0.0);
    assert_eq!(h.final_val_accuracy(), h.initial_val_accuracy);
}

#[test]
fn same_seed_same_history() {
    let c = QnnConfig { seed: 11, ..QnnConfig::qnn2() };
    let opt = OptConfig { epochs: 3, batch_size: 5, folds: 3, ..OptConfig::default() };
    let data = qnn_data(&c, 9);
    let a = cross_validate(&c, &data, &opt).unwrap();
    let b = cross_validate(&c, &data, &opt).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 3);
    assert!(a.iter().all(|h| h.val_accuracy.len() == 3 && h.train_loss.len() == 3));
    assert_eq!(a.iter().map(|h| h.fold).collect::<Vec<_>>(), vec![0, 1, 2]);
    let other = cross_validate(&QnnConfig { seed: 12, ..c.clone() }, &data, &opt).unwrap();
    assert_ne!(a, other);
}

#[test]
fn shift_and_adjoint_training_agree() {
    let c = QnnConfig { seed: 4, ..QnnConfig::qnn2() };
    let data = qnn_data(&c, 6);
    let run = |gradient| {
        let opt = OptConfig { epochs: 2, batch_size: 4, gradient, ..OptConfig::default() };
        train_holdout(&c, &data, &data, &opt, 0).unwrap()
    };
    let (a, s) = (run(GradientMethod::Adjoint), run(GradientMethod::ParameterShift));
    for (x, y) in a.final_params.iter().zip(&s.final_params) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn degenerate_datasets_are_rejected() {
    let c = QnnConfig::qnn2();
    let opt = OptConfig::default();
    let one_class: Vec<_> = qnn_data(&c, 3).into_iter().filter(|s| s.label > 0.0).collect();
    assert!(matches!(train_holdout(&c, &one_class, &one_class, &opt, 0), Err(QnnError::Degenerate(_))));
    assert!(matches!(train_holdout(&c, &qnn_data(&c, 2), &[], &opt, 0), Err(QnnError::Degenerate(_))));
    let mut bad = qnn_data(&c, 2);
    bad[0].label = 0.5;
    assert!(matches!(train_holdout(&c, &bad, &bad, &opt, 0), Err(QnnError::InvalidLabel(_))));
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qbench(out_dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbench"))
        .arg("--out-dir")
        .arg(out_dir)
        .args(args)
        .output()
        .unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn german() -> String {
    format!("{}/../../data/german.data", env!("CARGO_MANIFEST_DIR"))
}

fn entries(dir: &Path) -> usize {
    std::fs::read_dir(dir).map(|d| d.count()).unwrap_or(0)
}

/// IDX pair of `n` 8x8 images: label 3 images are dark, label 6 images bright.
fn write_idx(dir: &Path, n: usize) -> (String, String) {
    let mut images = Vec::new();
    for word in [0x0803u32, n as u32, 8, 8] {
        images.extend(word.to_be_bytes());
    }
    let mut labels = Vec::new();
    for word in [0x0801u32, n as u32] {
        labels.extend(word.to_be_bytes());
    }
    for i in 0..n {
        let six = i % 2 == 1;
        labels.push(if six { 6 } else { 3 });
        images.extend((0..64).map(|k| if six == (k % 7 != 0) { 255u8 } else { 0 }));
    }
    let (ip, lp) = (dir.join("images.idx"), dir.join("labels.idx"));
    std::fs::write(&ip, images).unwrap();
    std::fs::write(&lp, labels).unwrap();
    (ip.display().to_string(), lp.display().to_string())
}

#[test]
fn help_exits_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_qbench")).arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["qubo", "credit", "mnist"] {
        assert!(text.contains(sub), "{text}");
    }
}

#[test]
fn error_classes_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = qbench(dir.path(), &["credit", "run", "--data", "does/not/exist"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("file not found"));

    let unknown = qbench(dir.path(), &["credit", "run", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(2));

    let model = dir.path().join("bad.txt");
    std::fs::write(&model, "n 2\nquad 0 0 1\n").unwrap();
    let malformed = qbench(dir.path(), &["qubo", "solve", "--model", model.to_str().unwrap()]);
    assert_eq!(malformed.status.code(), Some(4));

    std::fs::write(&model, "n 2\nlin 0 1\n").unwrap();
    let invalid = qbench(
        dir.path(),
        &["qubo", "solve", "--model", model.to_str().unwrap(), "--solver", "hybrid", "--subset-size", "5"],
    );
    assert_eq!(invalid.status.code(), Some(5));
    let codes: Vec<_> = [&missing, &unknown, &malformed, &invalid].iter().map(|o| o.status.code()).collect();
    assert_eq!(codes, vec![Some(3), Some(2), Some(4), Some(5)]);

    // failures leave nothing behind but the model file
    assert_eq!(entries(dir.path()), 1);
}

#[test]
fn qubo_solve_writes_result_and_record() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.txt");
    std::fs::write(&model, "n 3\nlin 0 1\nlin 1 -2\nquad 0 1 3\nlin 2 -1\noffset 0.5\n").unwrap();
    for solver in ["brute", "sa", "hybrid"] {
        let out = qbench(
            dir.path(),
            &["qubo", "solve", "--model", model.to_str().unwrap(), "--solver", solver, "--subset-size", "2"],
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let result = json(&dir.path().join("result.json"));
        assert_eq!(result["assignment"], serde_json::json!([0, 1, 1]), "{solver}");
        assert_eq!(result["value"], serde_json::json!(-2.5));
    }
    let record = json(&dir.path().join("qubo-solve.run.json"));
    assert_eq!(record["metrics"]["value"], serde_json::json!(-2.5));
    assert_eq!(record["datasets"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(record["command"].as_array().unwrap().iter().any(|a| a == "hybrid"));
}

#[test]
fn credit_run_reports_and_replays() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = qbench(dir.path(), &["--seed", "3", "credit", "run", "--data", &german(), "--trees", "40"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let report = json(&a.path().join("report.json"));
    let acc = report["report"]["accuracy"].as_f64().unwrap();
    assert!((acc - 0.70).abs() <= 0.05, "{acc}");
    assert!(!report["selected"].as_array().unwrap().is_empty());
    assert_eq!(report["config"]["selection"]["alpha"], serde_json::json!(0.5));

    assert_eq!(
        std::fs::read(a.path().join("report.json")).unwrap(),
        std::fs::read(b.path().join("report.json")).unwrap()
    );
    let (ra, rb) = (json(&a.path().join("credit-run.run.json")), json(&b.path().join("credit-run.run.json")));
    assert_eq!(ra["metrics"], rb["metrics"]);
    assert_eq!(ra["seed"], serde_json::json!(3));
}

#[test]
fn mnist_preprocess_encode_train() {
    let dir = tempfile::tempdir().unwrap();
    let (images, labels) = write_idx(dir.path(), 40);
    let out = qbench(dir.path(), &["mnist", "preprocess", "--images", &images, "--labels", &labels, "--out", "set"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = json(&dir.path().join("set/manifest.json"));
    assert_eq!(manifest["total"], serde_json::json!(40));
    assert_eq!(manifest["counts"][0], serde_json::json!({ "digit": 3, "count": 20 }));
    let data = dir.path().join("set/dataset.qbim");
    let data = data.to_str().unwrap();

    let out = qbench(dir.path(), &["mnist", "encode", "--data", data, "--index", "1", "--compressed", "--decompose"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let metrics = &json(&dir.path().join("mnist-encode.run.json"))["metrics"];
    assert!((metrics["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(metrics["multi_controlled_gates"], serde_json::json!(0));
    let dump = std::fs::read_to_string(dir.path().join("circuit.txt")).unwrap();
    assert!(dump.starts_with("qubits 5\n"));

    let train = |config: &str, out: &str| {
        let o = qbench(
            dir.path(),
            &["mnist", "train", "--data", data, "--config", config, "--epochs", "3", "--folds", "4", "--out", out],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(dir.path().join(out)).unwrap()
    };
    let curves = train("qnn2", "a.csv");
    assert_eq!(curves.lines().next(), Some("fold,epoch,train_loss,val_accuracy"));
    assert_eq!(curves.lines().count(), 1 + 4 * 3);
    assert_eq!(curves, train("qnn2", "b.csv"));
    train("nn1", "c.csv");

    let wrong = qbench(dir.path(), &["mnist", "train", "--data", data, "--config", "nn2"]);
    assert_eq!(wrong.status.code(), Some(5));
}

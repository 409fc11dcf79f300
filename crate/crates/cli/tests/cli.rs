use std::process::{Command, Output};

use serde_json::Value;
use topsym_core::spaces::CATALOG_SAMPLE;
use topsym_core::{analyze_action, builtin_example, AnalyzeOptions};

fn topsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn brieskorn_two_fails_the_symmetry_assertion() {
    let out = topsym(&["analyze", "brieskorn_2", "--assert-symmetric", "--json"]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["verdict_positive"]["symmetric"], false);
    assert_eq!(report["verdict_positive"]["witness"]["shift"], 2);
    assert_eq!(report["verdict_positive"]["witness"]["dim_mirror"], 4);
    assert_eq!(
        report["betti_positive"],
        serde_json::json!([[0, 1], [1, 0], [2, 4]])
    );
    assert_eq!(report["duality"], "not_applicable");
    assert_eq!(report["factor2"], "pass");

    let text = topsym(&["analyze", "brieskorn_2"]);
    assert_eq!(code(&text), 0);
    assert!(String::from_utf8_lossy(&text.stdout).contains("asymmetric"));
}

#[test]
fn reeb_ball_two_passes_the_symmetry_assertion() {
    let out = topsym(&["analyze", "reeb_ball_2", "--assert-symmetric", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict_positive"]["shifts"], serde_json::json!([0]));
    assert!(report["verdict_positive"].get("witness").is_none());
    assert_eq!(report["duality"], "pass");
    assert!(report.get("rolled").is_none());
}

#[test]
fn rolled_verdicts_are_added_with_mod() {
    let out = topsym(&["analyze", "brieskorn_2", "--json", "--mod", "2"]);
    assert_eq!(code(&out), 0);
    let rolled = &json(&out)["rolled"];
    assert_eq!(rolled["modulus"], 4);
    assert_eq!(rolled["entries"], serde_json::json!([1, 0, 4, 0]));
    assert_eq!(rolled["verdict"]["symmetric"], true);
}

#[test]
fn verify_disk_half_split() {
    let out = topsym(&["verify", "disk_half_split", "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 5);
    assert!(suites.iter().all(|s| s["status"] == "pass"));
}

#[test]
fn example_then_analyze_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for name in CATALOG_SAMPLE {
        let path = dir.path().join(format!("{name}.json"));
        let path_str = path.to_str().unwrap();
        assert_eq!(code(&topsym(&["example", name, "-o", path_str])), 0);
        for extra in [&[][..], &["--mod", "3"][..]] {
            let mut by_name = vec!["analyze", name, "--json"];
            by_name.extend_from_slice(extra);
            let mut by_file = vec!["analyze", path_str, "--json"];
            by_file.extend_from_slice(extra);
            let a = topsym(&by_name);
            let b = topsym(&by_file);
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout, "{name}");
        }
    }
}

#[test]
fn exit_status_contract_on_the_catalog() {
    for name in CATALOG_SAMPLE {
        let split = builtin_example(name).unwrap().into_split();
        let expected = analyze_action(&split, &AnalyzeOptions::default()).unwrap();
        let want = if expected.verdict_positive.symmetric {
            0
        } else {
            1
        };
        assert_eq!(
            code(&topsym(&["analyze", name, "--assert-symmetric"])),
            want,
            "{name}"
        );
        let verify = topsym(&["verify", name]);
        assert_eq!(
            code(&verify),
            0,
            "{name}: {}",
            String::from_utf8_lossy(&verify.stdout)
        );
    }
}

#[test]
fn double_emits_a_valid_space_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "disk_half_split",
        "annulus_split",
        "reeb_ball_1",
        "brieskorn_2",
    ] {
        let path = dir.path().join(format!("{name}_double.json"));
        let path_str = path.to_str().unwrap();
        assert_eq!(code(&topsym(&["double", name, "-o", path_str])), 0);
        let bytes = std::fs::read(&path).unwrap();
        let file = topsym_cli::parse_space_file(&bytes).unwrap();
        assert_eq!(file.name, format!("{name}_double"));
        let out = topsym(&["analyze", path_str, "--json"]);
        assert_eq!(code(&out), 0, "{name}");
    }
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let write = |file: &str, text: &str| {
        let p = dir.path().join(file);
        std::fs::write(&p, text).unwrap();
        p
    };
    let bad_json = write(
        "bad.json",
        "{\"name\": \"x\", \"maximal_simplices\": [[0,1]",
    );
    let off_boundary = write(
        "off.json",
        r#"{"name":"disk","maximal_simplices":[[0,1,3],[1,2,3]],"positive_region":[[1,3]]}"#,
    );
    let bowtie = write(
        "bowtie.json",
        r#"{"name":"bowtie","maximal_simplices":[[0,1,2],[0,3,4]]}"#,
    );
    for args in [
        vec!["analyze", "no_such_space"],
        vec!["analyze", "sphere_99"],
        vec!["analyze", bad_json.to_str().unwrap()],
        vec!["verify", off_boundary.to_str().unwrap()],
        vec!["analyze", bowtie.to_str().unwrap(), "--manifold"],
        vec!["analyze", "circle", "--mod", "0"],
        vec!["example", "nope"],
    ] {
        let out = topsym(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8_lossy(&topsym(&["analyze", bad_json.to_str().unwrap()]).stderr)
        .to_string();
    assert!(err.contains("byte"), "{err}");
    let err = String::from_utf8_lossy(&topsym(&["verify", off_boundary.to_str().unwrap()]).stderr)
        .to_string();
    assert!(err.contains("[1, 3]"), "{err}");
    // the bowtie is fine without the manifold-only flag
    assert_eq!(code(&topsym(&["analyze", bowtie.to_str().unwrap()])), 0);
}

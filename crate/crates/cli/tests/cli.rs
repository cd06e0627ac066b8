use std::path::Path;
use std::process::{Command, Output};

fn dimlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimlab"))
        .args(args)
        .env_remove("DIMLAB_BUDGET_SECONDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json", "--out", &path]);
    let o = dimlab(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_reports_element_counts() {
    for (args, count) in [
        (vec!["generate", "standard", "4"], "8 elements"),
        (vec!["generate", "product", "standard:3", "chain:2", "chain:2"], "24 elements"),
        (vec!["generate", "band", "5"], "18 elements"),
        (vec!["generate", "lexsum", "antichain:2", "chain:3", "cube:2"], "7 elements"),
    ] {
        let o = dimlab(&args);
        assert_eq!(o.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&o.stderr).contains(count), "{args:?}");
    }
}

#[test]
fn bad_family_is_a_usage_error() {
    assert_eq!(dimlab(&["generate", "nonsense", "3"]).status.code(), Some(2));
    assert_eq!(dimlab(&["generate", "slice", "4", "1"]).status.code(), Some(2));
    assert_eq!(dimlab(&["dim"]).status.code(), Some(2));
    assert_eq!(dimlab(&["dim", "/definitely/missing.json"]).status.code(), Some(2));
}

#[test]
fn dimension_values_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, want) in [
        ("s4.json", vec!["standard", "4"], "dimension 4"),
        ("a5.json", vec!["antichain", "5"], "dimension 2"),
        ("s322.json", vec!["product", "standard:3", "chain:2", "chain:2"], "dimension 3"),
    ] {
        let poset = generate(dir.path(), name, &args);
        let cert = dir.path().join(format!("{name}.cert")).to_string_lossy().into_owned();
        let o = dimlab(&["dim", &poset, "--out", &cert]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(want), "{name}: {}", stdout(&o));
        let v = dimlab(&["verify", "realizer", &poset, &cert]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
}

#[test]
fn broken_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let poset = generate(dir.path(), "s3.json", &["standard", "3"]);
    let cert = dir.path().join("bad.cert");
    std::fs::write(&cert, "0 1 2 3 4 5\n5 4 3 2 1 0\n").unwrap();
    let o = dimlab(&["verify", "realizer", &poset, cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn exhausted_budget_reports_an_interval() {
    let dir = tempfile::tempdir().unwrap();
    let poset = generate(dir.path(), "s33.json", &["product", "standard:3", "standard:3"]);
    let o = dimlab(&["dim", &poset, "--nodes", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("dimension in ["));
}

#[test]
fn verify_embedding_partition_and_boolean_files() {
    let dir = tempfile::tempdir().unwrap();
    let poset = generate(dir.path(), "s3.json", &["standard", "3"]);
    // a_i -> unit vector, b_i -> its complement
    let coords = "[[1,0,0],[0,1,0],[0,0,1],[0,1,1],[1,0,1],[1,1,0]]";
    let emb = dir.path().join("e.json");
    std::fs::write(&emb, format!(r#"{{"target_chains":[2,2,2],"image":{coords}}}"#)).unwrap();
    assert_eq!(dimlab(&["verify", "embedding", &poset, emb.to_str().unwrap()]).status.code(), Some(0));

    let pres = dir.path().join("p.json");
    std::fs::write(&pres, format!(r#"{{"chain_lengths":[2,2,2],"coords":{coords}}}"#)).unwrap();
    let part = dir.path().join("m.json");
    std::fs::write(&part, r#"{"parts":[[[0,0],[1,0],[2,0]],[[0,1],[1,1],[2,1]]]}"#).unwrap();
    let args = ["verify", "partition", &poset, pres.to_str().unwrap(), part.to_str().unwrap()];
    assert_eq!(dimlab(&args).status.code(), Some(0));
    std::fs::write(&part, r#"{"parts":[[[0,0],[1,0]],[[0,1],[1,1],[2,1]]]}"#).unwrap();
    assert_eq!(dimlab(&args).status.code(), Some(1));

    let rep = dir.path().join("r.json");
    std::fs::write(
        &rep,
        r#"{"orderings":[[0,1,2,3,4,5],[3,4,5,0,1,2],[0,3,1,4,2,5],[3,0,4,1,5,2]],"accepted":[[1,0,0,0],[1,0,1,1]]}"#,
    )
    .unwrap();
    assert_eq!(dimlab(&["verify", "boolean-rep", &poset, rep.to_str().unwrap()]).status.code(), Some(0));
    std::fs::write(&rep, r#"{"orderings":[[0,1,2,3,4,5]],"accepted":[[1]]}"#).unwrap();
    assert_eq!(dimlab(&["verify", "boolean-rep", &poset, rep.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn invariants_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let poset = generate(dir.path(), "s3.json", &["standard", "3"]);
    let o = dimlab(&["invariants", &poset, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["bd_dim"], 1);
    assert_eq!(v["absorbency"]["certified_lower"], 2);
    assert_eq!(v["absorbency"]["exact"], true);
    assert_eq!(v["standard_example"], 3);
    assert_eq!(v["components"], 1);
}

#[test]
fn reproduce_sets_pass() {
    for set in ["boolean", "absorbency"] {
        let o = dimlab(&["reproduce", set]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("pass")));
    }
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = dimlab(&["reproduce", "core", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(dir.path().join("dim-standard-5.cert").exists());
    assert_eq!(dimlab(&["reproduce", "unknown"]).status.code(), Some(2));
}

#[test]
fn probes_always_exit_zero() {
    let o = dimlab(&["probe", "Q.2_vs_C", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 violations"));
    let o = dimlab(&["probe", "Q.bound_2", "--max-n", "3", "--random-pairs", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["instances"].as_u64().unwrap() > 0);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let poset = generate(dir.path(), "b.json", &["band", "5"]);
    let a = dimlab(&["dim", &poset]);
    let b = dimlab(&["dim", &poset]);
    assert_eq!(a.stdout, b.stdout);
}

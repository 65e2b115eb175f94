use std::process::{Command, Output};

use serde_json::Value;

fn kclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = kclass(&full);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariant_examples() {
    let v = json(&["invariant", "--m", "0", "--n", "2"]);
    assert_eq!(v["scalars"][0]["alpha"], "1");
    assert_eq!(v["invariant"][0]["middle"]["cone"]["tag"], "AlphaCone");
    assert_eq!(v["invariant"][0]["middle"]["cone"]["alpha"], "1");
    assert_eq!(v["invariant"][0]["caseTag"], "AF-AF");

    let v = json(&["invariant", "--m", "inf", "--n", "1"]);
    assert_eq!(v["invariant"][0]["middle"]["cone"]["tag"], "AllPositive");
    assert_eq!(v["scalars"][0]["alpha"], "1/2");

    let v = json(&["invariant", "--m", "4", "--n", "3"]);
    assert_eq!(v["scalars"][0]["x"], "3");
    assert_eq!(
        v["invariant"][0]["middle"]["group"]["tag"],
        "DyadicPlusTorsion"
    );
    assert_eq!(v["oracle"]["depth"], "4");
    assert_eq!(v["oracle"]["torsion"], serde_json::json!(["3"]));
}

#[test]
fn validation_errors_exit_2() {
    let out = kclass(&["invariant", "--m", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ConditionK"));

    let out = kclass(&["invariant", "--m", "3", "--n", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoIdealEdge"));

    let out = kclass(&["fullness", "--m", "5", "--n", "1", "--tail", "constant:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InfiniteSum"));

    assert_eq!(
        kclass(&["invariant", "--m", "x", "--n", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kclass(&["invariant", "--m", "0", "--n", "1", "--depth", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kclass(&["invariant", "--m", "5", "--n", "1,1", "--depth", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kclass(&["bogus"]).status.code(), Some(2));
}

#[test]
fn fullness_examples() {
    let v = json(&["fullness", "--m", "8", "--n", "1"]);
    assert_eq!(v["verdict"]["stabilizedFull"], true);
    assert_eq!(v["verdict"]["unstabilized"], "Full");

    let v = json(&["fullness", "--m", "0", "--n", "2"]);
    assert_eq!(v["verdict"]["stabilizedFull"], false);
    assert_eq!(v["verdict"]["unstabilized"], "Unknown");
    assert_eq!(
        v["verdict"]["note"],
        "see Example (α finite): K-theory does not decide"
    );

    let v = json(&["fullness", "--m", "0", "--n", "1", "--tail", "doubling:1"]);
    assert_eq!(v["verdict"]["stabilizedFull"], true);
    assert_eq!(v["verdict"]["kLexicographic"], true);
    assert_eq!(v["verdict"]["unstabilized"], "Full");

    let text = String::from_utf8(kclass(&["fullness", "--m", "0", "--n", "2"]).stdout).unwrap();
    assert!(text.contains("K-theory does not decide"));
}

#[test]
fn compare_examples() {
    let v = json(&[
        "compare", "--a", "m=8,n=1", "--b", "m=8,n=3", "--mode", "exact",
    ]);
    assert_eq!(v["verdict"]["isomorphic"], false);
    assert_eq!(v["witness"], Value::Null);

    let v = json(&[
        "compare", "--a", "m=8,n=1", "--b", "m=8,n=3", "--mode", "stable",
    ]);
    assert_eq!(v["verdict"]["isomorphic"], true);
    assert_eq!(v["witness"]["u"], "5");

    let v = json(&[
        "compare", "--a", "m=4,n=1", "--b", "m=8,n=1", "--mode", "stable",
    ]);
    assert_eq!(v["verdict"]["isomorphic"], false);
    assert_eq!(v["verdict"]["reason"], "m mismatch");

    let v = json(&[
        "compare",
        "--a",
        r#"{"m":8,"n":[1]}"#,
        "--b",
        "m=8,n=2",
        "--mode",
        "exact",
    ]);
    assert_eq!(v["verdict"]["isomorphic"], true);
    assert_eq!(
        v["witness"],
        serde_json::json!({"l": "1", "lPrime": "0", "u": null})
    );
}

#[test]
fn out_of_scope_compare_reports_and_exits_2() {
    let out = kclass(&[
        "compare", "--a", "m=0,n=1", "--b", "m=0,n=2", "--mode", "stable", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["outOfScope"], true);
    assert_eq!(v["verdict"]["isomorphic"], Value::Null);
    assert_eq!(v["invariant"].as_array().unwrap().len(), 2);
}

#[test]
fn scan_examples() {
    assert_eq!(
        json(&["scan", "--max-m", "20"])["verdict"]["smallestDivergentM"],
        "8"
    );
    assert_eq!(
        json(&["scan", "--max-m", "7"])["verdict"]["smallestDivergentM"],
        Value::Null
    );
    let v = json(&["scan", "--max-m", "2"]);
    assert_eq!(v["verdict"]["smallestDivergentM"], Value::Null);
    assert_eq!(v["verdict"]["rows"].as_array().unwrap().len(), 1);
    assert_eq!(kclass(&["scan", "--max-m", "1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--max-m", "40", "--format", "json"];
    assert_eq!(kclass(&args).stdout, kclass(&args).stdout);
}

#[test]
fn input_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("kclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(
        &path,
        r#"{"m": 0, "n": [1, 1], "tail": {"kind": "constant", "c": 2}}"#,
    )
    .unwrap();
    let from_file = json(&["invariant", "--input", path.to_str().unwrap()]);
    let from_flags = json(&[
        "invariant",
        "--m",
        "0",
        "--n",
        "1,1",
        "--tail",
        "constant:2",
    ]);
    assert_eq!(from_file["scalars"], from_flags["scalars"]);
    assert_eq!(from_file["inputs"], from_flags["inputs"]);
    assert_eq!(from_file["scalars"][0]["alpha"], "5/4");
    std::fs::remove_dir_all(dir).ok();
}

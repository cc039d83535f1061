use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fagroup")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (code(&out), v)
}

fn text_field(text: &str, label: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(label))
        .unwrap_or_else(|| panic!("no `{label}` in {text}"))
        .trim()
        .to_string()
}

#[test]
fn analyze_reports_verdicts_with_exit_zero() {
    for (file, verdict, factors) in [
        ("klein.pres", "FA", vec![2, 2]),
        ("k235.pres", "Unknown", vec![30]),
        ("coprime.pres", "NotFA", vec![6]),
        ("higman.pres", "Unknown", vec![]),
    ] {
        let (c, v) = json(&["analyze", &data(file)]);
        assert_eq!(c, 0, "{file}");
        assert_eq!(v["verdict"], verdict, "{file}");
        assert_eq!(v["invariants"]["factors"], serde_json::json!(factors), "{file}");
        for key in ["presentation", "property", "rule", "reason", "easily_fa", "perfect", "abelian_a", "free_a"] {
            assert!(v.get(key).is_some(), "{file} lacks {key}");
        }
        let text = stdout(&run(&["analyze", &data(file)]));
        assert_eq!(text_field(&text, "F-A:"), verdict, "{file}: text and JSON disagree");
    }
    let (_, v) = json(&["analyze", &data("hnn.pres")]);
    assert_eq!(v["invariants"], serde_json::json!({"free_rank": 1, "factors": []}));
}

#[test]
fn analyze_hints_and_nfa() {
    let (c, v) = json(&["analyze", &data("k235.pres"), "--hint", "solvable"]);
    assert_eq!((c, v["verdict"].as_str().unwrap()), (0, "NotFA"));
    let (_, v) = json(&["analyze", &data("klein.pres"), "--nfa", "2"]);
    assert_eq!(v["verdict"], "Unknown");
    assert_eq!(v["property"], "2-F-A");
    let (_, v) = json(&["analyze", &data("klein.pres"), "--nfa", "2", "--hint", "finite"]);
    assert_eq!(v["verdict"], "NotFA");
    let text = stdout(&run(&["analyze", &data("klein.pres"), "--nfa", "2"]));
    assert_eq!(text_field(&text, "2-F-A:"), "Unknown");
    let out = run(&["analyze", &data("klein.pres"), "--hint", "nilpotent"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["analyze", &data("broken.pres")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("byte"), "{}", stderr(&out));
    assert_eq!(code(&run(&["finite", "Z 4"])), 2);
    assert_eq!(code(&run(&["--caps", "colour=3", "finite", "C 4"])), 2);
    assert_eq!(code(&run(&["witness", &data("k235.pres"), "q"])), 2);
}

#[test]
fn io_errors_exit_four() {
    let missing = data("no-such-file.pres");
    let out = run(&["analyze", &missing]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("no-such-file.pres"));
}

#[test]
fn caps_exit_three() {
    assert_eq!(code(&run(&["--caps", "order=128", "finite", "SL 7"])), 3);
    assert_eq!(code(&run(&["--caps", "normal=16", "finite", "S 4"])), 3);
    assert_eq!(code(&run(&["--caps", "order=1024,normal=16", "finite", "S 4"])), 3);
    assert_eq!(code(&run(&["--caps", "order=1024 normal=16", "finite", "S 4"])), 3);
    assert_eq!(code(&run(&["finite", "S 4", "--caps", "normal=16", "--caps", "order=1024"])), 3);
}

#[test]
fn finite_reports() {
    let (c, v) = json(&["finite", "C 15"]);
    assert_eq!(c, 0);
    assert_eq!(v["fa"]["verdict"], false);
    assert_eq!(v["fa"]["uncovered"], serde_json::json!([1]));
    for key in ["group", "property", "verdict", "cover", "uncovered"] {
        assert!(v["fa"].get(key).is_some());
    }

    let (c, v) = json(&["finite", "Q8", "--verify"]);
    assert_eq!(c, 0);
    assert!(v["verify"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));

    let (_, v) = json(&["finite", "S 5", "--weight"]);
    assert_eq!(v["weight"]["weight"], 1);

    let (_, v) = json(&["finite", "prod(C 2, C 2)", "--subcover"]);
    // no group is the union of two proper subgroups
    assert_eq!(v["fa"]["subcover"].as_array().unwrap().len(), 3);

    let (_, v) = json(&["finite", "--file", &data("s5.perm"), "--kind", "permutations"]);
    assert_eq!((v["order"].as_u64(), v["fa"]["verdict"].as_bool()), (Some(120), Some(false)));
    let (_, v) = json(&["finite", "--file", &data("q8.mat"), "--kind", "matrix"]);
    assert_eq!((v["order"].as_u64(), v["fa"]["verdict"].as_bool()), (Some(8), Some(true)));
    let (_, v) = json(&["finite", "--file", &data("klein.cayley"), "--kind", "cayley"]);
    assert_eq!(v["fa"]["verdict"], true);

    for spec in ["C 15", "Q8", "S 4", "CxC 2 4"] {
        let (_, v) = json(&["finite", spec]);
        let text = stdout(&run(&["finite", spec]));
        let first = text.lines().next().unwrap();
        let fa = v["fa"]["verdict"].as_bool().unwrap();
        assert_eq!(first.ends_with(": F-A"), fa, "{spec}: {first}");
    }
}

#[test]
fn witness_and_quotient() {
    let (c, v) = json(&["witness", &data("k235.pres"), "x", "--bound", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v["target"], serde_json::json!({"name": "C3", "order": 3}));
    assert_eq!(v["images"], serde_json::json!({"x": 0, "y": 1, "z": 0}));
    assert_eq!((v["word"].as_str(), v["verified"].as_bool()), (Some("x"), Some(true)));

    let (c, v) = json(&["witness", &data("higman.pres"), "a", "--bound", "30"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"], "none");
    assert_eq!(v["bound"], 30);

    let (_, v) = json(&["witness", &data("free2.pres"), "a", "--bound", "4"]);
    assert_eq!(v["target"]["name"], "C2");

    let (c, v) = json(&["quotient", &data("higman.pres"), "--bound", "12"]);
    assert_eq!((c, v["result"].as_str()), (0, Some("none")));
    let (_, v) = json(&["quotient", &data("coprime.pres"), "--bound", "6"]);
    assert_eq!(v["target"]["name"], "C2");

    let text = stdout(&run(&["witness", &data("higman.pres"), "a", "--bound", "30"]));
    assert!(text.starts_with("none ≤ 30"));
}

#[test]
fn scan_shape() {
    let (c, v) = json(&["scan", &data("k235.pres"), "--length", "2", "--bound", "5"]);
    assert_eq!(c, 0);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 37);
    assert_eq!(
        v["witnessed"].as_u64().unwrap() + v["unwitnessed"].as_u64().unwrap(),
        entries.len() as u64
    );
    for e in entries {
        let status = e["status"].as_str().unwrap();
        assert!(["witnessed", "unwitnessed", "bound-too-small"].contains(&status));
        assert_eq!(e["witness"].is_object(), status == "witnessed");
    }
}

#[test]
fn verify_all_harness() {
    let (c, v) = json(&["verify-all", "--max-order", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["rows"][0]["status"], "convention");

    let (c, v) = json(&["verify-all", "--max-order", "12", "--nfa-max", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["mismatches"], 0);
    let names: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    let catalog = stdout(&run(&["catalog"]));
    let expected: Vec<&str> = catalog
        .lines()
        .filter(|l| l.split_whitespace().nth(1).and_then(|o| o.parse::<usize>().ok()).is_some_and(|o| o <= 12))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(names, expected, "rows follow catalog order");

    let out = run(&["verify-all", "--max-order", "24", "--cayley", &data("corrupt.cayley")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out) + &stderr(&out);
    assert!(text.contains("corrupt") && text.contains("validator"), "{text}");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fagroup.toml");
    std::fs::write(&cfg, "format = \"json\"\norder = 128\n").unwrap();
    let cfg = cfg.display().to_string();

    let out = run(&["--config", &cfg, "finite", "C 4"]);
    assert!(serde_json::from_str::<Value>(&stdout(&out)).is_ok());
    let out = run(&["--config", &cfg, "--format", "text", "finite", "C 4"]);
    assert!(stdout(&out).starts_with("C4"));
    assert_eq!(code(&run(&["--config", &cfg, "finite", "D 70"])), 3);
    assert_eq!(code(&run(&["--config", &cfg, "--caps", "order=1024,normal=256", "finite", "D 70"])), 0);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "colour = 1\n").unwrap();
    assert_eq!(code(&run(&["--config", &bad.display().to_string(), "catalog"])), 2);
}

#[test]
fn catalog_command() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 91);
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cat.txt");
    std::fs::write(&spec, "# two families\nD 3..4\nQ8\n").unwrap();
    let (_, v) = json(&["catalog", "--spec", &spec.display().to_string()]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["D3", "D4", "Q8"]);
}

use std::process::Command;

fn adjlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_adjlab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn scratch(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("adjlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn run_reports_and_exit_codes() {
    let (code, out) = adjlab(&["run", "node_suite"]);
    assert_eq!(code, 0);
    assert!(out.contains("7 pass, 0 fail"), "{out}");

    let pair = scratch("pair.json", r#"{"ring": {"vars": ["a", "b", "c", "d"], "char": 0}, "args": {"boundary": [], "expect": "4"}}"#);
    let json = pair.with_file_name("report.json");
    let (code, _) = adjlab(&["run", "mld_monomial", "--input", pair.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["assertions"][0]["witness"]["mld"], "4");

    let failing = scratch("fail.json", r#"{"ring": {"vars": ["x"], "char": 0}, "ideals": {"a": ["x"], "b": ["x^2"]}, "tasks": [{"op": "equals", "args": {"left": "a", "right": "b"}}]}"#);
    assert_eq!(adjlab(&["run", failing.to_str().unwrap()]).0, 1);

    let broken = scratch("broken.json", "{\"ring\": ");
    assert_eq!(adjlab(&["run", broken.to_str().unwrap()]).0, 2);
    assert_eq!(adjlab(&["run", "no_such_scenario"]).0, 2);
    assert_eq!(adjlab(&["run", "node_suite", "--time-budget", "0"]).0, 2);
}

#[test]
fn list_json_round_trips() {
    let (code, out) = adjlab(&["list", "--json"]);
    assert_eq!(code, 0);
    let parsed: Vec<adjlab::CatalogEntry> = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed, adjlab::catalog());
    let (_, text) = adjlab(&["list"]);
    assert!(text.contains("example_3_1_embedded_modp") && text.contains("stretch"));
}

#[test]
fn check_anchors_against_a_file() {
    let all: String = adjlab::anchors::ANCHORS.iter().map(|(_, a)| format!("{a}\n")).collect();
    let good = scratch("anchors.txt", &all);
    assert_eq!(adjlab(&["check-anchors", "--source", good.to_str().unwrap()]).0, 0);
    let bad = scratch("partial.txt", "nothing here");
    let (code, out) = adjlab(&["check-anchors", "--source", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("missing"));
}

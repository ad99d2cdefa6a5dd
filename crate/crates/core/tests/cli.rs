use std::fs;
use std::process::{Command, Output};

use autgraph::graph::Graph;

fn autgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autgraph")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn family_file_round_trips_to_the_same_digest() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, header) in [("johnson:5,2", "10 30"), ("cycle:5", "5 5"), ("grassmann:2,4,2", "35 315")] {
        for format in ["text", "json"] {
            let path = dir.path().join(format!("{spec}.{format}").replace(':', "_"));
            let o = autgraph(&["--format", format, "family", spec, "-o", path.to_str().unwrap()]);
            assert!(o.status.success());
            let written = fs::read_to_string(&path).unwrap();
            let direct: Graph = spec.parse::<autgraph::families::FamilySpec>().unwrap().build().unwrap();
            assert_eq!(Graph::parse_any(&written).unwrap().digest(), direct.digest());
            if format == "text" {
                assert_eq!(written.lines().next(), Some(header));
            }
            assert!(stdout(&o).starts_with(&format!(
                "{} vertices, {} edges",
                direct.n(),
                direct.edge_count()
            )));
        }
    }
}

#[test]
fn aut_json_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.txt");
    fs::write(&path, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    let o = autgraph(&["--format", "json", "aut", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "12");

    let single = dir.path().join("k1.txt");
    fs::write(&single, "1 0\n").unwrap();
    let o = autgraph(&["--format", "json", "aut", single.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "1");

    let o = autgraph(&["--format", "json", "aut", "johnson:4,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "48");
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["--format", "json", "aut", "grassmann:2,4,2"][..],
        &["--format", "json", "stability", "johnson:7,2"][..],
        &["--format", "json", "verify", "doubled-grassmann:2,3,1"][..],
    ] {
        assert_eq!(autgraph(args).stdout, autgraph(args).stdout, "{args:?}");
    }
}

#[test]
fn stability_verdicts() {
    let o = autgraph(&["--format", "json", "stability", "kneser:5,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["criterion"]["status"].as_str(), v["a0"].as_u64(), v["stable"].as_bool()), (Some("holds"), Some(0), Some(true)));

    let o = autgraph(&["--format", "json", "stability", "cycle:7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["criterion"]["status"].as_str(), v["stable"].as_bool()), (Some("inconclusive"), Some(true)));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.txt");
    fs::write(&path, "4 2\n0 1\n2 3\n").unwrap();
    assert_eq!(autgraph(&["stability", path.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn exit_codes() {
    assert_eq!(autgraph(&["aut", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(autgraph(&["family", "johnson:3,5"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, "[]").unwrap();
    let report = dir.path().join("report.json");
    let o = autgraph(&["suite", empty.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&report).unwrap().trim(), "[]");

    let wrong = dir.path().join("wrong.json");
    fs::write(&wrong, r#"[{"spec": "johnson:5,2", "checks": ["aut-order"], "expected_order": "7"}]"#).unwrap();
    assert_eq!(autgraph(&["suite", wrong.to_str().unwrap()]).status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"spec": "johnson:5,2"}"#).unwrap();
    assert_eq!(autgraph(&["suite", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn default_suite_reports_the_known_failures() {
    let o = autgraph(&["--format", "json", "suite"]);
    assert_eq!(o.status.code(), Some(1));
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let refuted: Vec<(String, String)> = reports
        .iter()
        .filter(|r| r["conclusion"]["status"] == "refuted")
        .map(|r| (r["theorem_id"].as_str().unwrap().into(), r["instance"].as_str().unwrap().into()))
        .collect();
    let expected: Vec<(String, String)> = [
        ("family", "johnson:6,2"),
        ("family", "johnson:6,3"),
        ("stable", "johnson:6,2"),
        ("stable", "johnson:6,3"),
        ("xab-dichotomy", "johnson:6,3"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(refuted, expected);
}

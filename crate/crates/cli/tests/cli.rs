use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn payreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_payreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn extreme_reports_example_two() {
    let o = payreg(&["extreme", fixture("ex2").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(2, 2)  EXTREME_NUMERIC"));
    assert!(text.contains("(0, 1)  NOT_EXTREME  MIXABLE"));
    assert!(text.contains("(3, 2)  EXTREME_CERTIFIED"));
}

#[test]
fn welfare_on_coordination_game() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = payreg(&[
        "welfare",
        fixture("ex4").to_str().unwrap(),
        "--weights",
        "1,1",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["result"]["value"], serde_json::json!(10));
    assert_eq!(doc["result"]["argmax"].as_array().unwrap().len(), 2);
    assert_eq!(doc["schemaVersion"], serde_json::json!(1));
}

#[test]
fn verify_passes_on_every_fixture() {
    for name in ["ex1", "ex2", "g1", "g2", "ex4", "counterexample3p", "tangent"] {
        let o = payreg(&["verify", fixture(name).to_str().unwrap(), "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn reports_and_plots_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let game = fixture("ex2");
    let mut runs = Vec::new();
    for k in 0..2 {
        let svg = dir.path().join(format!("p{k}.svg"));
        let json = dir.path().join(format!("r{k}.json"));
        let o = payreg(&[
            "plot",
            game.to_str().unwrap(),
            "--out",
            svg.to_str().unwrap(),
            "--seed",
            "3",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let o = payreg(&["extreme", game.to_str().unwrap(), "--json", json.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        runs.push((std::fs::read(&svg).unwrap(), std::fs::read(&json).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn pareto_point_and_rational_check() {
    let g = fixture("ex1");
    let o = payreg(&["pareto", g.to_str().unwrap(), "--point", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("DOMINATED"));
    let o = payreg(&["pareto", g.to_str().unwrap(), "--rational-check", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 not found"));
    let o = payreg(&["pareto", fixture("counterexample3p").to_str().unwrap(), "--point", "0,0,-1", "--cooperative"]);
    assert!(stdout(&o).contains("DOMINATED"));
}

#[test]
fn hyperplanes_by_direction_and_sweep() {
    let g = fixture("ex2");
    let o = payreg(&["hyperplanes", g.to_str().unwrap(), "--direction", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha=2"));
    let o = payreg(&["hyperplanes", g.to_str().unwrap(), "--sweep", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 16);
}

#[test]
fn exit_codes() {
    assert_eq!(payreg(&["regions", "--bogus"]).status.code(), Some(2));
    assert_eq!(payreg(&["regions", "/nonexistent/game.json"]).status.code(), Some(3));
    let g3 = fixture("counterexample3p");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let o = payreg(&["plot", g3.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = payreg(&["welfare", fixture("ex1").to_str().unwrap(), "--weights", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"players": 1, "strategies": [["a"]], "payoffs": [["1/-3"]]}"#).unwrap();
    let o = payreg(&["regions", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.payoffs[0][0]"));
}

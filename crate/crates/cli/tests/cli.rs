use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcsbr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_accepts_and_rejects() {
    let ok = run(&["validate", &fixture("centipede.game.json")]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("Out, In-Down, In-Across"));

    let bad = run(&["validate", &fixture("broken_recall.game.json")]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("PerfectRecallViolation"));

    let ts = run(&["validate", &fixture("table1.ts.json"), "--game", &fixture("centipede.game.json")]);
    assert_eq!(code(&ts), 0, "{}", String::from_utf8_lossy(&ts.stderr));
    let ss = run(&["validate", &fixture("table2.ss.json"), "--game", &fixture("centipede.game.json")]);
    assert_eq!(code(&ss), 0);
    assert!(stdout(&ss).contains("state space: OK"));
}

#[test]
fn solve_reports_families() {
    let sr = run(&["solve", "sr", &fixture("centipede.game.json")]);
    assert_eq!(code(&sr), 0);
    assert!(stdout(&sr).contains("SR^∞ = {In-Across} × {Go}"));

    let m = run(&["--json", "solve", "mfsbrs", &fixture("centipede.game.json")]);
    let doc: serde_json::Value = serde_json::from_slice(&m.stdout).unwrap();
    assert_eq!(doc["outputs"]["members"].as_array().unwrap().len(), 5);

    let p = run(&["solve", "p-infinity", &fixture("static3x3.game.json")]);
    assert!(stdout(&p).contains("P^∞ = {U, M, D} × {L, C, R}"));

    let dynamic = run(&["solve", "p-infinity", &fixture("centipede.game.json")]);
    assert_eq!(code(&dynamic), 1);
    assert!(String::from_utf8_lossy(&dynamic.stderr).contains("NotStatic"));
}

#[test]
fn certificates_are_printed_on_request() {
    let out = run(&["--certify", "solve", "fsbrs", &fixture("centipede.game.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("justifying beliefs"));
    assert!(text.contains(r#""conditionals""#));
}

#[test]
fn rcsbr_on_table1_and_static_game() {
    let t1 = run(&["rcsbr", &fixture("centipede.game.json"), &fixture("table1.ts.json")]);
    assert_eq!(code(&t1), 0);
    let text = stdout(&t1);
    assert!(text.contains("proj_S RCSBR = {In-Across} × {Go}"));
    assert!(text.contains("∈ 𝔉: yes"));

    let st = run(&["--json", "rcsbr", "--rcbr", &fixture("static3x3.game.json"), &fixture("static3x3.ts.json")]);
    assert_eq!(code(&st), 0);
    let doc: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(doc["outputs"]["fixpoint"]["a"].as_array().unwrap().len(), 3);
    assert_eq!(doc["outputs"]["fixpoint"]["b"].as_array().unwrap().len(), 3);

    let random = run(&["--seed", "3", "rcsbr", &fixture("centipede.game.json"), "--random", "30"]);
    assert_eq!(code(&random), 0);
    assert!(stdout(&random).contains("(30/30)"));
}

#[test]
fn collapsing_structure_gives_empty_events() {
    let dir = tempfile::tempdir().unwrap();
    // Ann plays Out and Bob plays Stop, but Bob's root belief puts weight on an irrational
    // In-Down, so he fails strong belief and the whole event collapses.
    let ts = r#"{
      "a": { "types": ["x"], "beliefs": { "x": { "root": [{"s": ["Stop"], "t": ["y"], "p": "1"}], "a2": [{"s": ["Go"], "t": ["y"], "p": "1"}] } } },
      "b": { "types": ["y"], "beliefs": { "y": { "root": [{"s": ["In-Down"], "t": ["x"], "p": "1"}], "b1": [{"s": ["In-Down"], "t": ["x"], "p": "1"}] } } }
    }"#;
    let path = dir.path().join("ts.json");
    std::fs::write(&path, ts).unwrap();
    let out = run(&["rcsbr", &fixture("centipede.game.json"), path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("proj_S RCSBR = ∅"), "{text}");
}

#[test]
fn real_reports_quadrants_and_memberships() {
    let t2 = run(&["real", &fixture("centipede.game.json"), &fixture("table2.ss.json"), "--classify", "--verify-prop1"]);
    assert_eq!(code(&t2), 0);
    let text = stdout(&t2);
    assert!(text.contains("quadrant: degenerate & non-common"));
    assert!(text.contains("proj_S RCSBR♥ = {In-Across} × {Stop}"));
    assert!(text.contains("∈ 𝔉: no"));
    assert!(text.contains("∈ ∏𝔉_j: yes"));

    let t3 = run(&["real", &fixture("centipede.game.json"), &fixture("table3.ss.json"), "--verify-prop1"]);
    let text = stdout(&t3);
    assert!(text.contains("quadrant: non-degenerate & common"));
    assert!(text.contains("proj_S RCSBR♥ = {Out} × {Go}"));
    assert!(text.contains("∈ 𝔉: no; ∈ 𝕄: yes"));

    let random = run(&["real", &fixture("centipede.game.json"), "--random", "25"]);
    assert_eq!(code(&random), 0);
    assert!(stdout(&random).contains("part 1 holds whenever it applies (25/25)"));
}

#[test]
fn user_closures_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    std::fs::write(&full, r#"{"a": {"a": ["t_a", "t'_a"], "b": ["t_b", "t'_b"]}}"#).unwrap();
    let ok = run(&["real", &fixture("centipede.game.json"), &fixture("table2.ss.json"), "--closures", full.to_str().unwrap(), "--classify"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(stdout(&ok).contains("{t'_a}"));

    let open = dir.path().join("open.json");
    std::fs::write(&open, r#"{"a": {"a": ["t_a"], "b": ["t_b"]}}"#).unwrap();
    let bad = run(&["real", &fixture("centipede.game.json"), &fixture("table2.ss.json"), "--closures", open.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ClosureNotClosed"));
}

#[test]
fn construct_round_trips_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let game = fixture("centipede.game.json");
    for (target, quadrant) in [
        (r#"{"a":["Out"],"b":["Go"]}"#, "common-nondegenerate"),
        (r#"{"a":["In-Across"],"b":["Go"]}"#, "common-degenerate"),
        (r#"{"a":["In-Across"],"b":["Stop"]}"#, "noncommon-degenerate"),
        (r#"{"a":["In-Across"],"b":["Stop"]}"#, "noncommon-nondegenerate"),
    ] {
        let out_dir = dir.path().join(quadrant);
        let out = run(&["construct", &game, "--target", target, "--quadrant", quadrant, "--out", out_dir.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{target} {quadrant}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("[PASS] the projection equals the target"));
        let again = run(&["real", &game, out_dir.join("ss.json").to_str().unwrap(), "--closures", out_dir.join("closures.json").to_str().unwrap(), "--verify-prop1"]);
        assert_eq!(code(&again), 0);
    }
    let rejected = run(&[
        "construct",
        &game,
        "--target",
        r#"{"a":["In-Across"],"b":["Stop"]}"#,
        "--quadrant",
        "common/common-degenerate",
        "--out",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(code(&rejected), 1);
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("TargetNotInFamily"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["solve", "mfsbrs", "centipede.game.json"],
        vec!["--json", "real", "centipede.game.json", "table3.ss.json", "--verify-prop1"],
        vec!["--seed", "9", "real", "static3x3.game.json", "--random", "10"],
    ] {
        let resolved: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() })
            .collect();
        let refs: Vec<&str> = resolved.iter().map(String::as_str).collect();
        assert_eq!(run(&refs).stdout, run(&refs).stdout);
    }
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&run(&["solve", "bogus", "x"])), 3);
    assert_eq!(code(&run(&[])), 3);
    assert_eq!(code(&run(&["real", &fixture("centipede.game.json")])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    let bad_quadrant = run(&["construct", &fixture("centipede.game.json"), "--target", "{}", "--quadrant", "sideways", "--out", "/nonexistent"]);
    assert_ne!(code(&bad_quadrant), 0);
}

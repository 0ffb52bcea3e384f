use std::io::Write;
use std::process::{Command, Output, Stdio};

fn domgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domgame"))
        .args(args)
        .env_remove("DOMGAME_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = domgame(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn solve_examples() {
    let doc = json(&["solve", "--family", "cycle:5", "--k", "2", "--first", "bob"]);
    assert_eq!(doc["outputs"]["winner"], "Bob");
    assert_eq!(doc["schema_version"], 1);
    assert!(doc["config"].is_object());

    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let path = dir.join("path4.txt");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let doc = json(&["solve", "--edges", path.to_str().unwrap(), "--k", "1", "--first", "alice"]);
    assert_eq!(doc["outputs"]["winner"], "Alice");

    let doc = json(&["solve", "--family", "complete:4", "--k", "9"]);
    assert_eq!(doc["outputs"]["winner"], "Bob");
}

#[test]
fn numbers_examples() {
    for (args, dg, dgd) in [
        (vec!["numbers", "--family", "complete_bipartite:4,5"], 3, 2),
        (vec!["numbers", "--family", "grid:2,4"], 1, 2),
        (vec!["profile", "--family", "corona", "--base", "cycle:3"], 1, 2),
    ] {
        let doc = json(&args);
        assert_eq!(doc["outputs"]["dg"], dg, "{args:?}");
        assert_eq!(doc["outputs"]["dg_delayed"], dgd, "{args:?}");
    }
}

#[test]
fn verify_ranges() {
    let o = domgame(&["verify", "--family", "path:2..10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("9 instances, 0 mismatches"));
    let o = domgame(&["verify", "--family", "trees:8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("47 instances, 0 mismatches"));
    let o = domgame(&["verify", "--suite", "closed-forms"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn validate_examples() {
    let o = domgame(&["validate", "--strategy", "bob_tree_peeler", "--family", "path:7", "--k", "2", "--first", "bob"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Holds"));
    let o = domgame(&[
        "validate", "--strategy", "alice_matching_follower", "--family", "cycle:6", "--k", "2", "--first", "bob",
    ]);
    assert!(stdout(&o).contains("Holds"));
    let o = domgame(&[
        "validate", "--strategy", "bipartite_general:bob:literal", "--family", "complete_bipartite:2,2", "--k", "2",
    ]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stdout(&o).contains("Refuted"));
}

#[test]
fn arena_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let path = dir.join("t.json");
    let doc = json(&[
        "arena", "--first", "bob_flood", "--second", "random:seed=7", "--family", "cycle:4", "--k", "3",
        "--transcript", path.to_str().unwrap(),
    ]);
    assert_eq!(doc["outputs"]["result"], "BobWins");
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved["alice"]["id"], "random");
    assert_eq!(saved["alice"]["seed"], 7);
}

#[test]
fn search_modes() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let archive = dir.join("archive.json");
    let doc = json(&["search", "monotonicity", "--census", "n<=4", "--archive", archive.to_str().unwrap()]);
    assert_eq!(doc["outputs"]["archive"].as_array().unwrap().len(), 1 + 1 + 2 + 6);
    assert!(archive.exists());

    let g6 = dir.join("g.g6");
    std::fs::write(&g6, "Bw\nC~\n").unwrap();
    let doc = json(&["search", "monotonicity", "--graph6", g6.to_str().unwrap()]);
    let arch = doc["outputs"]["archive"].as_array().unwrap();
    assert_eq!(arch[1]["a_profile"]["winners"].as_array().unwrap().len(), 4);

    let doc = json(&["search", "edge-deletion", "--family", "complete:4"]);
    assert_eq!(doc["outputs"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn generate_streams() {
    let o = domgame(&["generate", "--trees", "6"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = domgame(&["generate", "--connected", "4"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = domgame(&["generate", "--family", "path:3", "--format", "edges"]);
    assert_eq!(stdout(&o), "3 2\n0 1\n1 2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(domgame(&["solve", "--family", "pth:4", "--k", "2"]).status.code(), Some(2));
    assert_eq!(domgame(&["solve", "--family", "path:40", "--k", "2"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_domgame"))
        .args(["solve", "--family", "path:12", "--k", "2"])
        .env("DOMGAME_MAX_STATES", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = domgame(&["solve", "--family", "path:4"]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
}

#[test]
fn interactive_play_reprompts() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_domgame"))
        .args(["play", "--family", "path:4", "--k", "2", "--human", "alice", "--first", "alice"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let moves = "9 1\n1 5\n1 1\n1 2\n0 1\n0 2\n2 1\n2 2\n3 1\n3 2\n";
    child.stdin.take().unwrap().write_all(moves.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("illegal"), "{text}");
    assert!(text.contains("Bob wins"), "{text}");
}

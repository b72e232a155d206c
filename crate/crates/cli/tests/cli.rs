use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Ws {
    dir: TempDir,
}

impl Ws {
    fn new() -> Ws {
        Ws { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, file: &str) -> std::path::PathBuf {
        self.dir.path().join(file)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_groupoid"))
            .current_dir(self.dir.path())
            .env("GROUPOID_WS", self.path("groupoids.json"))
            .args(args)
            .output()
            .unwrap()
    }

    fn ok(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        serde_json::from_str(&self.ok(&full)).unwrap()
    }
}

fn code(out: &Output) -> Option<i32> {
    out.status.code()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_modular_summary() {
    let ws = Ws::new();
    let s = ws.json(&["build", "modular", "--n", "4", "--a", "3", "--name", "m43"]);
    assert_eq!(s["arrows"], 16);
    assert_eq!(s["base"], 4);
    assert_eq!(s["composable_pairs"], 64);
    assert_eq!(s["transitive"], true);
    assert_eq!(s["commutative"], true);
}

#[test]
fn build_modular_rejects_non_involutive_parameter() {
    let ws = Ws::new();
    let out = ws.run(&["build", "modular", "--n", "4", "--a", "2"]);
    assert_eq!(code(&out), Some(2));
    assert!(stderr(&out).contains("BadTypeParameter: a^2 = 0 mod 4"), "{}", stderr(&out));
    assert!(!ws.path("groupoids.json").exists());
}

#[test]
fn build_tgg_and_validate_both() {
    let ws = Ws::new();
    let s = ws.json(&["build", "tgg", "--A", "Z2", "--B", "Z3", "--name", "t"]);
    assert_eq!(s["arrows"], 18);
    let text = ws.ok(&["validate", "t", "--definition", "both"]);
    assert!(text.contains("== definition 24: pass"));
    assert!(text.contains("== definition 23: pass"));
    assert!(text.contains("equivalent: yes"));
}

#[test]
fn validate_single_definition() {
    let ws = Ws::new();
    ws.ok(&["build", "modular", "--n", "4", "--a", "3", "--name", "m43"]);
    let r = ws.json(&["validate", "m43", "--definition", "24"]);
    assert_eq!(r["clean"], true);
    assert_eq!(r["reports"].as_array().unwrap().len(), 1);
    assert!(r["equivalent"].is_null());
}

#[test]
fn validate_broken_file_lists_witnesses() {
    let ws = Ws::new();
    ws.ok(&["build", "modular", "--n", "4", "--a", "3", "--name", "m43"]);
    let mut v: Value = serde_json::from_str(&ws.ok(&["show", "m43"])).unwrap();
    let row = v["arrow_group"]["table"][1].as_array_mut().unwrap();
    row.swap(0, 1);
    let broken = ws.path("broken.json");
    std::fs::write(&broken, v.to_string()).unwrap();

    let out = ws.run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code(&out), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL (i) arrow group: identity"));
    assert!(text.contains("witnesses (x):"));
}

#[test]
fn validate_unknown_name() {
    let ws = Ws::new();
    let out = ws.run(&["validate", "nothing"]);
    assert_eq!(code(&out), Some(2));
    assert!(stderr(&out).starts_with("UnknownName"));
}

#[test]
fn analyze_isotropy_and_anchor() {
    let ws = Ws::new();
    ws.ok(&["build", "tgg", "--A", "Z2", "--B", "Z3", "--name", "t"]);
    ws.ok(&["build", "modular", "--n", "4", "--a", "3", "--name", "m43"]);
    ws.ok(&["build", "pair", "--n", "5"]);

    let iso = ws.json(&["analyze", "t", "isotropy", "--at", "0"]);
    assert_eq!(iso["order"], 2);
    assert_eq!(iso["table"], serde_json::json!([[0, 1], [1, 0]]));
    let text = ws.ok(&["analyze", "t", "isotropy", "--at", "0"]);
    assert!(text.contains("cayley table"));

    assert!(ws.ok(&["analyze", "m43", "anchor"]).contains("surjective: true"));

    let p = ws.json(&["analyze", "pair5", "isotropy", "--at", "2"]);
    assert_eq!(p["trivial"], true);

    let out = ws.run(&["analyze", "pair5", "isotropy", "--at", "9"]);
    assert_eq!(code(&out), Some(2));
    assert!(stderr(&out).starts_with("BadBaseId"), "{}", stderr(&out));
}

#[test]
fn analyze_fibers_and_bundle() {
    let ws = Ws::new();
    ws.ok(&["build", "null", "--group", "Z3"]);
    let f = ws.json(&["analyze", "nullZ3", "fibers", "--at", "1"]);
    assert_eq!(f["fibers"][0]["alpha"], serde_json::json!([1]));
    let b = ws.json(&["analyze", "nullZ3", "bundle"]);
    assert_eq!(b["arrows"], 3);
    assert_eq!(b["valid"], true);
}

#[test]
fn trivialize_outcomes() {
    let ws = Ws::new();
    ws.ok(&["build", "tgg", "--A", "Z2", "--B", "Z3", "--name", "t"]);
    ws.ok(&["build", "null", "--group", "Z2"]);
    ws.ok(&["build", "modular", "--n", "6", "--a", "1"]);

    let out = ws.path("t.json");
    let r = ws.json(&["trivialize", "t", "--out", out.to_str().unwrap()]);
    assert_eq!(r["source_arrows"], 18);
    assert_eq!(r["bijective"], true);
    let first = std::fs::read(&out).unwrap();
    ws.ok(&["trivialize", "t", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), first, "certificate is deterministic");

    let nt = ws.run(&["trivialize", "nullZ2"]);
    assert_eq!(code(&nt), Some(3));
    assert!(stderr(&nt).starts_with("NotTransitive"));

    ws.ok(&["trivialize", "m61", "--budget", "10"]);
    assert!(Path::new(&ws.path("m61.trivialization.json")).exists());
}

#[test]
fn trivialize_hypothesis_and_budget_exit_codes() {
    let ws = Ws::new();
    ws.ok(&["build", "group-pair", "--group", "Z4", "--name", "p4"]);
    ws.ok(&["build", "epi", "--source", "Z4", "--target", "Z2", "--map", "0,1,0,1", "--name", "e"]);
    let out = ws.run(&["trivialize", "e"]);
    // G_pi over a non-trivial target is never transitive
    assert_eq!(code(&out), Some(3));
    let out = ws.run(&["trivialize", "p4", "--budget", "0"]);
    assert_eq!(code(&out), Some(4));
    assert!(stderr(&out).starts_with("SearchBudgetExceeded"));
}

#[test]
fn product_stores_projections() {
    let ws = Ws::new();
    ws.ok(&["build", "group-pair", "--group", "Z2", "--name", "a"]);
    ws.ok(&["build", "single-unit", "--group", "Z3", "--name", "b"]);
    let s = ws.json(&["build", "product", "--left", "a", "--right", "b"]);
    assert_eq!(s["arrows"], 12);
    let list = ws.ok(&["list"]);
    assert!(list.contains("axb.pr1\tmorphism"));
    assert!(list.contains("axb.pr2\tmorphism"));
    assert_eq!(ws.json(&["validate", "axb.pr1"])["clean"], true);
}

#[test]
fn workspace_round_trip_and_import() {
    let ws = Ws::new();
    ws.ok(&["build", "modular", "--n", "8", "--a", "5", "--name", "m"]);
    let shown = ws.ok(&["show", "m"]);
    let file = ws.path("m.json");
    std::fs::write(&file, &shown).unwrap();
    ws.ok(&["import", "m2", file.to_str().unwrap()]);
    let again = ws.ok(&["show", "m2"]);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("construction");
        v
    };
    assert_eq!(strip(&shown), strip(&again));
}

#[test]
fn corrupted_workspace_is_rejected_on_load() {
    let ws = Ws::new();
    ws.ok(&["build", "modular", "--n", "4", "--a", "3", "--name", "m43"]);
    let path = ws.path("groupoids.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["entries"]["m43"]["mul"][0] = Value::from(5);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = ws.run(&["list"]);
    assert_ne!(code(&out), Some(0));
}

#[test]
fn group_literals() {
    let ws = Ws::new();
    let s = ws.json(&["build", "null", "--group", "Z2xZ2xZ3"]);
    assert_eq!(s["arrows"], 12);
    let out = ws.run(&["build", "null", "--group", "S3"]);
    assert_eq!(code(&out), Some(2));
}

#[test]
fn family_sweep_command() {
    let ws = Ws::new();
    let text = ws.ok(&["verify-paper", "--max-n", "8", "--max-order", "5"]);
    assert!(text.contains("transitive iff pi injective"));
    assert!(text.contains(", 0 with failures"));

    ws.ok(&["verify-paper", "--max-n", "1", "--max-order", "1"]);

    let out = ws.run(&["verify-paper", "--max-n", "3", "--max-order", "2", "--inject-mutant"]);
    assert_eq!(code(&out), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mutant of"));
    assert!(text.contains("failure: def24"));
}

#[test]
fn json_errors_carry_exit_code() {
    let ws = Ws::new();
    let out = ws.run(&["--format", "json", "build", "modular", "--n", "4", "--a", "2"]);
    assert_eq!(code(&out), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "BadTypeParameter");
    assert_eq!(v["exit_code"], 2);
}

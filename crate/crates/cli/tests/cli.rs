use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use terrace_core::groups::parse_group_spec;
use terrace_core::props;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

struct Env {
    dir: TempDir,
}

impl Env {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn cmd(&self, args: &[&str]) -> Command {
        let mut c = Command::new(env!("CARGO_BIN_EXE_terrace"));
        c.args(args).arg("--run-dir").arg(self.path("runs")).env_remove("TERRACE_CONFIG").current_dir(self.dir.path());
        c
    }

    fn run(&self, args: &[&str]) -> Output {
        self.cmd(args).output().unwrap()
    }

    fn json(&self, args: &[&str]) -> (i32, Value) {
        let out = self.run(args);
        let text = String::from_utf8(out.stdout).unwrap();
        let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
        (out.status.code().unwrap(), v)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn saved_records(&self) -> Vec<PathBuf> {
        let mut v: Vec<PathBuf> = fs::read_dir(self.path("runs"))
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        v.sort();
        v
    }
}

fn arrangement(v: &Value) -> Vec<usize> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn climb_found_verifies() {
    let env = Env::new();
    for (group, seed) in [("Q12", "1"), ("D14", "7")] {
        let (code, v) = env.json(&["climb", "--group", group, "--mode", "directed", "--seed", seed]);
        assert_eq!(code, 0, "{group}");
        assert_eq!(v["result"]["result"]["outcome"], "found");
        let g = parse_group_spec(group).unwrap();
        assert!(props::is_directed_terrace(&g, &arrangement(&v["result"]["result"]["arrangement"])));
        assert_eq!(v["result"]["result"]["seed"], seed.parse::<u64>().unwrap());
    }
}

#[test]
fn climb_without_terrace_is_exhausted() {
    let env = Env::new();
    let (code, v) = env.json(&["climb", "--group", "E8", "--mode", "terrace", "--max-steps", "2000"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["result"]["outcome"], "exhausted");
}

#[test]
fn enumerate_counts() {
    let env = Env::new();
    for (group, mode, essential) in [("Z9", "terrace", 234), ("Z11", "directed", 0), ("D10", "directed", 16)] {
        let out = env.run(&["enumerate", "--group", group, "--mode", mode, "--essential", "--count-only"]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert_eq!(last["essential"], essential, "{group} {mode}");
        assert_eq!(last["group"], group);
        assert_eq!(last["mode"], mode);
        assert!(last["raw"].is_u64() && last["seconds"].is_number());
    }
}

#[test]
fn enumerate_streams_witnesses() {
    let env = Env::new();
    let out = env.run(&["enumerate", "--group", "Z7", "--mode", "narcissistic"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (last, witnesses) = lines.split_last().unwrap();
    assert_eq!(last["raw"], witnesses.len());
    let g = parse_group_spec("Z7").unwrap();
    for w in witnesses {
        assert!(props::is_narcissistic(&g, &arrangement(&w["elements"])).unwrap());
    }
}

#[test]
fn enumerate_first_and_nonexistence() {
    let env = Env::new();
    let (code, v) = env.json(&["enumerate", "--group", "A4", "--mode", "t2", "--first"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["outcome"], "found");
    let (code, v) = env.json(&["enumerate", "--group", "D8", "--mode", "t2", "--first"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["outcome"], "none");
    let (code, v) = env.json(&["enumerate", "--group", "Z13", "--mode", "directed", "--first", "--max-nodes", "50"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["outcome"], "budget-exceeded");
}

#[test]
fn verify_published_witnesses() {
    let env = Env::new();
    let cases = [
        ("g21_t2.json", "t2"),
        ("a4_t2.json", "t2"),
        ("g27_narcissistic.json", "narcissistic"),
        ("g27_directed_hh.json", "directed-half-and-half"),
    ];
    for (file, prop) in cases {
        let f = fixture(file);
        let (code, v) = env.json(&["verify", "--terrace", f.to_str().unwrap(), "--property", prop]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["result"]["passed"], true);
    }
    let w = env.write("w10.json", r#"{"group":"Z10","elements":[0,1,9,2,8,3,7,4,6,5]}"#);
    let (code, _) = env.json(&["verify", "--terrace", w.to_str().unwrap(), "--property", "directed"]);
    assert_eq!(code, 0);
    let (code, v) = env.json(&["verify", "--terrace", w.to_str().unwrap(), "--property", "t2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["checks"][0]["holds"], false);
}

#[test]
fn verify_input_errors() {
    let env = Env::new();
    let bad = env.write("bad.json", r#"{"group":"Z5","elements":[0,1,1,2,3]}"#);
    assert_eq!(env.run(&["verify", "--terrace", bad.to_str().unwrap()]).status.code(), Some(2));
    let junk = env.write("junk.json", "not json");
    assert_eq!(env.run(&["verify", "--terrace", junk.to_str().unwrap()]).status.code(), Some(2));
    let w = fixture("g21_t2.json");
    let out = env.run(&["verify", "--group", "Z21", "--terrace", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(env.run(&["group", "Q7"]).status.code(), Some(2));
    assert_eq!(env.run(&["climb"]).status.code(), Some(2));
}

#[test]
fn square_roman_two_and_formats() {
    let env = Env::new();
    let f = fixture("g21_t2.json");
    let (code, v) = env.json(&[
        "square",
        "--group",
        "SD(7,3,4)",
        "--terrace",
        f.to_str().unwrap(),
        "--check",
        "roman:2",
        "--out",
        "csv",
        "--output",
        "g21.csv",
    ]);
    assert_eq!(code, 0);
    assert!(v["result"]["certificate"]["roman_k_max"].as_u64().unwrap() >= 2);
    let csv = fs::read_to_string(env.path("g21.csv")).unwrap();
    assert_eq!(csv.lines().count(), 21);
    assert!(csv.ends_with('\n') && !csv.contains(",\n") && !csv.contains('\r'));

    let out = env.run(&["square", "--terrace", f.to_str().unwrap(), "--check", "roman:3", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), csv);

    let back = env.run(&["square", "--square", "g21.csv", "--check", "row-complete"]);
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn square_rejects_non_latin() {
    let env = Env::new();
    env.write("bad.csv", "0,1,2\n1,2,0\n1,0,2\n");
    assert_eq!(env.run(&["square", "--square", "bad.csv"]).status.code(), Some(2));
    env.write("ragged.csv", "0,1\n1\n");
    assert_eq!(env.run(&["square", "--square", "ragged.csv"]).status.code(), Some(2));
}

#[test]
fn orbit_finds_extendable_in_z12() {
    let env = Env::new();
    let w = env.write("w.json", r#"{"group":"Z12","elements":[0,1,11,2,10,3,9,4,8,5,7,6]}"#);
    let (code, v) = env.json(&[
        "orbit",
        "--group",
        "Z12",
        "--terrace",
        w.to_str().unwrap(),
        "--find",
        "extendable",
        "--limit",
        "100000",
        "--save-terrace",
        "ext.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["found"], true);
    let (code, _) = env.json(&["verify", "--terrace", "ext.json", "--property", "terrace", "--property", "extendable"]);
    assert_eq!(code, 0);

    let (code, v) = env.json(&["orbit", "--terrace", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!([1, 2, 3, 4, 6].contains(&v["result"]["size"].as_u64().unwrap()));
}

#[test]
fn records_replay_byte_identically() {
    let env = Env::new();
    let args = ["climb", "--group", "Q16", "--seed", "3", "--seeds", "2", "--trace"];
    let a = env.run(&args);
    let b = env.run(&args);
    assert_eq!(a.stdout, b.stdout);
    let saved = env.saved_records();
    assert_eq!(saved.len(), 2);
    assert_eq!(fs::read(&saved[0]).unwrap(), fs::read(&saved[1]).unwrap());
    assert_eq!(fs::read(&saved[0]).unwrap(), a.stdout);
    let index = fs::read_to_string(env.path("runs/index.jsonl")).unwrap();
    let lines: Vec<Value> = index.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l["seconds"].is_number() && l["exit_code"] == 0));
}

#[test]
fn sequential_matches_parallel() {
    let env = Env::new();
    let args = ["climb", "--group", "D16", "--seeds", "4", "--no-save"];
    let par = env.run(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let seq = env.run(&seq_args);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["argv"] = Value::Null;
        v
    };
    assert_eq!(strip(&par), strip(&seq));
}

#[test]
fn config_precedence() {
    let env = Env::new();
    let cfg = env.write("run.cfg", "# test config\nseed = 5\nmax_steps = 1234\n");
    let (_, v) = env.json(&["--config", cfg.to_str().unwrap(), "climb", "--group", "D10", "--seed", "9", "--no-save"]);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["max_steps"], 1234);
    assert_eq!(v["config"]["max_restarts"], 0);

    let out = env.cmd(&["climb", "--group", "D10", "--no-save"]).env("TERRACE_CONFIG", &cfg).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 5);

    let bad = env.write("bad.cfg", "colour = red\n");
    let out = env.run(&["--config", bad.to_str().unwrap(), "group", "Z5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_info_and_table() {
    let env = Env::new();
    let (code, v) = env.json(&["group", "Q12", "--no-save"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 12);
    assert_eq!(v["result"]["involutions"], 1);
    let (_, v) = env.json(&["group", "--list", "--no-save"]);
    assert!(v["result"]["catalogue"].as_array().unwrap().iter().any(|n| n == "G21_1"));
    let (_, v) = env.json(&["table", "D6", "Q8", "--no-save"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!((rows[0]["t"].as_u64(), rows[0]["d"].as_u64()), (Some(2), Some(0)));
    assert_eq!(rows[1]["d"], 0);
}

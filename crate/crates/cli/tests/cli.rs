use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qlattice::arith::{parse_rational, rat};
use qlattice::codec::{certificate_from_json, subspace_from_json};
use qlattice::lattice::certificate_valid;
use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Self {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("e0.json", r#"{"entries": [[0, "1", "0"]]}"#);
        f.write("e1.json", r#"{"entries": [[1, "1", "0"]]}"#);
        f.write("span_e1.json", r#"{"generators": [{"entries": [[1, "1", "0"]]}]}"#);
        f.write(
            "plane.json",
            r#"{"generators": [{"entries": [[0, "1", "0"], [1, "1", "0"]]}, {"entries": [[2, "0", "1"]]}]}"#,
        );
        f.write("x35.json", r#"{"entries": [[0, "3/5", "0"], [1, "4/5", "0"]]}"#);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_with_config(args, None)
    }

    fn run_with_config(&self, args: &[&str], config: Option<&Path>) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qlattice"));
        cmd.current_dir(self.dir.path()).args(args);
        match config {
            Some(p) => cmd.env("QLATTICE_CONFIG", p),
            None => cmd.env_remove("QLATTICE_CONFIG"),
        };
        cmd.output().unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn dist_of_e0_to_span_e1() {
    let f = Fixture::new();
    let out = json_lines(&f.run(&["dist", "--vec", "e0.json", "--subspace", "span_e1.json"]));
    assert_eq!(out, vec![serde_json::json!({"distance_sq": "1"})]);
    let out = f.run(&["--output", "text", "dist", "--vec", "x35.json", "--subspace", "span_e1.json"]);
    assert_eq!(stdout(&out), "9/25\n");
}

#[test]
fn encoded_certificates_are_valid() {
    let f = Fixture::new();
    for (file, n) in [("span_e1.json", 3), ("plane.json", 25)] {
        let l = subspace_from_json(&serde_json::from_str(&std::fs::read_to_string(f.path(file)).unwrap()).unwrap())
            .unwrap();
        let lines = json_lines(&f.run(&["encode", "--subspace", file, "--max-certs", &n.to_string()]));
        assert_eq!(lines.len(), n);
        for line in lines {
            let cert = certificate_from_json(&line).unwrap();
            assert!(certificate_valid(&l, &cert.c, &cert.r).unwrap());
        }
    }
}

#[test]
fn encode_stops_at_round_cap() {
    let f = Fixture::new();
    f.write(
        "line0.json",
        r#"{"generators": [{"entries": [[0, "1", "0"]]}]}"#,
    );
    // at most two certificates per round
    let out = f.run(&["encode", "--subspace", "line0.json", "--max-certs", "1000000", "--max-rounds", "30"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() <= 60);
}

#[test]
fn schroeder_demo_reports_one_half() {
    let f = Fixture::new();
    let lines = json_lines(&f.run(&["demo", "schroeder", "--max-n", "5"]));
    assert_eq!(lines.len(), 5);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["n"], i + 1);
        assert_eq!(l["value"], "1/2");
    }
    let lines = json_lines(&f.run(&["demo", "schroeder", "--max-n", "3", "--summary"]));
    assert_eq!(lines.last().unwrap()["limit_value"], "0");
}

#[test]
fn join_and_biorth_demos() {
    let f = Fixture::new();
    let lines = json_lines(&f.run(&["demo", "join", "--max-n", "12", "--k", "10", "--summary"]));
    assert_eq!(lines.len(), 14);
    for l in &lines[..10] {
        assert_eq!(l["meet_is_zero"], true);
    }
    assert_eq!(lines[10]["meet_is_p"], true);
    assert_eq!(lines[13]["zero_below_k"], true);
    let lines = json_lines(&f.run(&["demo", "biorth", "--max-n", "20", "--vec", "x35.json"]));
    assert_eq!(lines.len(), 20);
    assert!(lines.iter().all(|l| l["biorth_is_line"] == true));
}

#[test]
fn not_member_verdicts() {
    let f = Fixture::new();
    let out = json_lines(&f.run(&["notmember", "--vec", "e0.json", "--subspace", "span_e1.json", "--fuel", "5"]));
    assert_eq!(out[0]["verdict"], "confirmed");
    let out = json_lines(&f.run(&["notmember", "--vec", "e1.json", "--subspace", "span_e1.json", "--fuel", "40"]));
    assert_eq!(out[0]["verdict"], "unknown");
}

#[test]
fn state_evaluation() {
    let f = Fixture::new();
    f.write(
        "mixed.json",
        r#"{"terms": [["1/2", {"entries": [[0, "1", "0"]]}], ["1/2", {"entries": [[1, "1", "0"]]}]], "tail": {"type": "finite"}}"#,
    );
    let out = json_lines(&f.run(&["state", "--state", "mixed.json", "--subspace", "span_e1.json"]));
    assert_eq!(out[0]["lo"], "1/2");
    assert_eq!(out[0]["exact"], true);
    f.write(
        "geo.json",
        r#"{"terms": [["1/2", {"entries": [[0, "1", "0"]]}]], "tail": {"type": "geometric", "ratio": "1/2"}}"#,
    );
    let out = json_lines(&f.run(&["state", "--state", "geo.json", "--subspace", "span_e1.json", "--prefix", "4"]));
    assert_eq!(out[0]["lo"], "1/4");
    assert_eq!(out[0]["hi"], "5/16");
}

#[test]
fn spectral_valuation_bounds() {
    let f = Fixture::new();
    f.write("op.json", r#"{"kind": "diagonal", "entries": ["1/2", "-1/2"]}"#);
    f.write("x.json", r#"{"entries": [[0, "3/5", "0"], [1, "4/5", "0"]]}"#);
    let lines = json_lines(&f.run(&[
        "specval", "--op", "op.json", "--vec", "x.json", "--set", "[0,1]", "--upper", "--fuel", "14", "--q", "2/5",
    ]));
    assert_eq!(lines.len(), 15);
    let bounds: Vec<_> = lines[..14]
        .iter()
        .map(|l| parse_rational(l["bound"].as_str().unwrap()).unwrap())
        .collect();
    assert!(bounds.windows(2).all(|w| w[0] >= w[1]));
    let last = bounds.last().unwrap();
    assert!(last >= &rat(9, 25) && last - rat(9, 25) <= rat(1, 1024));
    assert_eq!(lines[14]["verdict"], "confirmed");
    let out = f.run(&["specval", "--op", "op.json", "--vec", "x.json", "--set", "[0,1]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sot_reports() {
    let f = Fixture::new();
    f.write(
        "probes.json",
        r#"[{"entries": [[0, "1", "0"]]}, {"entries": [[0, "1", "0"], [6, "2", "1"]]}]"#,
    );
    let out = json_lines(&f.run(&["sotcheck", "--seq", "left-shift", "--probes", "probes.json", "--max-n", "20"]));
    assert_eq!(out[0]["n0"], 7);
    assert_eq!(out[0]["verdict"], true);
    let out = json_lines(&f.run(&["sotcheck", "--seq", "right-shift", "--probes", "e0.json", "--eps", "1/10"]));
    assert_eq!(out[0]["verdict"], false);
    let out = json_lines(&f.run(&["sotcheck", "--seq", "projections", "--probes", "probes.json", "--max-n", "20"]));
    assert_eq!(out[0]["n0"], 7);
}

#[test]
fn exit_codes() {
    let f = Fixture::new();
    assert_eq!(f.run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(f.run(&[]).status.code(), Some(1));
    assert_eq!(f.run(&["--help"]).status.code(), Some(0));
    assert_eq!(f.run(&["dist", "--vec", "missing.json", "--subspace", "span_e1.json"]).status.code(), Some(3));
    f.write("bad.json", r#"{"entries": [[0, "1/0", "0"]]}"#);
    assert_eq!(f.run(&["dist", "--vec", "bad.json", "--subspace", "span_e1.json"]).status.code(), Some(3));
    f.write("junk.json", "{not json");
    assert_eq!(f.run(&["dist", "--vec", "junk.json", "--subspace", "span_e1.json"]).status.code(), Some(3));
    f.write("two.json", r#"{"entries": [[0, "2", "0"]]}"#);
    f.write("op.json", r#"{"kind": "diagonal", "entries": ["1/2"]}"#);
    let out = f.run(&["specval", "--op", "op.json", "--vec", "two.json", "--set", "[0,1]", "--upper"]);
    assert_eq!(out.status.code(), Some(2));
    f.write("big.json", r#"{"kind": "diagonal", "entries": ["3/2"]}"#);
    let out = f.run(&["specval", "--op", "big.json", "--vec", "e0.json", "--set", "[0,1]", "--upper"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(f.run(&["demo", "schroeder", "--max-n", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_sets_defaults() {
    let f = Fixture::new();
    let cfg = f.write("cfg.toml", "output_format = \"text\"\ndefault_fuel = 3\n");
    let out = f.run_with_config(&["dist", "--vec", "e0.json", "--subspace", "span_e1.json"], Some(&cfg));
    assert_eq!(stdout(&out), "1\n");
    let out = f.run_with_config(
        &["--output", "json", "notmember", "--vec", "e1.json", "--subspace", "span_e1.json"],
        Some(&cfg),
    );
    assert_eq!(json_lines(&out)[0]["fuel"], 3);
    let bad = f.write("bad.toml", "default_fuel = \"many\"\n");
    let out = f.run_with_config(&["demo", "schroeder", "--max-n", "1"], Some(&bad));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_byte_deterministic() {
    let f = Fixture::new();
    let runs = [
        vec!["encode", "--subspace", "plane.json", "--max-certs", "40"],
        vec!["demo", "join", "--max-n", "8", "--k", "6", "--summary"],
        vec!["--output", "text", "demo", "biorth", "--max-n", "6"],
    ];
    for args in runs {
        let a = f.run(&args);
        let b = f.run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

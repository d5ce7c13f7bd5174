use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dpdna::corpus;
use serde_json::Value;
use tempfile::TempDir;

fn dpdna(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpdna"))
        .current_dir(dir)
        .env_remove("DPDNA_CONFIG")
        .args(args)
        .output()
        .expect("run dpdna")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

struct Fixture {
    dir: TempDir,
    data: Vec<u8>,
}

impl Fixture {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let data = corpus::english_text(6_000, 17);
        fs::write(dir.path().join("in.txt"), &data).unwrap();
        Fixture { dir, data }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        dpdna(self.dir.path(), args)
    }

    fn encode(&self) {
        let o = self.run(&["encode", "in.txt"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn encode_then_decode_is_identity() {
    let f = Fixture::new();
    let o = f.run(&["encode", "in.txt"]);
    assert_eq!(code(&o), 0);
    let summary = String::from_utf8_lossy(&o.stdout);
    assert!(summary.contains("payload") && summary.contains("overall"), "{summary}");
    assert!(f.path("in.txt.fasta").exists() && f.path("in.txt.manifest.json").exists());

    let o = f.run(&["decode", "in.txt.fasta", "in.txt.manifest.json", "-o", "out.txt"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(f.path("out.txt")).unwrap(), f.data);
    // no temp files left behind
    let leftovers: Vec<_> = fs::read_dir(f.dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().contains(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn encoding_is_deterministic() {
    let f = Fixture::new();
    f.run(&["encode", "in.txt", "-o", "a.fasta", "-m", "a.json"]);
    f.run(&["encode", "in.txt", "-o", "b.fasta", "-m", "b.json"]);
    assert_eq!(fs::read(f.path("a.fasta")).unwrap(), fs::read(f.path("b.fasta")).unwrap());
    assert_eq!(fs::read(f.path("a.json")).unwrap(), fs::read(f.path("b.json")).unwrap());
}

#[test]
fn homo_three_is_at_least_as_dense_as_homo_two() {
    let f = Fixture::new();
    let density = |homo: &str| {
        let o = f.run(&["encode", "in.txt", "--homo", homo, "--format", "json", "-o", "x.fasta", "-m", "x.json"]);
        assert_eq!(code(&o), 0);
        stdout_json(&o)["payload_density"].as_f64().unwrap()
    };
    assert!(density("3") >= density("2"));
}

#[test]
fn dpac_only_mask_has_no_two_bit_strands() {
    let f = Fixture::new();
    let o = f.run(&["encode", "in.txt", "--scheme-mask", "dpac-only", "--format", "fasta"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with('>')).collect();
    assert!(!headers.is_empty());
    assert!(headers.iter().all(|h| h.split('|').nth(1) != Some("0000")));
}

#[test]
fn audit_writes_one_line_per_strand() {
    let f = Fixture::new();
    let o = f.run(&["encode", "in.txt", "--audit", "audit.jsonl", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let strands = stdout_json(&o)["strands"].as_u64().unwrap();
    let audit = fs::read_to_string(f.path("audit.jsonl")).unwrap();
    assert_eq!(audit.lines().count() as u64, strands);
    for line in audit.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["choice"]["scheme"].is_string());
    }
}

#[test]
fn config_file_env_and_primer_file() {
    let f = Fixture::new();
    fs::write(f.path("cfg.json"), r#"{"strand_cap_nt": 300, "homo_max_run": 2}"#).unwrap();
    let o = f.run(&["encode", "in.txt", "--config", "cfg.json"]);
    assert_eq!(code(&o), 0);
    let m: Value = serde_json::from_slice(&fs::read(f.path("in.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["strand_cap_nt"], 300);
    assert_eq!(m["segment_bits"], 336);

    let o = Command::new(env!("CARGO_BIN_EXE_dpdna"))
        .current_dir(f.dir.path())
        .env("DPDNA_CONFIG", "cfg.json")
        .args(["encode", "in.txt", "--cap", "200"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let m: Value = serde_json::from_slice(&fs::read(f.path("in.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["strand_cap_nt"], 200);
    assert_eq!(m["config"]["homo_max_run"], 2);

    fs::write(f.path("primers.txt"), "ACACGTGTACAGTCAGTCAG\nTGCATGCAGTCATGACTGAC\n").unwrap();
    let o = f.run(&["encode", "in.txt", "--primers", "primers.txt"]);
    assert_eq!(code(&o), 0);
    let fasta = fs::read_to_string(f.path("in.txt.fasta")).unwrap();
    assert!(fasta.lines().nth(1).unwrap().starts_with("ACACGTGTACAGTCAGTCAG"));
    let o = f.run(&["decode", "in.txt.fasta", "in.txt.manifest.json", "-o", "out.txt"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(f.path("out.txt")).unwrap(), f.data);
}

#[test]
fn check_reports_feasibility() {
    let f = Fixture::new();
    f.encode();
    let o = f.run(&["check", "in.txt.fasta", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["homopolymer_violations"], 0);
    assert!((r["mean_gc"].as_f64().unwrap() - 0.5).abs() <= 0.02);

    fs::write(f.path("bad.fa"), format!(">x\n{}\n", "A".repeat(40))).unwrap();
    let o = f.run(&["check", "bad.fa", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["average_score"].as_f64().unwrap() >= 1.0);

    let o = f.run(&["check", "in.txt.fasta"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("Hairpin ratio"));
}

#[test]
fn bench_sweep_and_analyze() {
    let f = Fixture::new();
    let o = f.run(&["bench", "in.txt", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let bench = stdout_json(&o);
    let rows = bench["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let homo3 = rows.iter().find(|r| r["scheme"] == "dp-dna-homo3").unwrap();

    let o = f.run(&["sweep", "in.txt", "--caps", "150", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let sweep = stdout_json(&o);
    assert_eq!(sweep[0]["report"]["overall_density"], homo3["overall_density"]);

    let o = f.run(&["sweep", "in.txt", "--caps", "100,150,300,700"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 5);

    let o = f.run(&["analyze", "in.txt", "--tables"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("[0.4, 1]") && text.contains("11-code"));
}

#[test]
fn exit_code_two_on_io_failures() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["encode", "missing.bin"])), 2);
    assert_eq!(code(&f.run(&["encode", "in.txt", "-o", "no/such/dir/x.fasta"])), 2);
    assert_eq!(code(&f.run(&["check", "missing.fa"])), 2);
    assert_eq!(code(&f.run(&["bench", "missing.bin"])), 2);
    assert_eq!(code(&f.run(&["encode", "in.txt", "--primers", "missing.txt"])), 2);
    f.encode();
    assert_eq!(code(&f.run(&["decode", "in.txt.fasta", "missing.json", "-o", "o"])), 2);
    assert_eq!(code(&f.run(&["decode", "missing.fasta", "in.txt.manifest.json", "-o", "o"])), 2);
}

#[test]
fn exit_code_three_on_configuration_errors() {
    let f = Fixture::new();
    for args in [
        vec!["frobnicate"],
        vec!["encode"],
        vec!["encode", "in.txt", "--homo", "4"],
        vec!["encode", "in.txt", "--homo", "two"],
        vec!["encode", "in.txt", "--cap", "50"],
        vec!["encode", "in.txt", "--ecc-ratio", "1.5"],
        vec!["encode", "in.txt", "--index-bits", "7"],
        vec!["encode", "in.txt", "--scheme-mask", "2bit"],
        vec!["encode", "in.txt", "--scheme-mask", "xyz"],
        vec!["encode", "in.txt", "--format", "xml"],
        vec!["analyze", "in.txt", "--segment-bits", "7"],
    ] {
        let o = f.run(&args);
        assert_eq!(code(&o), 3, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    // rejected before the input is touched
    assert_eq!(code(&f.run(&["encode", "missing.bin", "--homo", "4"])), 3);

    fs::write(f.path("bad.json"), "{ not json").unwrap();
    assert_eq!(code(&f.run(&["encode", "in.txt", "--config", "bad.json"])), 3);
    fs::write(f.path("unknown.json"), r#"{"strand_cap": 10}"#).unwrap();
    assert_eq!(code(&f.run(&["encode", "in.txt", "--config", "unknown.json"])), 3);
    fs::write(f.path("one_primer.txt"), "ACGTACGT\n").unwrap();
    assert_eq!(code(&f.run(&["encode", "in.txt", "--primers", "one_primer.txt"])), 3);

    fs::write(f.path("empty.fa"), "").unwrap();
    assert_eq!(code(&f.run(&["check", "empty.fa"])), 3);

    // manifest of a different file
    f.encode();
    fs::write(f.path("other.txt"), corpus::english_text(6_000, 99)).unwrap();
    assert_eq!(code(&f.run(&["encode", "other.txt"])), 0);
    assert_eq!(code(&f.run(&["decode", "in.txt.fasta", "other.txt.manifest.json", "-o", "o"])), 3);
    fs::write(f.path("garbage.json"), "[1, 2, 3]").unwrap();
    assert_eq!(code(&f.run(&["decode", "in.txt.fasta", "garbage.json", "-o", "o"])), 3);

    assert_eq!(code(&f.run(&["--help"])), 0);
    assert_eq!(code(&f.run(&["--version"])), 0);
}

#[test]
fn exit_code_four_on_integrity_errors() {
    let f = Fixture::new();
    f.encode();
    let fasta = fs::read_to_string(f.path("in.txt.fasta")).unwrap();
    let mut lines: Vec<String> = fasta.lines().map(String::from).collect();

    // substitute one payload nucleotide of strand 5
    let mut seq: Vec<char> = lines[11].chars().collect();
    seq[45] = match seq[45] {
        'A' => 'C',
        'C' => 'G',
        'G' => 'T',
        _ => 'A',
    };
    let mut tampered = lines.clone();
    tampered[11] = seq.into_iter().collect();
    fs::write(f.path("tampered.fasta"), tampered.join("\n")).unwrap();
    let o = f.run(&["decode", "tampered.fasta", "in.txt.manifest.json", "-o", "o"]);
    assert_eq!(code(&o), 4);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("strand #5"), "{err}");
    assert!(!f.path("o").exists());

    // drop strand 2
    lines.drain(4..6);
    fs::write(f.path("short.fasta"), lines.join("\n")).unwrap();
    let o = f.run(&["decode", "short.fasta", "in.txt.manifest.json", "-o", "o"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[2]"));

    fs::write(f.path("junk.fasta"), ">0\nACGU\n").unwrap();
    assert_eq!(code(&f.run(&["decode", "junk.fasta", "in.txt.manifest.json", "-o", "o"])), 4);
}

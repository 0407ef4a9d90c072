use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn evoca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evoca")).args(args).env_remove("EVOCA_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_rule_250() {
    let o = evoca(&["simulate", "--rule", "250", "--n", "11", "--steps", "2", "--ic", "single-one"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "00000100000\n00001010000\n00010101000\n");
}

#[test]
fn simulate_trivial_rules() {
    let o = evoca(&["simulate", "--rule", "0", "--n", "5", "--steps", "3", "--ic", "all-zeros"]);
    assert_eq!(stdout(&o), "00000\n".repeat(4));
    let saturated = format!("r3:{}", "f".repeat(32));
    let o = evoca(&["simulate", "--rule", &saturated, "--n", "20", "--steps", "10", "--ic", "all-ones"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{}\n", "1".repeat(20)).repeat(11));
}

#[test]
fn simulate_ic_forms() {
    let o = evoca(&["simulate", "--rule", "204", "--n", "8", "--steps", "0", "--ic", "hex:a5"]);
    assert_eq!(stdout(&o), "10100101\n");
    let o = evoca(&["simulate", "--rule", "204", "--n", "5", "--steps", "0", "--at", "0"]);
    assert_eq!(stdout(&o), "10000\n");
    let o = evoca(&["simulate", "--rule", "204", "--n", "10", "--steps", "0", "--ic", "density:0.3", "--seed", "5"]);
    assert_eq!(stdout(&o).matches('1').count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["simulate", "--rule", "r1:zz", "--n", "5"],
        &["simulate", "--rule", "256", "--n", "5"],
        &["simulate", "--rule", "30", "--n", "5", "--ic", "density:2"],
        &["simulate", "--rule", "30", "--n", "5", "--ic", "hex:fff"],
        &["simulate", "--rule", "30", "--n", "5", "--at", "9"],
        &["evolve", "--n", "30"],
        &["evolve", "--algo", "sa"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(evoca(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn text_and_pbm_agree() {
    let dir = tempfile::tempdir().unwrap();
    let pbm = dir.path().join("h.pbm");
    let o = evoca(&["simulate", "--rule", "30", "--n", "21", "--steps", "9", "--render", pbm.to_str().unwrap()]);
    let rows: Vec<Vec<bool>> = stdout(&o).lines().map(|l| l.chars().map(|c| c == '1').collect()).collect();
    let bytes = fs::read(&pbm).unwrap();
    let header = b"P4\n21 10\n";
    assert_eq!(&bytes[..header.len()], header);
    let body = &bytes[header.len()..];
    assert_eq!(body.len(), 10 * 3);
    for (t, row) in rows.iter().enumerate() {
        for (x, &cell) in row.iter().enumerate() {
            let bit = body[t * 3 + x / 8] >> (7 - x % 8) & 1;
            assert_eq!(bit == 1, cell, "row {t} cell {x}");
        }
    }
}

#[test]
fn render_formats() {
    let dir = tempfile::tempdir().unwrap();
    let pbm = dir.path().join("a.pbm");
    let o = evoca(&["render", "--rule", "250", "--n", "11", "--steps", "0", "--out", pbm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&pbm).unwrap(), b"P4\n11 1\n\x04\x00");

    let png = dir.path().join("a.png");
    let o = evoca(&["render", "--rule", "250", "--n", "11", "--steps", "5", "--scale", "3", "--out", png.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = fs::read(&png).unwrap();
    assert_eq!(&bytes[..8], b"\x89PNG\r\n\x1a\n");
    assert_eq!(u32::from_be_bytes(bytes[16..20].try_into().unwrap()), 33);
    assert_eq!(u32::from_be_bytes(bytes[20..24].try_into().unwrap()), 18);

    let o = evoca(&["render", "--rule", "250", "--n", "11", "--out", "/nonexistent/dir/x.pbm"]);
    assert_eq!(o.status.code(), Some(1));
}

fn evolve_into(dir: &Path) -> Output {
    evoca(&[
        "evolve", "--task", "density", "--algo", "ga", "--epochs", "5", "--trials", "2", "--seed", "7", "--n", "29",
        "--t", "30", "--batch", "20", "--population", "20", "--out", dir.to_str().unwrap(),
    ])
}

#[test]
fn evolve_writes_deterministic_artifacts() {
    let root = tempfile::tempdir().unwrap();
    let (a, b) = (root.path().join("a"), root.path().join("b"));
    let out = evolve_into(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("ga       density"));
    for f in ["summary.json", "trial_000.json", "trial_001.json", "trial_000.csv", "trial_001.csv"] {
        assert!(a.join(f).exists(), "{f}");
    }
    assert!(!a.join("trial_002.json").exists());
    assert_eq!(evolve_into(&b).status.code(), Some(0));
    for f in ["summary.json", "trial_000.json", "trial_001.json", "trial_000.csv", "trial_001.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn evolve_from_config_file() {
    let root = tempfile::tempdir().unwrap();
    let cfg = root.path().join("cfg.json");
    fs::write(&cfg, r#"{"width": 29, "steps": 30, "epochs": 2, "trials": 1, "batch": 10, "overrides": {"population": 10}}"#).unwrap();
    let out = root.path().join("out");
    let o = evoca(&["evolve", "--config", cfg.to_str().unwrap(), "--algo", "bpso", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = fs::read_to_string(out.join("summary.json")).unwrap();
    assert!(summary.contains(r#""algorithm": "bpso""#));
    fs::write(&cfg, r#"{"width": 29, "mystery": 1}"#).unwrap();
    assert_eq!(evoca(&["evolve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn report_merges_curves() {
    let root = tempfile::tempdir().unwrap();
    let exp = root.path().join("ga");
    assert_eq!(evolve_into(&exp).status.code(), Some(0));
    let csv = root.path().join("curves.csv");
    let o = evoca(&["report", root.path().to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "experiment,epoch,trial,best_fitness");
    assert_eq!(lines.len(), 1 + 2 * 5);
    assert!(lines[1].starts_with("ga,1,0,"));
    let table = stdout(&o);
    assert!(table.starts_with("ga density "), "{table}");
    assert!(table.contains('±'));

    let o = evoca(&["report", exp.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 11);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with(".,1,0,"));
}

#[test]
fn report_failures_exit_1() {
    let empty = tempfile::tempdir().unwrap();
    assert_eq!(evoca(&["report", empty.path().to_str().unwrap()]).status.code(), Some(1));

    let root = tempfile::tempdir().unwrap();
    assert_eq!(evolve_into(root.path()).status.code(), Some(0));
    fs::remove_file(root.path().join("trial_001.csv")).unwrap();
    let o = evoca(&["report", root.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trial_001.csv"));
}

//! End-to-end runs of the command-line tool.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use elastic_corners::io::{RunManifest, MANIFEST};

const BIN: &str = env!("CARGO_BIN_EXE_elastic-corners");

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(BIN).arg("--out").arg(out).args(args).env_remove("ELASTIC_CORNERS_OUTPUT").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn listed_files_match(run_dir: &Path) -> RunManifest {
    let m = RunManifest::read(&run_dir.join(MANIFEST)).unwrap();
    let mut on_disk: Vec<String> = fs::read_dir(run_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n != MANIFEST)
        .collect();
    on_disk.sort();
    let mut listed: Vec<String> = m.outputs.iter().map(|o| o.path.clone()).collect();
    listed.sort();
    assert_eq!(on_disk, listed);
    for o in &m.outputs {
        assert_eq!(fs::metadata(run_dir.join(&o.path)).unwrap().len(), o.bytes);
    }
    m
}

#[test]
fn induction_certificate_run() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["verify-induction", "--max-order", "12", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dir = tmp.path().join("verify-induction");
    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.join("induction.json")).unwrap()).unwrap();
    assert!(json.is_object());
    let m = listed_files_match(&dir);
    assert!(m.pass && !m.partial && m.exit_code == 0);
    assert_eq!(m.config_hash.len(), 64);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS"));
}

#[test]
fn algebra_run_accepts_exact_parameters() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["verify-algebra", "--lambda", "-9/10", "--mu", "1", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    listed_files_match(&tmp.path().join("verify-algebra"));
}

#[test]
fn malformed_configuration_exits_two_without_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("runs");
    let bad = [
        "mode = \"solve\"\nlambda = 1\nmu = -1\nrho0 = 1\nomega = 3\ncells = 24\n[geometry]\nkind = \"disk\"\nradius = 0.5\n",
        "mode = \"solve\"\nthis is not toml",
        "mode = \"itp-scan\"\nlambda = 1\nmu = 1\nrho0 = 2\nomega_range = [1, 2]\ncells = 16\ndirections = 32\n[geometry]\nkind = \"rectangle\"\nwidth = 1\nheight = 1\n",
    ];
    for (i, text) in bad.iter().enumerate() {
        let cfg = write(tmp.path(), &format!("bad{i}.toml"), text);
        let o = run(&out, &["run", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
        assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
    }
    assert!(!out.exists());
    let cfg = write(tmp.path(), "missing-order.toml", "mode = \"verify-induction\"\n");
    assert_eq!(run(&out, &["run", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(run(&out, &["run", "--config", "/nonexistent.toml"]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn mode_must_match_the_subcommand() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.toml", "mode = \"verify-induction\"\nmax_order = 4\n");
    let o = run(&tmp.path().join("runs"), &["solve", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&tmp.path().join("runs"), &["run", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solve_is_deterministic_and_fully_listed() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "lambda = 1.0\nmu = 1.0\nrho0 = 2.0\nomega = 3.0\ncells = 16\ndirections = 32\ntol = 1e-10\n\
                [geometry]\nkind = \"disk\"\nradius = 0.5\n[incident]\nkind = \"S\"\nangle = 0.7\n";
    let cfg = write(tmp.path(), "solve.toml", text);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for out in [&a, &b] {
        let o = run(out, &["solve", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["field.csv", "farfield.csv", "field.bin"] {
        assert_eq!(fs::read(a.join("solve").join(f)).unwrap(), fs::read(b.join("solve").join(f)).unwrap(), "{f}");
    }
    let m = listed_files_match(&a.join("solve"));
    assert_eq!(m.input_text.as_deref(), Some(text));
    assert_eq!(m.mode, "solve");
    // a second run in the same place reuses the cached field
    let o = run(&a, &["solve", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    listed_files_match(&a.join("solve"));
    let farfield = fs::read_to_string(a.join("solve/farfield.csv")).unwrap();
    assert_eq!(farfield.lines().count(), 33);
}

#[test]
fn output_root_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let o = Command::new(BIN)
        .args(["verify-induction", "--max-order", "5", "--samples", "2"])
        .env("ELASTIC_CORNERS_OUTPUT", tmp.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(tmp.path().join("verify-induction").join(MANIFEST).exists());
}

#[test]
fn under_resolved_solve_exits_two_with_a_partial_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "mode = \"solve\"\nlambda = 1\nmu = 1\nrho0 = 2\nomega = 40\ncells = 8\n\
                [geometry]\nkind = \"disk\"\nradius = 0.5\n";
    let cfg = write(tmp.path(), "s.toml", text);
    let o = run(tmp.path(), &["run", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let m = listed_files_match(&tmp.path().join("solve"));
    assert!(m.partial && !m.pass && m.error.is_some() && m.exit_code == 2);
}

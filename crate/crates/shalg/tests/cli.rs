use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn shalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn verify_exit_codes() {
    let ok = shalg(&["verify", "ainf", &path("dga.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("result: PASS"));
    let bad = shalg(&["verify", "ainf", &path("corrupted.json"), "--bound-n", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL A3"));
    let missing = shalg(&["verify", "ainf", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
}

#[test]
fn machine_output_is_json_and_deterministic() {
    let run = || {
        let o = shalg(&["verify", "sdr", &path("sdr_violating.json"), "--format", "machine"]);
        assert_eq!(o.status.code(), Some(1));
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["pass"], false);
    assert_eq!(a["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn move_writes_verifiable_outputs() {
    let out = std::env::temp_dir().join(format!("shalg-bin-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&out);
    let o = shalg(&[
        "move",
        "m1",
        "--structure",
        &path("dga.json"),
        "--sdr",
        &path("sdr_homology.json"),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = out.join("structure.json").display().to_string();
    assert_eq!(shalg(&["verify", "ainf", &s]).status.code(), Some(0));
    let m = out.join("morphism.json").display().to_string();
    assert_eq!(shalg(&["verify", "morphism", &m]).status.code(), Some(0));
    std::fs::remove_dir_all(&out).unwrap();
}

#[test]
fn operad_commands() {
    let d2 = shalg(&["operad", "d2", "ass-minimal", "--arity", "5"]);
    assert_eq!(d2.status.code(), Some(0));
    assert!(stdout(&d2).contains("∂∂mu5 = 0"));
    let riso = shalg(&["operad", "riso-extend", &path("sdr_violating.json")]);
    assert_eq!(riso.status.code(), Some(1));
    assert!(stdout(&riso).contains("fails first at f2"));
    assert_eq!(shalg(&["operad", "d2", "nonsense"]).status.code(), Some(2));
}

#[test]
fn fixture_directory_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_shalg"))
        .args(["verify", "ainf", "dual.json"])
        .env("SHALG_FIXTURES", fixture(""))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        shalg(&["move", "m2", "--data", &path("perturb.json")]).status.code(),
        Some(2)
    );
    assert_eq!(shalg(&["verify"]).status.code(), Some(2));
}

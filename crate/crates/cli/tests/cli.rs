use std::path::Path;
use std::process::{Command, Output};

fn levywalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levywalk"))
        .args(args)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("walk.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const CONFIG: &str = "alpha = 0.5\nbeta = 0.8\nd = 1\nvariant = \"wait-first\"\nn_grid = [10, 30, 100]\nn_samples = 50\n";

#[test]
fn verify_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), CONFIG);
    let out = dir.path().join("runs");
    let out_s = out.to_str().unwrap();
    let run = levywalk(&[
        "verify",
        "laplace",
        "--config",
        &config,
        "--out",
        out_s,
        "--threads",
        "2",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert_eq!(
        stdout.matches("PASS laplace-transform").count(),
        3,
        "{stdout}"
    );
    assert!(out.join("laplace/report.csv").is_file());

    let report = levywalk(&["report", "--out", out_s]);
    assert!(report.status.success());
    assert!(String::from_utf8_lossy(&report.stdout).contains("3 rows, 0 failed"));
    assert!(out.join("summary.csv").is_file());
}

#[test]
fn seed_override_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), CONFIG);
    let read = |seed: &str, sub: &str| {
        let out = dir.path().join(sub);
        let run = levywalk(&[
            "simulate",
            "--config",
            &config,
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            run.status.success(),
            "{}",
            String::from_utf8_lossy(&run.stderr)
        );
        std::fs::read(out.join("simulate/ensembles/ensemble_n=100_t=1.csv")).unwrap()
    };
    let a = read("7", "a");
    assert_eq!(a, read("7", "b"));
    assert_ne!(a, read("8", "c"));
    assert!(dir
        .path()
        .join("a/simulate/trajectories/trajectory_0.csv")
        .is_file());
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &CONFIG.replace("alpha = 0.5", "alpha = 1.2"));
    let run = levywalk(&["verify", "laplace", "--config", &config]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("alpha"));

    let config = write_config(dir.path(), &format!("{CONFIG}beta = 0.7\n"));
    let run = levywalk(&["verify", "laplace", "--config", &config]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("line 7"));
}

#[test]
fn unknown_suite_and_missing_config_fail() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), CONFIG);
    assert_eq!(
        levywalk(&["verify", "bogus", "--config", &config])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(levywalk(&["verify", "laplace"]).status.code(), Some(2));
}

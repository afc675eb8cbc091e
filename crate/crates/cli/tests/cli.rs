use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fairconf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairconf"))
        .args(args)
        .current_dir(dir)
        .env("FAIRCONF_THREADS", "2")
        .output()
        .expect("failed to run fairconf")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_solve_metrics_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&fairconf(&["gen", "--pattern", "table1", "--out", "t1.json"], d)), 0);
    let out = fairconf(
        &["solve", "--instance", "t1.json", "--method", "pfair", "--deterministic", "--out", "sol.json"],
        d,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let sol = fs::read_to_string(d.join("sol.json")).unwrap();
    for key in ["assignment", "objective", "method", "optimal", "nodes_explored", "time_ms", "metrics"] {
        assert!(sol.contains(&format!("\"{key}\"")), "missing {key}");
    }
    assert!(sol.contains("\"pfair\""));

    let out = fairconf(&["metrics", "--instance", "t1.json", "--schedule", "sol.json"], d);
    assert_eq!(code(&out), 0);
    let report = text(&out);
    assert!(report.contains("\"tep\": 0.98"), "{report}");
    assert!(report.contains("\"psi_p\": 0.0"), "{report}");

    fs::write(d.join("bare.json"), "[0]").unwrap();
    let out = fairconf(&["metrics", "--instance", "t1.json", "--schedule", "bare.json"], d);
    assert!(text(&out).contains("\"tep\": 1.0"));
}

#[test]
fn deterministic_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = ["gen", "--pattern", "uniform", "--m", "5", "--n", "5", "--l", "6", "--seed", "7", "--out"];
    assert_eq!(code(&fairconf(&[&gen[..], &["a.json"]].concat(), d)), 0);
    assert_eq!(code(&fairconf(&[&gen[..], &["b.json"]].concat(), d)), 0);
    assert_eq!(fs::read(d.join("a.json")).unwrap(), fs::read(d.join("b.json")).unwrap());

    for name in ["s1.json", "s2.json"] {
        let out = fairconf(
            &[
                "solve", "--instance", "a.json", "--method", "fairconf", "--lambda1", "0.3", "--lambda2", "0.7",
                "--deterministic", "--no-time", "--out", name,
            ],
            d,
        );
        assert_eq!(code(&out), 0);
    }
    assert_eq!(fs::read(d.join("s1.json")).unwrap(), fs::read(d.join("s2.json")).unwrap());

    for name in ["w1.csv", "w2.csv"] {
        let out = fairconf(
            &[
                "sweep", "--instance", "a.json", "--methods", "swm,iam,pfair,sfair,fairconf", "--lambda1",
                "0,0.5,1", "--fix", "lambda2=0.5", "--deterministic", "--no-time", "--csv", name,
            ],
            d,
        );
        assert_eq!(code(&out), 0);
    }
    let csv = fs::read_to_string(d.join("w1.csv")).unwrap();
    assert_eq!(csv, fs::read_to_string(d.join("w2.csv")).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "method,lambda1,lambda2,tep,ncg_mean,ncg_min,ncg_max,psi_p,nec_mean,nec_min,nec_max,psi_s,objective,optimal,nodes_explored,time_ms"
    );
    assert_eq!(lines.len(), 1 + 4 + 3);
    assert!(lines[5].starts_with("fairconf,0,0.5,"));
    assert!(lines[7].starts_with("fairconf,1,0.5,"));
}

#[test]
fn sweep_time_column_is_filled_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fairconf(&["gen", "--pattern", "table3", "--out", "t3.json"], d);
    let out = fairconf(&["sweep", "--instance", "t3.json", "--methods", "swm", "--csv", "o.csv"], d);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(d.join("o.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert!(row[15].parse::<f64>().is_ok(), "{csv}");
}

#[test]
fn verify_claims_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = fairconf(&["verify-claims"], dir.path());
    assert_eq!(code(&out), 0);
    let report = text(&out);
    assert_eq!(report.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{report}");
    assert!(report.contains("4 passed, 0 failed"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&fairconf(&["no-such-command"], d)), 1);
    assert_eq!(code(&fairconf(&["solve", "--instance", "x.json"], d)), 1);
    assert_eq!(code(&fairconf(&["solve", "--instance", "missing.json", "--method", "swm", "--out", "o"], d)), 1);
    assert_eq!(code(&fairconf(&["gen", "--pattern", "nope", "--out", "o"], d)), 1);
    assert_eq!(code(&fairconf(&["--help"], d)), 0);

    fs::write(d.join("bad.json"), "{\"interest\": [[1.5]], \"availability\": [[1.0]]}").unwrap();
    let out = fairconf(&["solve", "--instance", "bad.json", "--method", "swm", "--out", "o"], d);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("interest[0][0]"));

    fs::write(d.join("broken.json"), "{\n\"interest\": [[1.0]\n").unwrap();
    let out = fairconf(&["solve", "--instance", "broken.json", "--method", "swm", "--out", "o"], d);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    fairconf(&["gen", "--pattern", "uniform", "--m", "6", "--n", "8", "--l", "10", "--seed", "3", "--out", "u.json"], d);
    let out = fairconf(
        &["solve", "--instance", "u.json", "--method", "pfair", "--time-limit", "0", "--out", "p.json"],
        d,
    );
    assert_eq!(code(&out), 3);
    assert!(fs::read_to_string(d.join("p.json")).unwrap().contains("\"optimal\": false"));

    // A sweep with the same budget still succeeds and flags the row.
    let out = fairconf(
        &["sweep", "--instance", "u.json", "--methods", "pfair", "--time-limit", "0", "--csv", "p.csv"],
        d,
    );
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(d.join("p.csv")).unwrap().contains(",false,"));
}

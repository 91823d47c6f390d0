use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coldual"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coldual-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "--model", "gl2", "--expr", "a*b - (q)*b*a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");

    let o = run(&["eval", "--model", "gl2", "--expr", "det^(1/2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1*exp((0)h+(1/2)ht)");

    let o = run(&["eval", "--model", "gl2", "--expr", "b^(1/2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-group-like"));

    let o = run(&["eval", "--model", "gl11", "--expr", "a +* b"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
}

#[test]
fn verify_passes_and_reports_jsonl() {
    let o = run(&["verify", "--model", "gl11", "--suite", "ybe", "--samples", "2", "--colours", "1,-1/2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().filter(|l| !l.starts_with("# ")).collect();
    assert_eq!(body.len(), 2 * 8);
    for line in body {
        assert!(line.starts_with(r#"{"suite":"ybe","relation":"coloured-ybe","model":"gl11","#), "{line}");
        assert!(line.ends_with(r#""pass":true}"#), "{line}");
    }
    assert!(out.contains("# total 16 checks, 0 failed"));
}

#[test]
fn failing_check_sets_exit_code() {
    // no double-precision residual clears this bar
    let o = run(&["verify", "--model", "gl2", "--suite", "ybe", "--samples", "1", "--colours", "2,-1", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_and_flag_override() {
    let cfg = tmp("run.cfg");
    fs::write(&cfg, "# small run\nmodel = gl2\nsuite = ybe\nsamples = 3\nseed = 11\ncolours = 1, 2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let a = run(&["verify", "--config", path]);
    assert!(a.status.success());
    assert_eq!(stdout(&a).lines().filter(|l| !l.starts_with('#')).count(), 3 * 8);

    let b = run(&["verify", "--config", path, "--samples", "1", "--model", "gl11"]);
    let out = stdout(&b);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 8);
    assert!(out.contains(r#""model":"gl11""#));

    fs::write(&cfg, "model = gl2\ncolours =\n").unwrap();
    let c = run(&["verify", "--config", path]);
    assert_eq!(c.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&c.stderr).contains("line 2"));

    fs::write(&cfg, "model = gl2\nwidth = 3\n").unwrap();
    let d = run(&["verify", "--config", path]);
    assert_eq!(d.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&d.stderr).contains("unknown key"));
}

#[test]
fn report_file_is_deterministic() {
    let (r1, r2) = (tmp("a.jsonl"), tmp("b.jsonl"));
    let args = |p: &PathBuf| {
        vec![
            "verify".to_string(),
            "--model=gl2".into(),
            "--suite=ybe,relations,appendix".into(),
            "--samples=2".into(),
            "--seed=42".into(),
            "--colours=1,-1,1/2".into(),
            format!("--report={}", p.display()),
        ]
    };
    for p in [&r1, &r2] {
        let o = bin().args(args(p)).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("# suite"));
    }
    let (a, b) = (fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn explicit_points() {
    let o = run(&["verify", "--model", "gl2", "--suite", "ybe", "--colours", "1", "--params", "theta=0.1+0.2i,phi=-0.3; theta=0,phi=0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains(r#""theta":[0.1,0.2],"phi":[-0.3,0.0]"#), "{out}");
    assert!(out.contains(r#""sample":1,"theta":[0.0,0.0]"#), "{out}");
}

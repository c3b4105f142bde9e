use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = r#"
[graph]
n = 10
radius = 0.4

[design]
k = 6
iters = 100

[dda]
T = 300
trials = 2

[decentralized]
N1 = 10
N2 = 20
"#;

fn ddatopo(dir: &Path, args: &[&str]) -> Output {
    let cfg = dir.join("small.toml");
    if !cfg.exists() {
        fs::write(&cfg, SMALL).unwrap();
    }
    Command::new(env!("CARGO_BIN_EXE_ddatopo"))
        .current_dir(dir)
        .args(args)
        .args(["--config", "small.toml"])
        .output()
        .unwrap()
}

fn ok(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn first_line(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn static_run_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        ok(&ddatopo(dir.path(), &["run", "--delta", "300", "--seed", "9", "--out", out]));
    }
    let a = fs::read(dir.path().join("a/trajectory.csv")).unwrap();
    let b = fs::read(dir.path().join("b/trajectory.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn csv_headers_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&ddatopo(d, &["run"]));
    ok(&ddatopo(d, &["theory"]));
    ok(&ddatopo(d, &["sweep", "--axis", "delta", "--values", "1,100"]));
    let mut cfg = SMALL.to_string();
    cfg.push_str("enabled = true\n");
    fs::write(d.join("small.toml"), cfg).unwrap();
    ok(&ddatopo(d, &["design"]));
    let o = d.join("out");
    assert_eq!(first_line(&o.join("trajectory.csv")), "t,max_regret,sigma2_Pt,lambda_n1_Lt,edges_added_cumulative");
    assert_eq!(first_line(&o.join("theory.csv")), "delta_star,beta_star,net_bound,thm2_bound_at_T,prop3_scale");
    assert_eq!(first_line(&o.join("theory_checkpoints.csv")), "t,delta_star_t,thm2_bound,empirical_regret");
    assert_eq!(first_line(&o.join("sweep.csv")), "axis,regret_mean,regret_stderr,thm2_bound,delta_star,edges_added,cost_total");
    assert_eq!(first_line(&o.join("protocol_trace.csv")), "round,agent,quantity,value");
    let sweep = fs::read_to_string(o.join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 3);
}

#[test]
fn pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let design = ok(&ddatopo(d, &["design", "--budget", "4"]));
    assert_eq!(design["selected"], 4);
    let sched = ok(&ddatopo(d, &["schedule", "--selection", "out/selection.txt", "--budget", "4"]));
    assert_eq!(sched["scheduled"], 4);
    let text = fs::read_to_string(d.join("out/schedule.txt")).unwrap();
    assert!(text.starts_with("10 4\n"));
    let run = ok(&ddatopo(d, &["run", "--schedule", "out/schedule.txt"]));
    assert_eq!(run["edges_added"], 4);
    let graph = fs::read_to_string(d.join("out/graph.txt")).unwrap();
    assert!(graph.contains("positions"));
}

#[test]
fn cost_weight_thins_the_selection() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut cfg = SMALL.replace("k = 6", "k = 6\nmethod = \"subgradient\"\nmode = \"C1\"");
    cfg.push('\n');
    fs::write(d.join("small.toml"), cfg).unwrap();
    let free = ok(&ddatopo(d, &["design", "--gamma", "0"]));
    let costly = ok(&ddatopo(d, &["design", "--gamma", "1"]));
    assert!(costly["selected"].as_u64() < free["selected"].as_u64());
}

#[test]
fn errors_are_one_json_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [&["run", "--delta", "0"][..], &["schedule", "--selection", "missing.txt"], &["sweep", "--axis", "budget", "--values", "1.5"]] {
        let out = ddatopo(d, args);
        assert!(!out.status.success());
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string());
    }
    let out = ddatopo(d, &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("{\"error\":\"usage\""));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("small.toml"), "[dda]\nhorizon = 10\n").unwrap();
    let out = ddatopo(dir.path(), &["run"]);
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("\"config\""));
}

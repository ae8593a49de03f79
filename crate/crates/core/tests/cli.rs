use std::io::Write;
use std::process::{Command, Output};

fn nnamm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nnamm"))
        .args(args)
        .env("NNAMM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(s: &str) -> Vec<&str> {
    s.lines().filter(|l| !l.starts_with('#')).collect()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn perf_analytic_golden_and_reproducible() {
    let a = nnamm(&["perf", "analytic", "--n", "9"]);
    let b = nnamm(&["perf", "analytic", "--n", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let rows = data_lines(&out);
    assert_eq!(rows[0], "N,m,d,q,p_num,p_den,p_float,n_success,n_total,method,l,eta,damage_id");
    assert_eq!(rows.len(), 11);
    assert!(rows.contains(&"9,5,0.5555555555555556,0.4444444444444444,31,32,0.96875,3906,4032,analytic,0,1,intact"));
    assert!(rows[10].starts_with("9,9,1,0,1,2,0.5,"));
}

#[test]
fn perf_exact_with_damage_file_is_seed_deterministic() {
    let spec = temp_file(r#"{"n_severed": 10}"#);
    let path = spec.path().to_str().unwrap();
    let run = |seed: &str| stdout(&nnamm(&["perf", "exact", "--damage", path, "--seed", seed]));
    let a = run("7");
    assert_eq!(a, run("7"));
    assert!(a.contains("# seed: 7"));
    let rows = data_lines(&a);
    assert!(rows[1].starts_with("9,0,0,1,1,1,1,"));
    assert!(rows[1].ends_with(",exact,0,1,Nd=10;seed=7"));
}

#[test]
fn roc_contains_chance_anchor() {
    let out = stdout(&nnamm(&["roc", "--l=-1,0,1,2,4", "--m", "9"]));
    let rows: Vec<Vec<&str>> = data_lines(&out)[1..].iter().map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().any(|r| r[0] == "0" && r[3] == "0.5" && r[4] == "0.5"));
    let p1: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(p1.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn unit_simulate_clean_cues_recall_in_one_step() {
    let out = stdout(&nnamm(&["unit", "simulate", "--d", "0", "--trials", "50", "--seed", "1"]));
    let mut lines = out.lines();
    let meta: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(meta["meta"]["seed"], 1);
    let recs: Vec<serde_json::Value> = lines.map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 50);
    assert!(recs.iter().all(|r| r["outcome"] == "Success" && r["inner_steps"] == 1));
}

#[test]
fn unit_summary_reports_success_rate() {
    let out = stdout(&nnamm(&["unit", "simulate", "--d", "0.5555555555555556", "--trials", "200", "--seed", "4", "--summary"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["summary"]["success_rate"].as_f64().unwrap() > 0.9);
}

#[test]
fn learn_residual_depends_on_eta() {
    let residual = |eta: &str| -> f64 {
        let out = stdout(&nnamm(&["learn", "--eta", eta, "--seed", "3"]));
        data_lines(&out)[1].split(',').nth(1).unwrap().parse().unwrap()
    };
    assert!(residual("400") < 1e-30);
    assert!(residual("0.1") > 1e-3);
}

#[test]
fn peaks_writes_feature_map() {
    let mut signal = String::from("# synthetic trace\n");
    for i in 0..40 {
        let v = if (20..23).contains(&i) { 5.0 } else { (i % 3) as f64 * 0.01 };
        signal.push_str(&format!("{v}\n"));
    }
    let f = temp_file(&signal);
    let o = nnamm(&["peaks", "--input", f.path().to_str().unwrap(), "--l", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rows = data_lines(&out);
    assert_eq!(rows[0], "position,Q");
    assert!(rows[1..].iter().any(|r| r.starts_with("17,")));
}

#[test]
fn mirror_reports_json() {
    let spec = temp_file(r#"{"n_severed": 10, "seed": 0}"#);
    let out = stdout(&nnamm(&["mirror", "--damage-b", spec.path().to_str().unwrap()]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["a"], "intact");
    assert!(v["mirror"].is_boolean());
    assert_eq!(v["points"].as_array().unwrap().len(), 10);
}

#[test]
fn bayes_outputs_probabilities() {
    let out = stdout(&nnamm(&["bayes", "--pd", "0.5", "--p1", "0.5", "--kappa", "1"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["p_mc"], 0.5);
    assert_eq!(v["p_cc"], 0.5);
}

#[test]
fn exit_codes_and_json_errors() {
    let usage = nnamm(&["perf", "analytic", "--n", "9", "--m", "12"]);
    assert_eq!(usage.status.code(), Some(2));
    let bad_flag = nnamm(&["perf", "exact", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&bad_flag.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "ArgumentError");

    let spec = temp_file(r#"{"dead_outputs": [2]}"#);
    let dead = nnamm(&["perf", "exact", "--damage", spec.path().to_str().unwrap()]);
    assert_eq!(dead.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&dead.stderr).unwrap();
    assert!(err["error"]["kind"].as_str().unwrap().contains("DeadOutput"));

    let domain = nnamm(&["bayes", "--pd", "1.5", "--p1", "0.5"]);
    assert_ne!(domain.status.code(), Some(0));
}

#[test]
fn help_exits_zero() {
    let o = nnamm(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("perf"));
}

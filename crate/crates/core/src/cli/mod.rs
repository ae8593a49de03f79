//! Command-line front end. The `nnamm` binary only forwards to [`run`].
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 for argument
//! errors. Failures are reported on stderr as a single JSON object
//! `{"error": {"kind": ..., "message": ...}}`.
//!
//! `NNAMM_THREADS` sets the worker thread count for enumeration and batch
//! simulation.

mod args;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub use args::*;

use crate::coding::SpinVector;
use crate::error::Error;
use crate::io::{self, Meta};
use crate::memory_unit::{latency_stats, MemoryUnit, MemoryUnitConfig, ReferenceMemory};
use crate::network::{learn_one_trial, uniform_init, DamageSpec, NeuronConfig, SynapticMatrix};
use crate::performance::{self, mirror_check, parse_grid};
use crate::spectra;
use crate::seeded_rng;

pub const THREADS_ENV: &str = "NNAMM_THREADS";

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let recorded: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            report(stderr, "ArgumentError", e.to_string().trim());
            return 2;
        }
    };
    configure_threads();
    match dispatch(cli.command, &recorded, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            report(stderr, "ArgumentError", &msg);
            2
        }
        Err(Failure::Compute(e)) => {
            report(stderr, e.kind(), &e.to_string());
            1
        }
    }
}

fn report(stderr: &mut dyn Write, kind: &str, message: &str) {
    let _ = writeln!(stderr, "{}", json!({"error": {"kind": kind, "message": message}}));
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(cmd: Command, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Perf { method } => cmd_perf(method, recorded, stdout),
        Command::Roc(a) => cmd_roc(a, recorded, stdout),
        Command::Unit {
            action: UnitAction::Simulate(a),
        } => cmd_unit(a, recorded, stdout),
        Command::Learn(a) => cmd_learn(a, recorded, stdout),
        Command::Peaks(a) => cmd_peaks(a, recorded, stdout),
        Command::Bayes(a) => cmd_bayes(a, stdout),
        Command::Mirror(a) => cmd_mirror(a, recorded, stdout),
    }
}

fn with_output(out: &OutputArgs, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> crate::Result<()>) -> CmdResult {
    match &out.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(Error::from)?);
            f(&mut w)?;
            w.flush().map_err(Error::from)?;
        }
        None => f(stdout)?,
    }
    Ok(())
}

fn resolve_etalon(n: usize, etalon: &Option<String>, etalon_seed: u64) -> std::result::Result<SpinVector, Failure> {
    let x0 = match etalon {
        Some(s) => s.parse::<SpinVector>().map_err(|e| Failure::Usage(e.to_string()))?,
        None => SpinVector::random(n, &mut seeded_rng(etalon_seed)).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    if x0.len() != n {
        return Err(Failure::Usage(format!("etalon has length {}, --n is {n}", x0.len())));
    }
    Ok(x0)
}

fn load_damage(path: &Path) -> std::result::Result<DamageSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    DamageSpec::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Builds the (possibly damaged) net; `seed` overrides the damage file's seed.
fn build_net(
    a: &NetArgs,
    seed: Option<u64>,
) -> std::result::Result<(SpinVector, SynapticMatrix, DamageSpec), Failure> {
    let x0 = resolve_etalon(a.n, &a.etalon, a.etalon_seed)?;
    let net = SynapticMatrix::train_ideal(&x0, a.eta).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut spec = match &a.damage {
        Some(p) => load_damage(p)?,
        None => DamageSpec::default(),
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    let net = if spec.is_empty() { net } else { net.apply_damage(&spec)? };
    Ok((x0, net, spec))
}

fn fresh_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn cmd_perf(method: PerfMethod, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    let (name, a) = match &method {
        PerfMethod::Exact(a) => ("perf exact", a),
        PerfMethod::Analytic(a) => ("perf analytic", a),
        PerfMethod::Mc(a) => ("perf mc", a),
    };
    let ms = parse_grid(&a.m)?;
    if let Some(&bad) = ms.iter().find(|&&m| m > a.net.n) {
        return Err(Failure::Usage(format!("m={bad} exceeds N={}", a.net.n)));
    }
    let cfg = NeuronConfig::with_threshold(a.l);
    let points = match method {
        PerfMethod::Analytic(ref a) => {
            if a.net.damage.is_some() {
                return Err(Failure::Usage(
                    "analytic formulas hold only for intact, ideally trained nets; use `perf exact` with --damage".into(),
                ));
            }
            if a.l != 0.0 {
                return Err(Failure::Usage("analytic formulas assume l = 0; use `perf exact` or `roc`".into()));
            }
            let meta = Meta::new(name, recorded.to_vec(), None);
            let curve = performance::analytic_curve(a.net.n, &ms)?;
            let pts: Vec<_> = curve.points.into_iter().map(|p| p.with_labels(0.0, a.net.eta, "intact")).collect();
            return with_output(&a.out, stdout, |w| {
                meta.write_comment_lines(w)?;
                io::write_performance_csv(w, &pts)
            });
        }
        PerfMethod::Exact(ref a) => {
            let seed = a.net.damage.as_ref().map(|_| a.seed).flatten();
            let (x0, net, spec) = build_net(&a.net, seed)?;
            let meta = Meta::new(name, recorded.to_vec(), (!spec.is_empty()).then_some(spec.seed));
            let curve = performance::exact_curve(&net, &x0, &ms, &cfg)?;
            let pts: Vec<_> = curve.points.into_iter().map(|p| p.with_labels(a.l, a.net.eta, spec.id())).collect();
            (meta, pts)
        }
        PerfMethod::Mc(ref a) => {
            let seed = fresh_seed(a.seed);
            let (x0, net, spec) = build_net(&a.net, a.net.damage.as_ref().map(|_| seed))?;
            let meta = Meta::new(name, recorded.to_vec(), Some(seed));
            let mut rng = seeded_rng(seed);
            let curve = performance::montecarlo_curve(&net, &x0, &ms, a.trials, &mut rng, &cfg)?;
            let pts: Vec<_> = curve.points.into_iter().map(|p| p.with_labels(a.l, a.net.eta, spec.id())).collect();
            (meta, pts)
        }
    };
    let (meta, pts) = points;
    with_output(&a.out, stdout, |w| {
        meta.write_comment_lines(w)?;
        io::write_performance_csv(w, &pts)
    })
}

fn cmd_roc(a: RocArgs, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    let ms = parse_grid(&a.m)?;
    if let Some(&bad) = ms.iter().find(|&&m| m > a.net.n) {
        return Err(Failure::Usage(format!("m={bad} exceeds N={}", a.net.n)));
    }
    let (x0, net, spec) = build_net(&a.net, a.seed)?;
    let meta = Meta::new("roc", recorded.to_vec(), (!spec.is_empty()).then_some(spec.seed));
    let pts = performance::roc_family(&net, &x0, &a.l, &ms)?;
    with_output(&a.out, stdout, |w| {
        meta.write_comment_lines(w)?;
        writeln!(w, "# damage: {}", spec.id())?;
        io::write_roc_csv(w, &pts)
    })
}

fn cmd_unit(a: UnitArgs, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    let seed = fresh_seed(a.seed);
    let (x0, net, _) = build_net(&a.net, a.net.damage.as_ref().map(|_| seed))?;
    let cfg = MemoryUnitConfig {
        n: a.net.n,
        f: a.f,
        t0: a.t0,
        max_restarts: a.max_restarts,
        delta_t: a.delta_t,
        d: a.d,
    };
    let unit = MemoryUnit::new(net, ReferenceMemory::new(x0), cfg).map_err(|e| match e {
        Error::Config(m) | Error::Domain(m) => Failure::Usage(m),
        other => Failure::Compute(other),
    })?;
    let records = unit.simulate(a.trials, seed)?;
    let meta = Meta::new("unit simulate", recorded.to_vec(), Some(seed));
    with_output(&a.out, stdout, |w| {
        if a.summary {
            let stats = latency_stats(&records)?;
            serde_json::to_writer(&mut *w, &json!({"meta": meta, "summary": stats}))?;
            writeln!(w)?;
            Ok(())
        } else {
            io::write_trials_jsonl(w, &meta, &records)
        }
    })
}

fn cmd_learn(a: LearnArgs, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    if !(a.eta > 0.0) {
        return Err(Failure::Usage(format!("--eta must be > 0, got {}", a.eta)));
    }
    let seed = fresh_seed(a.seed);
    let mut rng = seeded_rng(seed);
    let x0 = SpinVector::random(a.n, &mut rng).map_err(|e| Failure::Usage(e.to_string()))?;
    let init = uniform_init(a.n, a.eta, &mut rng)?;
    let out = learn_one_trial(&init, &x0, a.eta, a.iters)?;
    Meta::new("learn", recorded.to_vec(), Some(seed)).write_comment_lines(stdout)?;
    let mut w = csv::Writer::from_writer(&mut *stdout);
    w.write_record(["iteration", "residual"]).map_err(Error::from)?;
    for (k, r) in out.residuals.iter().enumerate() {
        w.write_record([(k + 1).to_string(), format!("{r:e}")]).map_err(Error::from)?;
    }
    w.flush().map_err(Error::from)?;
    Ok(())
}

fn cmd_peaks(a: PeaksArgs, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    let file = File::open(&a.input).map_err(|e| Failure::Usage(format!("{}: {e}", a.input.display())))?;
    let signal = io::read_signal(BufReader::new(file))?;
    let template = spectra::white_segment(a.n, a.template_width).map_err(|e| Failure::Usage(e.to_string()))?;
    let bin = spectra::binarize(&signal, a.radius)?;
    let map = spectra::detect_peaks(&bin, &template, a.l, a.eta)?;
    let meta = Meta::new("peaks", recorded.to_vec(), None);
    with_output(&a.out, stdout, |w| {
        meta.write_comment_lines(w)?;
        io::write_feature_map_csv(w, &map)
    })
}

fn cmd_bayes(a: BayesArgs, stdout: &mut dyn Write) -> CmdResult {
    let r = performance::bayes(a.pd, a.p1, a.kappa)?;
    serde_json::to_writer(&mut *stdout, &r).map_err(Error::from)?;
    writeln!(stdout).map_err(Error::from)?;
    Ok(())
}

fn cmd_mirror(a: MirrorArgs, recorded: &[String], stdout: &mut dyn Write) -> CmdResult {
    let ms: Vec<usize> = (0..=a.n).collect();
    let curve = |damage: &Option<std::path::PathBuf>| -> std::result::Result<_, Failure> {
        let net_args = NetArgs {
            n: a.n,
            eta: 1.0,
            etalon: a.etalon.clone(),
            etalon_seed: a.etalon_seed,
            damage: damage.clone(),
        };
        let (x0, net, spec) = build_net(&net_args, None)?;
        Ok((performance::exact_curve(&net, &x0, &ms, &NeuronConfig::default())?, spec))
    };
    let (ca, sa) = curve(&a.damage_a)?;
    let (cb, sb) = curve(&a.damage_b)?;
    let report = mirror_check(&ca, &cb)?;
    let points: Vec<_> = ca
        .iter()
        .zip(cb.iter())
        .map(|(pa, pb)| json!({"m": pa.m, "p_a": pa.p_exact.to_string(), "p_b": pb.p_exact.to_string()}))
        .collect();
    let violations: Vec<_> = report
        .violations
        .iter()
        .map(|v| json!({"m": v.m, "p_a": v.p_a.to_string(), "p_b": v.p_b.to_string()}))
        .collect();
    let body = json!({
        "meta": Meta::new("mirror", recorded.to_vec(), None),
        "a": sa.id(),
        "b": sb.id(),
        "mirror": report.holds,
        "strict_points": report.strict_points,
        "violations": violations,
        "points": points,
    });
    serde_json::to_writer(&mut *stdout, &body).map_err(Error::from)?;
    writeln!(stdout).map_err(Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nnamm").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analytic_rows() {
        let (code, out, _) = run_capture(&["perf", "analytic", "--n", "9", "--m", "0..9"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 11);
        assert!(rows[10].starts_with("9,9,1,0,1,2,0.5,"));
    }

    #[test]
    fn bad_arguments_exit_two() {
        let (code, _, err) = run_capture(&["perf", "analytic", "--n", "nine"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "ArgumentError");
        let (code, _, _) = run_capture(&["perf", "analytic", "--m", "3..1"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["perf", "analytic", "--n", "5", "--m", "0..6"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn computation_errors_exit_one() {
        let (code, _, err) = run_capture(&["bayes", "--pd", "0", "--p1", "0.5"]);
        assert_eq!(code, 1);
        assert!(err.contains("DomainError"));
        let (code, _, err) = run_capture(&["perf", "exact", "--n", "40", "--m", "20"]);
        assert_eq!(code, 1);
        assert!(err.contains("TooLargeError"));
    }

    #[test]
    fn bayes_json() {
        let (code, out, _) = run_capture(&["bayes", "--pd", "1", "--p1", "0.5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!((v["p_mc"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("perf"));
    }
}

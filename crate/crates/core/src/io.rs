//! Flat-file formats: performance / ROC / feature-map CSV, trial JSON lines
//! and plain-text signals.
//!
//! CSV files may start with `#`-prefixed metadata lines; readers of these
//! files are expected to skip them.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::memory_unit::TrialRecord;
use crate::performance::{PerformancePoint, RocPoint};
use crate::spectra::FeatureMap;

pub const PERFORMANCE_HEADER: [&str; 13] = [
    "N", "m", "d", "q", "p_num", "p_den", "p_float", "n_success", "n_total", "method", "l", "eta", "damage_id",
];

pub const ROC_HEADER: [&str; 7] = ["l", "m", "d", "P1", "Pd", "P1_exact", "Pd_exact"];

/// Provenance written atop every output file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Meta {
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
}

impl Meta {
    pub fn new(command: impl Into<String>, args: Vec<String>, seed: Option<u64>) -> Self {
        Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            args,
            seed,
        }
    }

    pub fn write_comment_lines<W: Write + ?Sized>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "# nnamm {}", self.version)?;
        writeln!(w, "# command: {}", self.command)?;
        writeln!(w, "# args: {}", self.args.join(" "))?;
        match self.seed {
            Some(s) => writeln!(w, "# seed: {s}")?,
            None => writeln!(w, "# seed: none")?,
        }
        Ok(())
    }
}

pub fn write_performance_csv<W: Write>(w: W, points: &[PerformancePoint]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(PERFORMANCE_HEADER)?;
    for p in points {
        out.write_record([
            p.n.to_string(),
            p.m.to_string(),
            p.d().to_string(),
            p.q().to_string(),
            p.p_exact.numer().to_string(),
            p.p_exact.denom().to_string(),
            p.p_float().to_string(),
            p.n_success.to_string(),
            p.n_total.to_string(),
            p.method.to_string(),
            p.threshold.to_string(),
            p.eta.to_string(),
            p.damage_id.clone(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_roc_csv<W: Write>(w: W, points: &[RocPoint]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(ROC_HEADER)?;
    for p in points {
        out.write_record([
            p.threshold.to_string(),
            p.m.to_string(),
            p.d().to_string(),
            p.p_1_f64().to_string(),
            p.p_d_f64().to_string(),
            p.p_1.to_string(),
            p.p_d.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_feature_map_csv<W: Write>(w: W, map: &FeatureMap) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["position", "Q"])?;
    for d in &map.detections {
        out.write_record([d.position.to_string(), d.q.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct MetaLine<'a> {
    meta: &'a Meta,
}

/// JSON lines: a `{"meta": ...}` line, then one record per line.
pub fn write_trials_jsonl<W: Write>(mut w: W, meta: &Meta, records: &[TrialRecord]) -> Result<()> {
    serde_json::to_writer(&mut w, &MetaLine { meta })?;
    writeln!(w)?;
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Reads one sample per line. Blank lines, `#` comments and a non-numeric
/// header are skipped; for comma-separated lines the last field is the sample.
pub fn read_signal<R: BufRead>(r: R) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let field = t.rsplit(',').next().unwrap_or(t).trim().trim_matches('"');
        match field.parse::<f64>() {
            Ok(v) => out.push(v),
            Err(_) if out.is_empty() && lineno == 0 => continue,
            Err(_) => return Err(Error::Parse(format!("line {}: {field:?} is not a number", lineno + 1))),
        }
    }
    Ok(out)
}

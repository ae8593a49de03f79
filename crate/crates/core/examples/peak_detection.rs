//! Finds narrow peaks in a 1-D trace: binarize against a rolling median,
//! slide a +/- template, keep one detection per run.
//!
//! Median binarization turns a noisy background into coin flips, so the
//! noisy trace also picks up chance windows that happen to match.

use nnamm::spectra::{binarize, detect_peaks, white_segment};
use nnamm::seeded_rng;
use rand::Rng;

fn trace(noise: f64, seed: u64) -> Vec<f64> {
    let mut rng = seeded_rng(seed);
    (0..200)
        .map(|i| {
            let baseline = (i / 50) as f64;
            let peak = if [29, 30, 31, 74, 75, 76, 139, 140, 141].contains(&i) { 4.0 } else { 0.0 };
            baseline + peak + if noise > 0.0 { rng.gen_range(-noise..noise) } else { 0.0 }
        })
        .collect()
}

fn main() -> nnamm::Result<()> {
    let template = white_segment(9, 3)?;
    println!("template {template}, true centres [30, 75, 140]");
    for noise in [0.0, 0.3] {
        let bin = binarize(&trace(noise, 8), 4)?;
        for l in [5.0, 7.0] {
            let map = detect_peaks(&bin, &template, l, 1.0)?;
            let centres: Vec<String> = map.detections.iter().map(|d| format!("{}(Q={})", d.position + 4, d.q)).collect();
            println!("noise={noise} l={l}: {}", centres.join(" "));
        }
    }
    Ok(())
}

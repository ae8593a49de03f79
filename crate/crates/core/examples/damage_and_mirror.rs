//! Severs 10 synapses of an N=9 network at several seeds and compares each
//! damaged recall curve against the intact one.

use nnamm::network::{DamageSpec, NeuronConfig};
use nnamm::performance::{exact_curve, mirror_check};
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    let n = 9;
    let etalon = SpinVector::random(n, &mut seeded_rng(7))?;
    let intact = SynapticMatrix::train_ideal(&etalon, 1.0)?;
    let cfg = NeuronConfig::default();
    let ms: Vec<usize> = (0..=n).collect();
    let reference = exact_curve(&intact, &etalon, &ms, &cfg)?;

    for seed in 0..5 {
        let spec = DamageSpec::severed_links(10, seed);
        let damaged = intact.apply_damage(&spec)?;
        let curve = exact_curve(&damaged, &etalon, &ms, &cfg)?;
        let report = mirror_check(&reference, &curve)?;
        let ps: Vec<String> = curve.iter().map(|p| format!("{:.3}", p.p_float())).collect();
        println!(
            "{:<14} P = [{}] mirror={} strict at m={:?}",
            spec.id(),
            ps.join(" "),
            report.holds,
            report.strict_points
        );
    }

    let dead = DamageSpec {
        dead_outputs: vec![3],
        ..Default::default()
    };
    match nnamm::performance::p_exact_enumerate(&intact.apply_damage(&dead)?, &etalon, 0, &cfg) {
        Err(e) => println!("dead output 3: {} ({})", e, e.kind()),
        Ok(p) => println!("dead output 3 unexpectedly gave {}", p.p_exact),
    }
    Ok(())
}

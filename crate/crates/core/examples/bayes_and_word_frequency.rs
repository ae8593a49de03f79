//! Classification odds from recall and chance acceptance, the Stirling
//! estimate of the chance term, and the latency gap between frequent and
//! infrequent words.

use nnamm::memory_unit::{latency_band, word_frequency_delta};
use nnamm::network::{DamageSpec, NeuronConfig};
use nnamm::performance::{analytic_curve, bayes, exact_curve, stirling_tail};
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    for kappa in [0.1, 1.0, 10.0, 100.0] {
        let b = bayes(0.9, 0.5, kappa)?;
        println!("kappa={kappa:<5} P_MC={:.4} P_CC={:.4}", b.p_mc, b.p_cc);
    }
    for n in [16, 32, 64, 128] {
        let s = stirling_tail(n)?;
        println!("N={n:<3} exact={:.5} 0.4/sqrt(N)={:.5}", s.exact_f64(), s.approx);
    }

    let n = 9;
    let etalon = SpinVector::random(n, &mut seeded_rng(2))?;
    let ms: Vec<usize> = (0..=n).collect();
    let frequent = analytic_curve(n, &ms)?;
    let worn = SynapticMatrix::train_ideal(&etalon, 1.0)?.apply_damage(&DamageSpec::severed_links(10, 0))?;
    let infrequent = exact_curve(&worn, &etalon, &ms, &NeuronConfig::default())?;
    for m in [5, 7, 9] {
        let d = m as f64 / n as f64;
        let w = word_frequency_delta(&frequent, &infrequent, d, 40.0)?;
        println!("d={m}/9 extra cycles={:.3} extra time={:.1} ms in band={}", w.delta_n, w.delta_t * 1e3, w.in_band);
    }
    println!("cycles per 50-100 ms gap at 40 Hz: {}..{}", latency_band(40.0, 0.05), latency_band(40.0, 0.1));
    Ok(())
}

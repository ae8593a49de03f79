//! Cues delivered as spike bursts on sparse channels, cut out by the time
//! gate and compacted before reaching the network.

use nnamm::coding::{densify, TernaryVector};
use nnamm::memory_unit::{GatedCues, MemoryUnit, MemoryUnitConfig, NoisyCues, ReferenceMemory, RestartBudget};
use nnamm::{seeded_rng, CueSpec, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    // sparse pattern on 64 channels, 9 of them active
    let channels = vec![2, 7, 11, 19, 23, 31, 40, 52, 60];
    let signs = [1, -1, 1, 1, -1, -1, 1, -1, 1];
    let sparse = TernaryVector::new(64, channels.iter().copied().zip(signs))?;
    let (etalon, map) = densify(&sparse)?;
    println!("sparse pattern on channels {map:?} -> dense etalon {etalon}");

    let cfg = MemoryUnitConfig {
        n: 9,
        f: 40.0,
        t0: 1.0,
        max_restarts: 0,
        delta_t: 0.002,
        d: 6.0 / 9.0,
    };
    let unit = MemoryUnit::new(SynapticMatrix::train_ideal(&etalon, 1.0)?, ReferenceMemory::new(etalon.clone()), cfg)?;
    for seed in 0..5 {
        let noisy = NoisyCues::new(etalon.clone(), CueSpec::new(9, 6)?, seeded_rng(seed))?;
        let mut cues = GatedCues::new(noisy, channels.clone(), 40.0, 0.002)?;
        let rec = unit.run_trial(&mut cues, &mut RestartBudget)?;
        println!("trial {seed}: {:?} after {} cycles ({:.3} s)", rec.outcome, rec.latency_steps, rec.latency_seconds);
    }
    Ok(())
}

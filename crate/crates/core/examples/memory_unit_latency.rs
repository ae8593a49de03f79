//! Retrieval latency of the memory unit. At d=1 each cycle succeeds with
//! probability 1/2, so the number of cycles to success is geometric.

use nnamm::memory_unit::{latency_stats, MemoryUnit, MemoryUnitConfig, Outcome, ReferenceMemory};
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    let n = 9;
    let etalon = SpinVector::random(n, &mut seeded_rng(5))?;
    let net = SynapticMatrix::train_ideal(&etalon, 1.0)?;
    for d_num in [0, 5, 7, 9] {
        let cfg = MemoryUnitConfig {
            n,
            f: 40.0,
            t0: 0.25,
            max_restarts: 2,
            delta_t: 0.002,
            d: d_num as f64 / n as f64,
        };
        let unit = MemoryUnit::new(net.clone(), ReferenceMemory::new(etalon.clone()), cfg)?;
        let records = unit.simulate(20_000, 99)?;
        let stats = latency_stats(&records)?;
        let abandoned = records.iter().filter(|r| r.outcome == Outcome::Abandoned).count();
        println!(
            "d={d_num}/9 success={:.4} mean={:.3} cycles median={:?} p90={:?} mean={:.1} ms abandoned={abandoned}",
            stats.success_rate,
            stats.mean_steps.unwrap_or(f64::NAN),
            stats.median_steps,
            stats.p90_steps,
            stats.mean_seconds.unwrap_or(f64::NAN) * 1e3,
        );
    }
    Ok(())
}

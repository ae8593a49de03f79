//! Recall probability P(d) of an ideal N=9 network: closed form, exhaustive
//! enumeration and Monte Carlo side by side.

use nnamm::network::NeuronConfig;
use nnamm::performance::{exact_curve, p_analytic, p_montecarlo};
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    let n = 9;
    let mut rng = seeded_rng(42);
    let etalon = SpinVector::random(n, &mut rng)?;
    let net = SynapticMatrix::train_ideal(&etalon, 1.0)?;
    let cfg = NeuronConfig::default();
    let ms: Vec<usize> = (0..=n).collect();
    let exact = exact_curve(&net, &etalon, &ms, &cfg)?;

    println!("etalon {etalon}");
    println!("{:>2} {:>6} {:>10} {:>10} {:>10}", "m", "d", "analytic", "exact", "mc");
    for p in exact.iter() {
        let mc = p_montecarlo(&net, &etalon, p.m, 20_000, &mut rng, &cfg)?;
        println!(
            "{:>2} {:>6.3} {:>10} {:>10} {:>10.4}",
            p.m,
            p.d(),
            p_analytic(n, p.m)?.to_string(),
            p.p_exact.to_string(),
            mc.p_float()
        );
    }
    Ok(())
}

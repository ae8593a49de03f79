//! Threshold sweep: acceptance of fully random inputs P(1) against recall
//! P(d) at a few distortions.

use nnamm::performance::roc_family;
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    let n = 9;
    let etalon = SpinVector::random(n, &mut seeded_rng(3))?;
    let net = SynapticMatrix::train_ideal(&etalon, 1.0)?;
    let thresholds = [0.0, 1.0, 2.0, 4.0, 6.0, 8.0];
    let ms = [3, 5, 7];
    println!("{:>4} {:>8} {:>8} {:>8} {:>8}", "l", "P(1)", "d=3/9", "d=5/9", "d=7/9");
    for row in roc_family(&net, &etalon, &thresholds, &ms)?.chunks(ms.len()) {
        print!("{:>4} {:>8.4}", row[0].threshold, row[0].p_1_f64());
        for p in row {
            print!(" {:>8.4}", p.p_d_f64());
        }
        println!();
    }
    Ok(())
}

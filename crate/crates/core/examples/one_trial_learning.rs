//! Hebbian learning from one presentation. A large learning parameter drives
//! the residual to zero in a single step; a small one does not.

use nnamm::network::{learn_one_trial, uniform_init};
use nnamm::{seeded_rng, SpinVector};

fn main() -> nnamm::Result<()> {
    let n = 40;
    for eta in [0.01, 0.1, 1.0, 400.0] {
        let mut rng = seeded_rng(11);
        let etalon = SpinVector::random(n, &mut rng)?;
        let init = uniform_init(n, eta, &mut rng)?;
        let out = learn_one_trial(&init, &etalon, eta, 3)?;
        let rs: Vec<String> = out.residuals.iter().map(|r| format!("{r:.3e}")).collect();
        println!("eta={eta:<6} residuals after 1..3 presentations: {}", rs.join(", "));
    }
    Ok(())
}

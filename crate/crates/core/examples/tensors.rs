//! Symmetry, trace and duality residuals of the conserved tensors at one on-shell jet.

use spincons::analysis::{random_family, random_point, rng_from_seed};
use spincons::currents::structure_residuals;
use spincons::solutions::jet_at;
use spincons::spinor::C64;

use rand::Rng;

fn main() -> spincons::Result<()> {
    let mut rng = rng_from_seed(3);
    for ts in 1..=3 {
        let f = random_family(&mut rng, ts, 3, 2.0 * std::f64::consts::PI, 2)?;
        let jet = jet_at(&f, &random_point(&mut rng, 1.0), 1);
        let vecs: Vec<[C64; 4]> = (0..2 + 2 * ts)
            .map(|_| std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        println!("2s = {ts}: {:?}", structure_residuals(&jet, &[vecs])?);
    }
    Ok(())
}

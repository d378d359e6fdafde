//! Electric/magnetic split of the E+iB wave and the plane-wave densities.

use spincons::analysis::{densities, eb_split, polarization_n_vector, split_residual};
use spincons::solutions::paper_wave;
use spincons::spinor::{C64, ONE, ZERO};

fn main() -> spincons::Result<()> {
    let x = [0.2, 0.1, -0.4, 0.3];
    for ts in [2, 4] {
        let f = paper_wave(ts, C64::new(2.0, 0.0), 3.0, 1)?;
        let eb = eb_split(&f, &x)?;
        println!("s = {}: |E| {:.4}  |B| {:.4}  split residual {:.2e}", ts / 2, eb.e.norm_inf(), eb.b.as_ref().map_or(0.0, |b| b.norm_inf()), split_residual(&f, &x)?);
        for (name, u) in [("n", polarization_n_vector()), ("x", [ZERO, ONE, ZERO, ZERO])] {
            let d = densities(&f, &[0.0; 4], &u)?;
            println!("  u = {name}: energy {:.3} zilch {:.3} chiral+ {:.3} chiral- {:.3}", d.energy, d.zilch, d.chiral_plus, d.chiral_minus);
        }
    }
    Ok(())
}

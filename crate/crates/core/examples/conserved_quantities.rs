//! Conserved quantities on the periodic box: time independence and the adjoint-symmetry factor.

use spincons::analysis::{conserved_quantity, random_paired_family, random_translation, rng_from_seed, TIME_SAMPLES};
use spincons::currents::{stress_energy, zeta_power, zilch, CurrentSpec};
use spincons::killing::translation;

fn main() -> spincons::Result<()> {
    let l = 2.0 * std::f64::consts::PI;
    let mut rng = rng_from_seed(9);
    let field = random_paired_family(&mut rng, 2, 3, l, 2)?;
    let z = random_translation(&mut rng);

    for (name, c) in [("energy-momentum", stress_energy(&field, &z, 0)?), ("zilch", zilch(&field, &z, 1)?)] {
        let q: Vec<f64> = TIME_SAMPLES.iter().map(|&t| conserved_quantity(&c, t, 12, l)).collect::<Result<_, _>>()?;
        println!("{name:<16} {q:?}");
    }

    let t = conserved_quantity(&stress_energy(&field, &z, 0)?, 0.0, 12, l)?;
    let u = CurrentSpec::U { xi: zeta_power(&z, 1), zeta: translation(&[1.0, 0.0, 0.0, 0.0]), order: 0, imaginary: false };
    let h = conserved_quantity(&u.build(&field)?, 0.0, 12, l)?;
    println!("C[T] = {t:.10}, 2 C[U] = {:.10}", 2.0 * h);
    Ok(())
}

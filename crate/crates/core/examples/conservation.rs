//! Divergence of each current kind on a random superposition, and of a perturbed one.

use spincons::analysis::{default_step, divergence_residual, random_family, random_point, random_spec, rng_from_seed};
use spincons::currents::CurrentKind;

fn main() -> spincons::Result<()> {
    let l = 2.0 * std::f64::consts::PI;
    let mut rng = rng_from_seed(42);
    for ts in [1, 3] {
        let field = random_family(&mut rng, ts, 3, l, 2)?;
        for kind in [CurrentKind::W, CurrentKind::T, CurrentKind::Z, CurrentKind::V] {
            let spec = random_spec(&mut rng, kind, ts, 1, false, l)?;
            let c = spec.build(&field)?;
            let broken = spec.build_perturbed(&field, 0.01)?;
            let x = random_point(&mut rng, 1.0);
            println!(
                "2s = {ts} {kind:?}: residual {:.2e}, perturbed {:.2e}",
                divergence_residual(&c, &x, default_step(&c)),
                divergence_residual(&broken, &x, default_step(&broken))
            );
        }
    }
    Ok(())
}

//! Plane-wave solutions, the weighted Lie derivative, and the field-equation residual.

use spincons::analysis::alpha_for_wavevector;
use spincons::killing::real_ckv_generators;
use spincons::solutions::{equation_residual, equation_scale, paper_wave, plane_wave, slie_n};
use spincons::spinor::C64;

fn main() -> spincons::Result<()> {
    let x = [0.3, -0.2, 0.5, 1.1];
    let alpha = alpha_for_wavevector(&[1.0, 2.0, -2.0])?;
    for ts in 1..=4 {
        let f = plane_wave(ts, &alpha, C64::new(0.8, -0.3), 1)?;
        println!("2s = {ts}: residual {:.2e}  scale {:.3}", equation_residual(&f, &x), equation_scale(&f, &x));
    }

    // boosts, dilation and special conformal maps keep solutions on shell
    let f = plane_wave(2, &alpha, C64::new(1.0, 0.0), -1)?;
    for g in real_ckv_generators().iter().skip(9) {
        let h = slie_n(&f, g, 2)?;
        println!("slie^2 along {:<9} residual {:.2e}", g.label, equation_residual(&h, &x) / equation_scale(&h, &x));
    }

    let w = paper_wave(2, C64::new(2.0, 0.0), 3.0, 1)?;
    println!("E+iB wave: residual {:.2e}", equation_residual(&w, &x));
    Ok(())
}

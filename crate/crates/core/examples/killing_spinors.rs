//! Killing spinors: generators, spanning-set bases against the dimension formula, JSON export.

use spincons::counting::killing_dim;
use spincons::killing::{cky_generators, killing_basis, killing_residual, ks_product, lie_killing, real_ckv_generators, KillingSpinorJson};

fn main() -> spincons::Result<()> {
    let v = real_ckv_generators();
    let y = cky_generators();
    println!("{} conformal Killing vectors, {} self-dual Killing-Yano spinors", v.len(), y.len());

    for (k, twol) in [(0, 2), (1, 0), (1, 2), (2, 0), (0, 4)] {
        let b = killing_basis(k, twol)?;
        println!("type ({k},{}): spanned {:>3}, formula {:>3}", k + twol, b.len(), killing_dim(k as u64, twol as u64));
    }

    // the Lie derivative of a Killing spinor along a CKV is again Killing
    let kappa = ks_product(&[v[6].clone(), y[3].clone()]);
    let moved = lie_killing(&kappa, &v[12])?;
    println!("residual after Lie derivative: {:.2e}", killing_residual(&moved, &[0.4, -1.0, 0.2, 0.7]));

    let json = serde_json::to_string(&KillingSpinorJson::from(&v[10])).expect("serializable");
    println!("{json}");
    Ok(())
}

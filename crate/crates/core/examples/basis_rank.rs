//! A basis of weight-0 currents and the rank of its conserved quantities.

use spincons::cli::basis_report;

fn main() -> spincons::Result<()> {
    for (ts, w) in [(1, 0), (1, 1), (2, 0)] {
        let r = basis_report(ts, w, 3, None, 12)?;
        let sv = &r.singular_values;
        println!(
            "2s = {ts}, w = {w}: {} currents, rank {} (singular values {:.3e} .. {:.3e})",
            r.currents.len(),
            r.rank,
            sv[0],
            sv[sv.len() - 1]
        );
    }
    Ok(())
}

//! Dimension formulas for Killing spinors and conserved currents, their cross-identities,
//! and enumeration of current bases at small spin and weight.

use serde::{Deserialize, Serialize};

use crate::currents::CurrentSpec;
use crate::error::{Error, Result};
use crate::killing::{real_ckv_generators, real_killing_basis, translation};

/// Complex dimension of the Killing spinors of type `(k, k + twol)`.
pub fn killing_dim(k: u64, twol: u64) -> u64 {
    (k + 1) * (k + 2) * (k + twol + 1) * (k + twol + 2) * (2 * k + twol + 3) / 12
}

/// Numbers of independent stress-energy, zilch and chiral currents of order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurrentCounts {
    pub t: u64,
    pub z: u64,
    pub v: u64,
}

pub fn current_counts(twice_spin: u64, n: u64) -> CurrentCounts {
    let s2 = twice_spin;
    let a = s2 + 2 * n;
    CurrentCounts {
        t: a * a * (a + 1) * (a + 1) * (2 * a + 1) / 12,
        z: (a + 2) * (a + 2) * (a + 1) * (a + 1) * (2 * a + 3) / 12,
        v: 2 * (n + 1) * (2 * n + 3) * (s2 + n + 1) * (2 * s2 + 2 * n + 3) * (2 * s2 + 4 * n + 5) / 3,
    }
}

/// Dimension of the space of currents of weight `w ≥ 1`.
pub fn weight_dims(twice_spin: u64, w: u64) -> u64 {
    let (s2, a) = (twice_spin, twice_spin + w);
    if w % 2 == 1 {
        a * a * (a + 1) * (a + 1) * (2 * a + 1) / 12
    } else {
        (2 * a + 1) * (2 * w * (w + 1) * (2 * s2 + w) * (2 * s2 + w + 1) + a * a * (a + 1) * (a + 1)) / 12
    }
}

/// One row of [`consistency_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: u64,
    /// From the weight formula.
    pub weight_dim: u64,
    /// The matching sum of current counts: `Z(n)` for `w = 2n+1`, `T(n) + V(n-1)` for `w = 2n`.
    pub count_sum: u64,
    /// The same sum from Killing spinor dimensions, chiral types counted over the reals.
    pub killing_sum: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub twice_spin: u64,
    pub counts: Vec<CurrentCounts>,
    pub weights: Vec<WeightRow>,
    pub ok: bool,
}

/// Current counts for `n = 0..=n_max` and the weight identities for `w = 1..=w_max`.
pub fn consistency_check(twice_spin: u64, n_max: u64, w_max: u64) -> CountTable {
    let s2 = twice_spin;
    let weights: Vec<WeightRow> = (1..=w_max)
        .map(|w| {
            let (count_sum, killing_sum) = if w % 2 == 1 {
                let n = (w - 1) / 2;
                (current_counts(s2, n).z, killing_dim(s2 + 2 * n, 0))
            } else {
                let n = w / 2;
                let c = current_counts(s2, n).t + current_counts(s2, n - 1).v;
                let k = killing_dim(s2 + 2 * n - 1, 0) + 2 * killing_dim(2 * (n - 1) + 1, 2 * s2);
                (c, k)
            };
            let weight_dim = weight_dims(s2, w);
            WeightRow { weight: w, weight_dim, count_sum, killing_sum, ok: weight_dim == count_sum && count_sum == killing_sum }
        })
        .collect();
    let ok = weights.iter().all(|r| r.ok);
    CountTable { twice_spin: s2, counts: (0..=n_max).map(|n| current_counts(s2, n)).collect(), weights, ok }
}

/// Largest weight [`enumerate_basis`] will instantiate.
pub const ENUMERATE_BOUND: u64 = 2;
/// Largest basis [`enumerate_basis`] will instantiate; a rank test needs more families than
/// currents, so cost grows quadratically.
pub const ENUMERATE_MAX_CURRENTS: u64 = 100;

/// Number of currents of weight `w`: `T(0)` at `w = 0`, otherwise [`weight_dims`].
pub fn weight_count(twice_spin: u64, w: u64) -> u64 {
    if w == 0 {
        current_counts(twice_spin, 0).t
    } else {
        weight_dims(twice_spin, w)
    }
}

/// Currents spanning the classes of weight `w`, one per basis Killing spinor.
///
/// Weight 0 pairs each real Killing spinor `ξ` of type `(2s-1, 2s-1)` with the quadratic
/// current `φ̄ ξ φ`. Weight 1 at `s = 1/2` uses the zilch current of each real conformal
/// Killing vector. Other cases are counted by formula only: their currents are not linear
/// in a single Killing spinor.
pub fn enumerate_basis(twice_spin: u64, w: u64) -> Result<Vec<CurrentSpec>> {
    if twice_spin == 0 || twice_spin > 4 {
        return Err(Error::Precondition("enumeration supports s = 1/2 .. 2".into()));
    }
    if w > ENUMERATE_BOUND {
        return Err(Error::SizeLimit(format!("weight {w} exceeds bound {ENUMERATE_BOUND}")));
    }
    let want = weight_count(twice_spin, w);
    if want > ENUMERATE_MAX_CURRENTS {
        return Err(Error::SizeLimit(format!("{want} currents exceed the enumeration cap {ENUMERATE_MAX_CURRENTS}")));
    }
    let specs: Vec<CurrentSpec> = match (twice_spin, w) {
        (_, 0) => {
            let anchor = translation(&[1.0, 0.0, 0.0, 0.0]);
            real_killing_basis(twice_spin as usize - 1)?
                .into_iter()
                .map(|xi| CurrentSpec::U { xi, zeta: anchor.clone(), order: 0, imaginary: false })
                .collect()
        }
        (1, 1) => real_ckv_generators().into_iter().map(|zeta| CurrentSpec::Z { zeta, order: 0 }).collect(),
        _ => {
            return Err(Error::Unsupported(format!(
                "weight {w} at 2s = {twice_spin} is counted by formula only ({} classes)",
                weight_count(twice_spin, w)
            )))
        }
    };
    let want = want as usize;
    if specs.len() != want {
        return Err(Error::Degenerate { rank: specs.len(), wanted: want });
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn killing_dims() {
        assert_eq!(killing_dim(0, 0), 1);
        assert_eq!(killing_dim(1, 0), 15);
        assert_eq!(killing_dim(0, 2), 10);
        assert_eq!(killing_dim(3, 0), 300);
        assert_eq!(killing_dim(1, 4), 189);
    }

    #[test]
    fn counts() {
        assert_eq!(current_counts(2, 0), CurrentCounts { t: 15, z: 84, v: 378 });
        assert_eq!(current_counts(1, 0), CurrentCounts { t: 1, z: 15, v: 140 });
        assert_eq!(current_counts(4, 0).t, 300);
        assert_eq!(weight_dims(2, 1), 84);
        assert_eq!(weight_dims(2, 2), 678);
        assert_eq!(weight_dims(1, 1), 15);
    }

    #[test]
    fn identities_hold() {
        for s2 in 1..=4 {
            let t = consistency_check(s2, 3, 8);
            assert!(t.ok, "{t:?}");
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_basis(1, 0).unwrap().len(), 1);
        assert_eq!(enumerate_basis(2, 0).unwrap().len(), 15);
        assert_eq!(enumerate_basis(1, 1).unwrap().len(), 15);
        assert!(matches!(enumerate_basis(2, 3), Err(Error::SizeLimit(_))));
        assert!(matches!(enumerate_basis(2, 1), Err(Error::Unsupported(_))));
        assert_eq!(enumerate_basis(3, 0).unwrap().len(), 84);
        assert!(matches!(enumerate_basis(4, 0), Err(Error::SizeLimit(_))));
    }
}

//! Numerical rank helpers.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::spinor::C64;

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Indices of a maximal independent subset, chosen greedily in order.
///
/// Classical Gram-Schmidt with one re-orthogonalization pass. A vector is rejected when
/// its component orthogonal to the accepted ones is below `tol` times its own norm.
pub fn greedy_independent(vecs: &[Vec<C64>], tol: f64) -> Vec<usize> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let mut picked = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        let n0 = norm(v);
        if n0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            let coeffs: Vec<C64> = basis.par_iter().map(|q| dot(q, &w)).collect();
            for (q, c) in basis.iter().zip(&coeffs) {
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let n1 = norm(&w);
        if n1 > tol * n0 {
            for x in w.iter_mut() {
                *x /= n1;
            }
            basis.push(w);
            picked.push(i);
        }
    }
    picked
}

/// Singular values of the matrix whose columns are `cols`, descending.
pub fn singular_values(cols: &[Vec<C64>]) -> Vec<f64> {
    if cols.is_empty() {
        return Vec::new();
    }
    let m = cols[0].len();
    let mat = DMatrix::from_fn(m, cols.len(), |r, c| cols[c][r]);
    let mut sv: Vec<f64> = mat.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank: singular values below `rel_tol` times the largest count as zero.
pub fn rank(cols: &[Vec<C64>], rel_tol: f64) -> usize {
    let sv = singular_values(cols);
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Rank of a real matrix given by rows.
pub fn real_rank(rows: &[Vec<f64>], rel_tol: f64) -> (usize, Vec<f64>) {
    if rows.is_empty() || rows[0].is_empty() {
        return (0, Vec::new());
    }
    let mat = DMatrix::from_fn(rows.len(), rows[0].len(), |r, c| rows[r][c]);
    let mut sv: Vec<f64> = mat.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv[0];
    let r = if top == 0.0 { 0 } else { sv.iter().filter(|&&s| s > rel_tol * top).count() };
    (r, sv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_columns_do_not_raise_rank() {
        let a = vec![C64::new(1.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, 0.0)];
        let b = vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(3.0, 0.0)];
        let cols = vec![a.clone(), b.clone(), a.iter().map(|z| z * C64::new(0.0, 2.0)).collect()];
        assert_eq!(rank(&cols, 1e-12), 2);
        assert_eq!(greedy_independent(&cols, 1e-12), vec![0, 1]);
    }
}

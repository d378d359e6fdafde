//! Two-component spinor algebra on totally symmetric spinors.
//!
//! A [`SymSpinor`] of valence `(p, q)` carries `p` unprimed and `q` primed
//! indices, all written in the lower position. Because the spinor is symmetric
//! within each index group, a component only depends on how many indices equal
//! `1` in the dyad `{o, ι}`, so the storage is a `(p+1) x (q+1)` grid.
//!
//! Conventions: `ε_{01} = ε^{01} = +1`, `ξ^A = ε^{AB} ξ_B`, `ξ_B = ξ^A ε_{AB}`.
//! With these, `o_A ι^A = 1`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Real Minkowski point `(t, x, y, z)`.
pub type Point4 = [f64; 4];

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Binomial coefficient as a float. Exact for the small arguments used here.
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymSpinor {
    p: usize,
    q: usize,
    comps: Vec<C64>,
}

impl SymSpinor {
    pub fn zeros(p: usize, q: usize) -> Self {
        SymSpinor { p, q, comps: vec![ZERO; (p + 1) * (q + 1)] }
    }

    pub fn scalar(z: C64) -> Self {
        SymSpinor { p: 0, q: 0, comps: vec![z] }
    }

    /// Build from a grid `g[i][j]`; the grid shape fixes the valence.
    pub fn from_grid(g: &[Vec<C64>]) -> Result<Self> {
        let p = g.len().checked_sub(1).ok_or_else(|| Error::Precondition("empty grid".into()))?;
        let q = g[0].len().checked_sub(1).ok_or_else(|| Error::Precondition("empty grid row".into()))?;
        if g.iter().any(|r| r.len() != q + 1) {
            return Err(Error::Precondition("ragged grid".into()));
        }
        if g.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Precondition("non-finite component".into()));
        }
        Ok(SymSpinor { p, q, comps: g.iter().flatten().copied().collect() })
    }

    pub fn from_fn(p: usize, q: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut s = Self::zeros(p, q);
        for i in 0..=p {
            for j in 0..=q {
                s.comps[i * (q + 1) + j] = f(i, j);
            }
        }
        s
    }

    /// Unit spinor with a single non-zero component `comps[i][j] = 1`.
    pub fn unit(p: usize, q: usize, i: usize, j: usize) -> Self {
        let mut s = Self::zeros(p, q);
        s.set(i, j, ONE);
        s
    }

    /// `o_A`.
    pub fn o() -> Self {
        Self::unit(1, 0, 0, 0)
    }
    /// `ι_A`.
    pub fn iota() -> Self {
        Self::unit(1, 0, 1, 0)
    }
    /// `ō_{A'}`.
    pub fn o_bar() -> Self {
        Self::unit(0, 1, 0, 0)
    }
    /// `ῑ_{A'}`.
    pub fn iota_bar() -> Self {
        Self::unit(0, 1, 0, 1)
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.p, self.q)
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.comps[i * (self.q + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.comps[i * (self.q + 1) + j] = z;
    }

    pub fn grid(&self) -> Vec<Vec<C64>> {
        self.comps.chunks(self.q + 1).map(|r| r.to_vec()).collect()
    }

    pub fn comps(&self) -> &[C64] {
        &self.comps
    }

    /// Component at an explicit index assignment (unprimed bits, then primed bits).
    pub fn at(&self, unprimed: &[u8], primed: &[u8]) -> C64 {
        assert_eq!(unprimed.len(), self.p);
        assert_eq!(primed.len(), self.q);
        let i = unprimed.iter().filter(|&&b| b == 1).count();
        let j = primed.iter().filter(|&&b| b == 1).count();
        self.get(i, j)
    }

    pub fn value(&self) -> C64 {
        assert_eq!((self.p, self.q), (0, 0), "value() on non-scalar spinor");
        self.comps[0]
    }

    pub fn norm_inf(&self) -> f64 {
        self.comps.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|z| *z == ZERO)
    }

    pub fn scale(&self, z: C64) -> Self {
        SymSpinor { p: self.p, q: self.q, comps: self.comps.iter().map(|w| w * z).collect() }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        SymSpinor { p: self.p, q: self.q, comps: self.comps.iter().map(|&w| f(w)).collect() }
    }

    /// Complex conjugate: valence `(p, q)` becomes `(q, p)`.
    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.q, self.p, |i, j| self.get(j, i).conj())
    }

    /// Fix one unprimed index to `a`, leaving valence `(p-1, q)`.
    pub fn slice_unprimed(&self, a: usize) -> Self {
        assert!(self.p >= 1);
        Self::from_fn(self.p - 1, self.q, |i, j| self.get(i + a, j))
    }

    /// Fix one primed index to `a`, leaving valence `(p, q-1)`.
    pub fn slice_primed(&self, a: usize) -> Self {
        assert!(self.q >= 1);
        Self::from_fn(self.p, self.q - 1, |i, j| self.get(i, j + a))
    }

    /// Components with every index raised (grid counts upper 1-indices).
    pub fn raised(&self) -> Self {
        let (p, q) = (self.p, self.q);
        Self::from_fn(p, q, |i, j| {
            let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            self.get(p - i, q - j) * s
        })
    }

    /// Inverse of [`raised`](Self::raised): interpret `self` as upper components and lower them.
    pub fn lowered(&self) -> Self {
        let (p, q) = (self.p, self.q);
        Self::from_fn(p, q, |i, j| {
            let s = if (p - i + q - j) % 2 == 0 { 1.0 } else { -1.0 };
            self.get(p - i, q - j) * s
        })
    }

    fn same_shape(&self, o: &Self) {
        assert_eq!((self.p, self.q), (o.p, o.q), "valence mismatch");
    }
}

impl Add for &SymSpinor {
    type Output = SymSpinor;
    fn add(self, o: &SymSpinor) -> SymSpinor {
        self.same_shape(o);
        SymSpinor { p: self.p, q: self.q, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }
}
impl Add for SymSpinor {
    type Output = SymSpinor;
    fn add(self, o: SymSpinor) -> SymSpinor {
        &self + &o
    }
}
impl Sub for &SymSpinor {
    type Output = SymSpinor;
    fn sub(self, o: &SymSpinor) -> SymSpinor {
        self.same_shape(o);
        SymSpinor { p: self.p, q: self.q, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }
}
impl Sub for SymSpinor {
    type Output = SymSpinor;
    fn sub(self, o: SymSpinor) -> SymSpinor {
        &self - &o
    }
}
impl AddAssign<&SymSpinor> for SymSpinor {
    fn add_assign(&mut self, o: &SymSpinor) {
        self.same_shape(o);
        for (a, b) in self.comps.iter_mut().zip(&o.comps) {
            *a += b;
        }
    }
}
impl SubAssign<&SymSpinor> for SymSpinor {
    fn sub_assign(&mut self, o: &SymSpinor) {
        self.same_shape(o);
        for (a, b) in self.comps.iter_mut().zip(&o.comps) {
            *a -= b;
        }
    }
}
impl Neg for &SymSpinor {
    type Output = SymSpinor;
    fn neg(self) -> SymSpinor {
        self.scale(-ONE)
    }
}
impl Neg for SymSpinor {
    type Output = SymSpinor;
    fn neg(self) -> SymSpinor {
        self.scale(-ONE)
    }
}
impl Mul<C64> for &SymSpinor {
    type Output = SymSpinor;
    fn mul(self, z: C64) -> SymSpinor {
        self.scale(z)
    }
}
impl Mul<C64> for SymSpinor {
    type Output = SymSpinor;
    fn mul(self, z: C64) -> SymSpinor {
        self.scale(z)
    }
}
impl Mul<f64> for &SymSpinor {
    type Output = SymSpinor;
    fn mul(self, x: f64) -> SymSpinor {
        self.scale(C64::new(x, 0.0))
    }
}
impl Mul<f64> for SymSpinor {
    type Output = SymSpinor;
    fn mul(self, x: f64) -> SymSpinor {
        self.scale(C64::new(x, 0.0))
    }
}

/// Symmetrized tensor product.
pub fn sym_outer(a: &SymSpinor, b: &SymSpinor) -> SymSpinor {
    tv(a, b, 0, 0)
}

/// `m` unprimed and `n` primed ε-contractions of `a` against `b`, then symmetrize.
///
/// Each contracted pair contributes `ε^{AB} a_{..A..} b_{..B..}`, i.e. `a_A b^A`.
pub fn transvect(a: &SymSpinor, b: &SymSpinor, m: usize, n: usize) -> Result<SymSpinor> {
    if m > a.p.min(b.p) || n > a.q.min(b.q) {
        return Err(Error::Precondition(format!(
            "cannot contract ({m},{n}) indices of ({},{}) with ({},{})",
            a.p, a.q, b.p, b.q
        )));
    }
    Ok(tv(a, b, m, n))
}

/// Unchecked [`transvect`]; panics on invalid counts.
pub(crate) fn tv(a: &SymSpinor, b: &SymSpinor, m: usize, n: usize) -> SymSpinor {
    assert!(m <= a.p.min(b.p) && n <= a.q.min(b.q), "invalid contraction");
    let (r1, r2) = (a.p - m, b.p - m);
    let (s1, s2) = (a.q - n, b.q - n);
    let (rp, rq) = (r1 + r2, s1 + s2);

    // contraction weights: Σ_k C(m,k)(-1)^k a[k+..] b[m-k+..]
    let wm: Vec<f64> = (0..=m).map(|k| binom(m, k) * if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let wn: Vec<f64> = (0..=n).map(|l| binom(n, l) * if l % 2 == 0 { 1.0 } else { -1.0 }).collect();

    // contracted core C[u1][u2][v1][v2]: free counts on each factor
    let mut core = vec![ZERO; (r1 + 1) * (r2 + 1) * (s1 + 1) * (s2 + 1)];
    let idx = |u1: usize, u2: usize, v1: usize, v2: usize| ((u1 * (r2 + 1) + u2) * (s1 + 1) + v1) * (s2 + 1) + v2;
    for u1 in 0..=r1 {
        for u2 in 0..=r2 {
            for v1 in 0..=s1 {
                for v2 in 0..=s2 {
                    let mut acc = ZERO;
                    for (k, wk) in wm.iter().enumerate() {
                        for (l, wl) in wn.iter().enumerate() {
                            acc += a.get(k + u1, l + v1) * b.get(m - k + u2, n - l + v2) * (wk * wl);
                        }
                    }
                    core[idx(u1, u2, v1, v2)] = acc;
                }
            }
        }
    }

    SymSpinor::from_fn(rp, rq, |u, v| {
        let mut acc = ZERO;
        let du = binom(rp, u);
        let dv = binom(rq, v);
        for u1 in u.saturating_sub(r2)..=u.min(r1) {
            let wu = binom(r1, u1) * binom(r2, u - u1) / du;
            for v1 in v.saturating_sub(s2)..=v.min(s1) {
                let wv = binom(s1, v1) * binom(s2, v - v1) / dv;
                acc += core[idx(u1, u - u1, v1, v - v1)] * (wu * wv);
            }
        }
        acc
    })
}

/// Symmetrized `n`-th power; `n = 0` gives the scalar `1`.
pub fn sym_power(a: &SymSpinor, n: usize) -> SymSpinor {
    let mut r = SymSpinor::scalar(ONE);
    for _ in 0..n {
        r = sym_outer(&r, a);
    }
    r
}

/// Complex conjugate, as a free function.
pub fn conjugate(a: &SymSpinor) -> SymSpinor {
    a.conjugate()
}

/// Soldering matrix `x^{AA'}` of a (possibly complex) vector, upper components.
pub fn vector_spinor_c(v: &[C64; 4]) -> SymSpinor {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let [t, x, y, z] = *v;
    SymSpinor::from_fn(1, 1, |i, j| {
        s * match (i, j) {
            (0, 0) => t + z,
            (0, 1) => x + I * y,
            (1, 0) => x - I * y,
            _ => t - z,
        }
    })
}

/// Real vector to the Hermitian upper matrix `v^{AA'}`.
pub fn vector_spinor(v: &[f64; 4]) -> SymSpinor {
    vector_spinor_c(&v.map(|r| C64::new(r, 0.0)))
}

/// Upper `(1,1)` components back to complex vector components.
pub fn spinor_vector_c(s: &SymSpinor) -> [C64; 4] {
    assert_eq!(s.valence(), (1, 1));
    let r = std::f64::consts::SQRT_2 / 2.0;
    let (a, b, cc, d) = (s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1));
    [(a + d) * r, (b + cc) * r, (b - cc) * r / I, (a - d) * r]
}

/// Inverse of [`vector_spinor`]. Fails if the matrix is not Hermitian.
pub fn spinor_vector(s: &SymSpinor) -> Result<[f64; 4]> {
    if s.valence() != (1, 1) {
        return Err(Error::Precondition("spinor_vector needs valence (1,1)".into()));
    }
    let herm = (s - &s.conjugate()).norm_inf();
    let scale = s.norm_inf().max(1.0);
    if herm > 1e-12 * scale {
        return Err(Error::NonReal(herm));
    }
    Ok(spinor_vector_c(s).map(|z| z.re))
}

/// Lower components `v_{AA'}` of a complex vector.
pub fn vector_lower_c(v: &[C64; 4]) -> SymSpinor {
    vector_spinor_c(v).lowered()
}

pub fn vector_lower(v: &[f64; 4]) -> SymSpinor {
    vector_spinor(v).lowered()
}

/// Complex vector components of a lower `(1,1)` spinor.
pub fn lower_vector_c(s: &SymSpinor) -> [C64; 4] {
    spinor_vector_c(&s.raised())
}

/// `2 det` of a `(1,1)` grid; equals `η(v, v)` for the soldering matrix.
pub fn det2(s: &SymSpinor) -> C64 {
    assert_eq!(s.valence(), (1, 1));
    (s.get(0, 0) * s.get(1, 1) - s.get(0, 1) * s.get(1, 0)) * 2.0
}

/// `η(v, w) = ε_{AB} ε_{A'B'} v^{AA'} w^{BB'}`, signature `(+,-,-,-)`.
pub fn minkowski(v: &[C64; 4], w: &[C64; 4]) -> C64 {
    v[0] * w[0] - v[1] * w[1] - v[2] * w[2] - v[3] * w[3]
}

/// Soldering form `e^a_{AA'}` for `∂_{AA'} = Σ_a e^a_{AA'} ∂_a`, as lower `(1,1)` grids.
pub fn solder(a: usize) -> SymSpinor {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let g: [[C64; 2]; 2] = match a {
        0 => [[c(s, 0.0), ZERO], [ZERO, c(s, 0.0)]],
        1 => [[ZERO, c(s, 0.0)], [c(s, 0.0), ZERO]],
        2 => [[ZERO, c(0.0, -s)], [c(0.0, s), ZERO]],
        3 => [[c(s, 0.0), ZERO], [ZERO, c(-s, 0.0)]],
        _ => panic!("coordinate index out of range"),
    };
    SymSpinor::from_fn(1, 1, |i, j| g[i][j])
}

/// Covector `k_a` from its lower spinor `k_{AA'} = Σ_a e^a_{AA'} k_a`.
pub fn covector_from_lower(k: &SymSpinor) -> [C64; 4] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b, cc, d) = (k.get(0, 0), k.get(0, 1), k.get(1, 0), k.get(1, 1));
    [(a + d) * r, (b + cc) * r, I * (b - cc) * r, (a - d) * r]
}

/// Lower spinor `Σ_a e^a_{AA'} k_a` of a covector.
pub fn lower_from_covector(k: &[C64; 4]) -> SymSpinor {
    let mut s = SymSpinor::zeros(1, 1);
    for (a, ka) in k.iter().enumerate() {
        s += &solder(a).scale(*ka);
    }
    s
}

/// Unit timelike normal `t_{AA'}` (lower).
pub fn t_lower() -> SymSpinor {
    vector_lower(&[1.0, 0.0, 0.0, 0.0])
}

/// Brute-force dense tensors, kept as an independent oracle for the compressed algebra.
pub mod dense {
    use super::*;

    /// All-lower dense tensor: `p` unprimed then `q` primed binary indices, bit `k` of the
    /// flat index is index slot `k`.
    #[derive(Clone, Debug)]
    pub struct Dense {
        pub p: usize,
        pub q: usize,
        pub data: Vec<C64>,
    }

    impl Dense {
        pub fn from_sym(s: &SymSpinor) -> Self {
            let (p, q) = s.valence();
            let data = (0..1usize << (p + q))
                .map(|ix| {
                    let i = (ix & ((1 << p) - 1)).count_ones() as usize;
                    let j = (ix >> p).count_ones() as usize;
                    s.get(i, j)
                })
                .collect();
            Dense { p, q, data }
        }

        fn bit(ix: usize, k: usize) -> usize {
            (ix >> k) & 1
        }

        /// Tensor product with unprimed slots of `self` first, then `b`'s unprimed,
        /// then primed of `self`, then primed of `b`.
        pub fn outer(&self, b: &Dense) -> Dense {
            let (p, q) = (self.p + b.p, self.q + b.q);
            let mut data = vec![ZERO; 1 << (p + q)];
            for (ix, d) in data.iter_mut().enumerate() {
                let au = ix & ((1 << self.p) - 1);
                let bu = (ix >> self.p) & ((1 << b.p) - 1);
                let ap = (ix >> p) & ((1 << self.q) - 1);
                let bp = (ix >> (p + self.q)) & ((1 << b.q) - 1);
                *d = self.data[au | (ap << self.p)] * b.data[bu | (bp << b.p)];
            }
            Dense { p, q, data }
        }

        /// Contract unprimed slot `i` with unprimed slot `j` via `ε^{ij}` (likewise primed
        /// when `primed`), removing both slots.
        pub fn contract(&self, i: usize, j: usize, primed: bool) -> Dense {
            let (np, nq) = if primed { (self.p, self.q - 2) } else { (self.p - 2, self.q) };
            let (off, width) = if primed { (self.p, self.q) } else { (0, self.p) };
            let (si, sj) = (off + i, off + j);
            let total = self.p + self.q;
            let mut data = vec![ZERO; 1 << (np + nq)];
            for (rix, d) in data.iter_mut().enumerate() {
                // re-insert two zero bits at positions si < sj (sorted)
                let (lo, hi) = if si < sj { (si, sj) } else { (sj, si) };
                let mut full = 0usize;
                let mut src = 0usize;
                for k in 0..total {
                    if k == lo || k == hi {
                        continue;
                    }
                    full |= Self::bit(rix, src) << k;
                    src += 1;
                }
                let _ = width;
                let mut acc = ZERO;
                for (bi, bj, e) in [(0usize, 1usize, 1.0), (1, 0, -1.0)] {
                    let ix = full | (bi << si) | (bj << sj);
                    acc += self.data[ix] * e;
                }
                *d = acc;
            }
            Dense { p: np, q: nq, data }
        }

        /// Symmetrize within each index group and compress.
        pub fn symmetrize(&self) -> SymSpinor {
            let (p, q) = (self.p, self.q);
            let mut sum = vec![ZERO; (p + 1) * (q + 1)];
            let mut cnt = vec![0usize; (p + 1) * (q + 1)];
            for (ix, v) in self.data.iter().enumerate() {
                let i = (ix & ((1 << p) - 1)).count_ones() as usize;
                let j = (ix >> p).count_ones() as usize;
                sum[i * (q + 1) + j] += v;
                cnt[i * (q + 1) + j] += 1;
            }
            SymSpinor::from_fn(p, q, |i, j| sum[i * (q + 1) + j] / cnt[i * (q + 1) + j] as f64)
        }
    }

    /// Oracle for [`transvect`]: outer product, then contract the last `m` unprimed slots of
    /// `a` with the first `m` of `b` (and likewise primed), then symmetrize.
    pub fn transvect(a: &SymSpinor, b: &SymSpinor, m: usize, n: usize) -> SymSpinor {
        let mut t = Dense::from_sym(a).outer(&Dense::from_sym(b));
        let (ap, aq) = a.valence();
        // slot positions shift after each contraction; always contract a's last free slot
        // against b's first remaining slot.
        let mut ai = ap;
        for _ in 0..m {
            ai -= 1;
            t = t.contract(ai, ai + 1, false);
        }
        let mut aj = aq;
        for _ in 0..n {
            aj -= 1;
            t = t.contract(aj, aj + 1, true);
        }
        t.symmetrize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &SymSpinor, b: &SymSpinor, tol: f64) -> bool {
        (a - b).norm_inf() <= tol
    }

    #[test]
    fn basis_contractions() {
        let (o, i) = (SymSpinor::o(), SymSpinor::iota());
        assert_eq!(transvect(&o, &i, 1, 0).unwrap().value(), ONE);
        assert_eq!(transvect(&i, &o, 1, 0).unwrap().value(), -ONE);
        assert_eq!(transvect(&o, &o, 1, 0).unwrap().value(), ZERO);
        let oi = sym_outer(&o, &i);
        assert_eq!(oi.grid(), vec![vec![ZERO], vec![c(0.5, 0.0)], vec![ZERO]]);
        assert!((transvect(&oi, &oi, 2, 0).unwrap().value() - c(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(sym_outer(&o, &o).grid(), vec![vec![ONE], vec![ZERO], vec![ZERO]]);
    }

    #[test]
    fn over_contraction_is_an_error() {
        assert!(transvect(&SymSpinor::o(), &SymSpinor::o_bar(), 1, 0).is_err());
    }

    #[test]
    fn raise_lower_round_trip() {
        let s = SymSpinor::from_fn(3, 2, |i, j| c(i as f64 + 0.3, j as f64 - 1.1));
        assert!(close(&s.raised().lowered(), &s, 0.0));
        // v_0 = -v^1, v_1 = v^0
        let up = SymSpinor::from_fn(1, 0, |i, _| c(i as f64 + 2.0, 0.0));
        let lo = up.lowered();
        assert_eq!(lo.get(0, 0), -up.get(1, 0));
        assert_eq!(lo.get(1, 0), up.get(0, 0));
    }

    #[test]
    fn soldering_examples() {
        let t = vector_spinor(&[1.0, 0.0, 0.0, 0.0]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((t.get(0, 0).re - r).abs() < 1e-16 && t.get(0, 1) == ZERO);
        assert!((det2(&t).re - 1.0).abs() < 1e-15);
        let k = vector_spinor(&[1.0, 0.0, 0.0, 1.0]);
        assert!((k.get(0, 0).re - 2f64.sqrt()).abs() < 1e-15);
        assert!(det2(&k).norm() < 1e-15);
        let bad = SymSpinor::from_fn(1, 1, |i, j| if (i, j) == (0, 1) { ONE } else { ZERO });
        assert!(matches!(spinor_vector(&bad), Err(Error::NonReal(_))));
    }

    #[test]
    fn metric_from_epsilon() {
        let v = [1.3, -0.2, 0.7, 0.4];
        let w = [0.1, 0.9, -1.1, 2.0];
        let vc = v.map(|x| c(x, 0.0));
        let wc = w.map(|x| c(x, 0.0));
        let eta = transvect(&vector_lower(&v), &vector_lower(&w), 1, 1).unwrap().value();
        assert!((eta - minkowski(&vc, &wc)).norm() < 1e-14);
    }

    #[test]
    fn solder_matches_covector_map() {
        let k = [c(0.3, 0.0), c(-1.0, 0.0), c(0.25, 0.0), c(2.0, 0.0)];
        let back = covector_from_lower(&lower_from_covector(&k));
        for a in 0..4 {
            assert!((back[a] - k[a]).norm() < 1e-15);
        }
        // α = o gives k_a = (1,0,0,1)/√2
        let ko = covector_from_lower(&sym_outer(&SymSpinor::o(), &SymSpinor::o_bar()));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ko[0].re - r).abs() < 1e-15 && (ko[3].re - r).abs() < 1e-15);
    }

    #[test]
    fn dense_oracle_small_cases() {
        let a = SymSpinor::from_fn(2, 1, |i, j| c(1.0 + i as f64, 0.5 * j as f64 - 0.2));
        let b = SymSpinor::from_fn(3, 2, |i, j| c(0.3 * j as f64, i as f64 - 1.0));
        for m in 0..=2 {
            for n in 0..=1 {
                let x = transvect(&a, &b, m, n).unwrap();
                let y = dense::transvect(&a, &b, m, n);
                assert!(close(&x, &y, 1e-13), "m={m} n={n}");
            }
        }
    }
}

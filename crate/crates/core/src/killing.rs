//! Killing spinors on Minkowski space: conformal Killing vectors, self-dual conformal
//! Killing-Yano tensors, their symmetrized products and Lie derivatives.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{greedy_independent, rank};
use crate::poly::SpinorPoly;
use crate::spinor::{lower_vector_c, sym_outer, tv, Point4, SymSpinor, C64, I, ONE};

#[derive(Clone, Debug, PartialEq)]
pub struct KillingSpinor {
    pub k: usize,
    pub l: usize,
    pub poly: SpinorPoly,
    /// Type `(k,k)` and invariant under conjugation.
    pub is_real: bool,
    /// Type `(0,2)` building block.
    pub is_self_dual_cky: bool,
    /// Generator indices this spinor was built from, if any.
    pub label: String,
}

impl KillingSpinor {
    pub fn from_poly(poly: SpinorPoly) -> Self {
        let (k, l) = poly.valence();
        KillingSpinor { k, l, poly, is_real: false, is_self_dual_cky: false, label: String::new() }
    }

    pub fn zero(k: usize, l: usize) -> Self {
        Self::from_poly(SpinorPoly::zero(k, l))
    }

    pub fn eval(&self, x: &Point4) -> SymSpinor {
        self.poly.eval(x)
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = Self::from_poly(self.poly.add(&o.poly));
        r.is_real = self.is_real && o.is_real;
        r
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut r = Self::from_poly(self.poly.scale(z));
        r.is_real = self.is_real && z.im == 0.0;
        r.label = self.label.clone();
        r
    }

    pub fn conjugate(&self) -> Self {
        let mut r = Self::from_poly(self.poly.conjugate());
        r.is_real = self.is_real;
        r
    }

    /// Coefficient-level residual `max |∂_{(B'(B} κ_{⋯)⋯)}|`, exact over all monomials.
    pub fn residual_coeffs(&self) -> f64 {
        self.poly.sym_grad().norm_inf()
    }

    /// Flattened polynomial coefficients, for rank tests.
    pub fn coefficient_vector(&self, monos: &[[u8; 4]]) -> Vec<C64> {
        let (p, q) = self.poly.valence();
        let width = (p + 1) * (q + 1);
        let mut v = vec![C64::new(0.0, 0.0); monos.len() * width];
        for (m, s) in self.poly.terms() {
            if let Ok(ix) = monos.binary_search(m) {
                v[ix * width..(ix + 1) * width].copy_from_slice(s.comps());
            }
        }
        v
    }
}

/// Serializable form: valence and a sparse list of monomials with coefficient grids.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KillingSpinorJson {
    pub k: usize,
    pub l: usize,
    pub label: String,
    pub monomials: Vec<([u8; 4], Vec<Vec<[f64; 2]>>)>,
}

impl From<&KillingSpinor> for KillingSpinorJson {
    fn from(ks: &KillingSpinor) -> Self {
        KillingSpinorJson {
            k: ks.k,
            l: ks.l,
            label: ks.label.clone(),
            monomials: ks
                .poly
                .terms()
                .map(|(m, s)| (*m, s.grid().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()))
                .collect(),
        }
    }
}

/// All monomials of total degree `≤ d` in four variables, sorted.
pub fn monomials_up_to(d: usize) -> Vec<[u8; 4]> {
    let mut v = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                for e in 0..=d - a - b - c {
                    v.push([a as u8, b as u8, c as u8, e as u8]);
                }
            }
        }
    }
    v.sort();
    v
}

/// Conformal Killing vector
/// `ζ = α1 + α2 x + α4·x + α3·x + 2(x·α5) x - (x·x) α5` (lower indices).
pub fn ckv(a1: &SymSpinor, a2: C64, a3: &SymSpinor, a4: &SymSpinor, a5: &SymSpinor) -> KillingSpinor {
    assert_eq!(a1.valence(), (1, 1));
    assert_eq!(a3.valence(), (0, 2));
    assert_eq!(a4.valence(), (2, 0));
    assert_eq!(a5.valence(), (1, 1));
    let x = SpinorPoly::coordinate_spinor();
    let c5 = SpinorPoly::constant(a5.clone());
    let xc = x.bilinear(&c5, |u, v| tv(u, v, 1, 1));
    let xx = x.bilinear(&x, |u, v| tv(u, v, 1, 1));
    let poly = SpinorPoly::constant(a1.clone())
        .add(&x.scale(a2))
        .add(&SpinorPoly::constant(a4.clone()).bilinear(&x, |u, v| tv(u, v, 1, 0)))
        .add(&SpinorPoly::constant(a3.clone()).bilinear(&x, |u, v| tv(u, v, 0, 1)))
        .add(&xc.bilinear(&x, |u, v| v.scale(u.value() * 2.0)))
        .sub(&xx.bilinear(&c5, |u, v| v.scale(u.value())));
    let real = (a1 - &a1.conjugate()).norm_inf() == 0.0
        && a2.im == 0.0
        && (a3 - &a4.conjugate()).norm_inf() == 0.0
        && (a5 - &a5.conjugate()).norm_inf() == 0.0;
    let mut ks = KillingSpinor::from_poly(poly);
    ks.is_real = real;
    ks
}

/// Self-dual conformal Killing-Yano spinor `Y = β1 + β2·x + β3·(x⊙x)`.
pub fn cky(b1: &SymSpinor, b2: &SymSpinor, b3: &SymSpinor) -> KillingSpinor {
    assert_eq!(b1.valence(), (0, 2));
    assert_eq!(b2.valence(), (1, 1));
    assert_eq!(b3.valence(), (2, 0));
    let x = SpinorPoly::coordinate_spinor();
    let xx = x.bilinear(&x, sym_outer);
    let poly = SpinorPoly::constant(b1.clone())
        .add(&SpinorPoly::constant(b2.clone()).bilinear(&x, |u, v| tv(u, v, 1, 0)))
        .add(&SpinorPoly::constant(b3.clone()).bilinear(&xx, |u, v| tv(u, v, 2, 0)));
    let mut ks = KillingSpinor::from_poly(poly);
    ks.is_self_dual_cky = true;
    ks
}

/// Constant vector field along a real or complex vector.
pub fn translation(v: &[f64; 4]) -> KillingSpinor {
    let z = SymSpinor::zeros;
    ckv(&crate::spinor::vector_lower(v), C64::new(0.0, 0.0), &z(0, 2), &z(2, 0), &z(1, 1))
}

/// The dilation field `x^a ∂_a`.
pub fn dilation() -> KillingSpinor {
    let z = SymSpinor::zeros;
    ckv(&z(1, 1), ONE, &z(0, 2), &z(2, 0), &z(1, 1))
}

/// Symmetrized product of Killing spinors; valences add.
pub fn ks_product(factors: &[KillingSpinor]) -> KillingSpinor {
    assert!(!factors.is_empty(), "empty product");
    let mut poly = factors[0].poly.clone();
    for f in &factors[1..] {
        poly = poly.bilinear(&f.poly, sym_outer);
    }
    let mut ks = KillingSpinor::from_poly(poly);
    ks.is_real = factors.iter().all(|f| f.is_real);
    ks.is_self_dual_cky = factors.len() == 1 && factors[0].is_self_dual_cky;
    ks.label = factors.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("*");
    ks
}

/// Max-norm of the symmetrized gradient at a point.
pub fn killing_residual(ks: &KillingSpinor, x: &Point4) -> f64 {
    ks.poly.sym_grad().eval(x).norm_inf()
}

pub(crate) fn require_ckv(z: &KillingSpinor) -> Result<()> {
    if z.valence() != (1, 1) {
        return Err(Error::Precondition("conformal Killing vector must have valence (1,1)".into()));
    }
    let r = z.residual_coeffs();
    if r > 1e-10 * z.poly.norm_inf().max(1.0) {
        return Err(Error::NotKilling(r));
    }
    Ok(())
}

/// Pieces of `∂_{AA'} ζ_{BB'} = ε_{AB} λ̄_{A'B'} + ε_{A'B'} λ_{AB} + (θ/4) ε_{AB} ε_{A'B'}`.
pub struct RotationData {
    /// Vector components `ζ^a` as scalar polynomials.
    pub vector: [SpinorPoly; 4],
    pub lambda: SpinorPoly,
    pub lambda_bar: SpinorPoly,
    pub theta: SpinorPoly,
}

pub fn rotation_data(z: &KillingSpinor) -> RotationData {
    assert_eq!(z.valence(), (1, 1));
    let vector = std::array::from_fn(|a| z.poly.map_coeffs(0, 0, |s| SymSpinor::scalar(lower_vector_c(s)[a])));
    let d = z.poly.spinor_grad();
    // N_A(B) = Σ ε^{A'B'} ∂_{AA'} ζ_{BB'}
    let n: Vec<SpinorPoly> = (0..2)
        .map(|a| d[a][0].map_coeffs(1, 0, |s| s.slice_primed(1)).sub(&d[a][1].map_coeffs(1, 0, |s| s.slice_primed(0))))
        .collect();
    // N'_{A'}(B') = Σ ε^{AB} ∂_{AA'} ζ_{BB'}
    let nb: Vec<SpinorPoly> = (0..2)
        .map(|ap| {
            d[0][ap].map_coeffs(0, 1, |s| s.slice_unprimed(1)).sub(&d[1][ap].map_coeffs(0, 1, |s| s.slice_unprimed(0)))
        })
        .collect();
    let half = C64::new(0.5, 0.0);
    let mut lambda = SpinorPoly::zero(2, 0);
    let mut lambda_bar = SpinorPoly::zero(0, 2);
    for a in 0..2 {
        let e = SymSpinor::unit(1, 0, a, 0);
        lambda = lambda.add(&n[a].map_coeffs(2, 0, |s| sym_outer(&e, s).scale(half)));
        let eb = SymSpinor::unit(0, 1, 0, a);
        lambda_bar = lambda_bar.add(&nb[a].map_coeffs(0, 2, |s| sym_outer(&eb, s).scale(half)));
    }
    let theta = n[0]
        .map_coeffs(0, 0, |s| SymSpinor::scalar(s.get(1, 0)))
        .sub(&n[1].map_coeffs(0, 0, |s| SymSpinor::scalar(s.get(0, 0))));
    RotationData { vector, lambda, lambda_bar, theta }
}

pub(crate) fn lie_poly(poly: &SpinorPoly, z: &KillingSpinor, weight: f64) -> SpinorPoly {
    let (p, q) = poly.valence();
    let rd = rotation_data(z);
    let mut r = SpinorPoly::zero(p, q);
    for a in 0..4 {
        r = r.add(&poly.deriv(a).bilinear(&rd.vector[a], |f, c| f.scale(c.value())));
    }
    if p > 0 {
        let c = C64::new(p as f64, 0.0);
        r = r.add(&poly.bilinear(&rd.lambda, |f, l| tv(f, l, 1, 0).scale(c)));
    }
    if q > 0 {
        let c = C64::new(q as f64, 0.0);
        r = r.add(&poly.bilinear(&rd.lambda_bar, |f, l| tv(f, l, 0, 1).scale(c)));
    }
    if weight != 0.0 {
        let w = C64::new(weight, 0.0);
        r = r.add(&poly.bilinear(&rd.theta, |f, t| f.scale(t.value() * w)));
    }
    r
}

/// Lie derivative of a Killing spinor along a conformal Killing vector.
pub fn lie_killing(ks: &KillingSpinor, z: &KillingSpinor) -> Result<KillingSpinor> {
    require_ckv(z)?;
    // all indices of a Killing spinor are upper
    let w = -crate::solutions::INDEX_WEIGHT * (ks.k + ks.l) as f64;
    let mut r = KillingSpinor::from_poly(lie_poly(&ks.poly, z, w));
    r.is_real = ks.is_real && z.is_real;
    Ok(r)
}

/// Vector-field bracket `[u, v]^a = u^b ∂_b v^a - v^b ∂_b u^a` of two type-(1,1) spinors.
pub fn vector_bracket(u: &KillingSpinor, v: &KillingSpinor) -> KillingSpinor {
    let ru = rotation_data(u);
    let rv = rotation_data(v);
    let mut poly = SpinorPoly::zero(1, 1);
    for a in 0..4 {
        poly = poly.add(&v.poly.deriv(a).bilinear(&ru.vector[a], |f, c| f.scale(c.value())));
        poly = poly.sub(&u.poly.deriv(a).bilinear(&rv.vector[a], |f, c| f.scale(c.value())));
    }
    let mut r = KillingSpinor::from_poly(poly);
    r.is_real = u.is_real && v.is_real;
    r
}

fn tetrad() -> [(&'static str, SymSpinor); 4] {
    let (o, i) = (SymSpinor::o(), SymSpinor::iota());
    let (ob, ib) = (SymSpinor::o_bar(), SymSpinor::iota_bar());
    [
        ("k", sym_outer(&o, &ob)),
        ("l", sym_outer(&i, &ib)),
        ("m", sym_outer(&o, &ib)),
        ("mb", sym_outer(&i, &ob)),
    ]
}

fn dyad2() -> [(&'static str, SymSpinor); 3] {
    let (o, i) = (SymSpinor::o(), SymSpinor::iota());
    [("oo", sym_outer(&o, &o)), ("oi", sym_outer(&o, &i)), ("ii", sym_outer(&i, &i))]
}

/// The 15 complex conformal Killing vectors built from the spinor dyad.
pub fn ckv_generators() -> Vec<KillingSpinor> {
    let z = SymSpinor::zeros;
    let mut v = Vec::new();
    for (n, t) in tetrad() {
        let mut g = ckv(&t, C64::new(0.0, 0.0), &z(0, 2), &z(2, 0), &z(1, 1));
        g.label = format!("T[{n}]");
        v.push(g);
    }
    for (n, a) in dyad2() {
        let mut g = ckv(&z(1, 1), C64::new(0.0, 0.0), &z(0, 2), &a, &z(1, 1));
        g.label = format!("R[{n}]");
        v.push(g);
        let mut g = ckv(&z(1, 1), C64::new(0.0, 0.0), &a.conjugate(), &z(2, 0), &z(1, 1));
        g.label = format!("Rb[{n}]");
        v.push(g);
    }
    let mut d = dilation();
    d.label = "D".into();
    v.push(d);
    for (n, t) in tetrad() {
        let mut g = ckv(&z(1, 1), C64::new(0.0, 0.0), &z(0, 2), &z(2, 0), &t);
        g.label = format!("K[{n}]");
        v.push(g);
    }
    v
}

/// The 15 real conformal Killing vectors: translations, Lorentz generators, dilation,
/// special conformal transformations.
pub fn real_ckv_generators() -> Vec<KillingSpinor> {
    let z = SymSpinor::zeros;
    let axes = ["t", "x", "y", "z"];
    let mut v = Vec::new();
    for (a, n) in axes.iter().enumerate() {
        let mut e = [0.0; 4];
        e[a] = 1.0;
        let mut g = translation(&e);
        g.label = format!("P{n}");
        v.push(g);
    }
    for (n, a) in dyad2() {
        for (tag, ph) in [("re", ONE), ("im", I)] {
            let a4 = a.scale(ph);
            let mut g = ckv(&z(1, 1), C64::new(0.0, 0.0), &a4.conjugate(), &a4, &z(1, 1));
            g.label = format!("L[{n},{tag}]");
            v.push(g);
        }
    }
    let mut d = dilation();
    d.label = "D".into();
    v.push(d);
    for (a, n) in axes.iter().enumerate() {
        let mut e = [0.0; 4];
        e[a] = 1.0;
        let mut g = ckv(&z(1, 1), C64::new(0.0, 0.0), &z(0, 2), &z(2, 0), &crate::spinor::vector_lower(&e));
        g.label = format!("K{n}");
        v.push(g);
    }
    v
}

/// The 10 self-dual conformal Killing-Yano generators.
pub fn cky_generators() -> Vec<KillingSpinor> {
    let z = SymSpinor::zeros;
    let mut v = Vec::new();
    for (n, a) in dyad2() {
        let mut g = cky(&a.conjugate(), &z(1, 1), &z(2, 0));
        g.label = format!("Y1[{n}]");
        v.push(g);
    }
    for (n, t) in tetrad() {
        let mut g = cky(&z(0, 2), &t, &z(2, 0));
        g.label = format!("Y2[{n}]");
        v.push(g);
    }
    for (n, a) in dyad2() {
        let mut g = cky(&z(0, 2), &z(1, 1), &a);
        g.label = format!("Y3[{n}]");
        v.push(g);
    }
    v
}

/// Multisets of size `r` from `0..n`, lexicographic.
pub fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Default bound on `k + l` for [`killing_basis`].
pub const BASIS_BOUND: usize = 4;

/// A linearly independent spanning set of Killing spinors of type `(k, k + twol)`,
/// selected from symmetrized products of the generator vectors and Killing-Yano spinors.
pub fn killing_basis(k: usize, twol: usize) -> Result<Vec<KillingSpinor>> {
    killing_basis_from(k, twol, &ckv_generators(), BASIS_BOUND)
}

/// Same as [`killing_basis`] for type `(k,k)` using real generators, so every element is real.
pub fn real_killing_basis(k: usize) -> Result<Vec<KillingSpinor>> {
    killing_basis_from(k, 0, &real_ckv_generators(), BASIS_BOUND)
}

pub fn killing_basis_from(k: usize, twol: usize, vgens: &[KillingSpinor], bound: usize) -> Result<Vec<KillingSpinor>> {
    if twol % 2 != 0 {
        return Err(Error::Precondition("the valence gap must be even".into()));
    }
    let l = twol / 2;
    if k + l > bound {
        return Err(Error::SizeLimit(format!("k + l = {} exceeds bound {bound}", k + l)));
    }
    if k + l == 0 {
        let mut c = KillingSpinor::from_poly(SpinorPoly::constant(SymSpinor::scalar(ONE)));
        c.is_real = true;
        c.label = "1".into();
        return Ok(vec![c]);
    }
    let ygens = cky_generators();
    let mut combos = Vec::new();
    for a in multisets(vgens.len(), k) {
        for b in multisets(ygens.len(), l) {
            combos.push((a.clone(), b));
        }
    }
    let cands: Vec<KillingSpinor> = combos
        .par_iter()
        .map(|(a, b)| {
            let fs: Vec<KillingSpinor> =
                a.iter().map(|&i| vgens[i].clone()).chain(b.iter().map(|&j| ygens[j].clone())).collect();
            ks_product(&fs)
        })
        .collect();
    let monos = monomials_up_to(2 * (k + l));
    let vecs: Vec<Vec<C64>> = cands.par_iter().map(|c| c.coefficient_vector(&monos)).collect();
    let picked = greedy_independent(&vecs, 1e-9);
    let sel: Vec<Vec<C64>> = picked.iter().map(|&i| vecs[i].clone()).collect();
    let r = rank(&sel, 1e-9);
    if r != picked.len() {
        return Err(Error::Degenerate { rank: r, wanted: picked.len() });
    }
    Ok(picked.into_iter().map(|i| cands[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::c;

    #[test]
    fn generators_are_killing() {
        for g in ckv_generators().iter().chain(&real_ckv_generators()).chain(&cky_generators()) {
            assert!(g.residual_coeffs() < 1e-13, "{}", g.label);
        }
        assert!(real_ckv_generators().iter().all(|g| g.is_real));
    }

    #[test]
    fn dilation_divergence_is_four() {
        let rd = rotation_data(&dilation());
        assert!((rd.theta.eval(&[0.3, 0.1, 0.0, 2.0]).value() - c(4.0, 0.0)).norm() < 1e-14);
        assert!(rd.lambda.is_zero() && rd.lambda_bar.is_zero());
    }

    #[test]
    fn broken_quadratic_is_not_killing() {
        // x⊙x is Killing; doubling its t² coefficient breaks that
        let x = SpinorPoly::coordinate_spinor();
        let xx = x.bilinear(&x, sym_outer);
        let t2 = xx.terms().find(|(m, _)| **m == [2, 0, 0, 0]).unwrap().1.clone();
        let ks = KillingSpinor::from_poly(xx.add(&SpinorPoly::monomial([2, 0, 0, 0], t2)));
        assert!(KillingSpinor::from_poly(xx).residual_coeffs() < 1e-14);
        let pt = [0.5, 1.0, -0.5, 0.25];
        let scale = ks.eval(&pt).norm_inf();
        assert!(killing_residual(&ks, &pt) > 0.1 * scale);
    }

    #[test]
    fn lie_of_killing_spinors() {
        let vs = real_ckv_generators();
        let ys = cky_generators();
        for z in vs.iter().step_by(2) {
            for v in &vs {
                let l = lie_killing(v, z).unwrap();
                assert!(l.poly.sub(&vector_bracket(z, v).poly).norm_inf() < 1e-13);
            }
            for y in &ys {
                assert!(lie_killing(y, z).unwrap().residual_coeffs() < 1e-13);
            }
        }
    }

    #[test]
    fn small_basis_counts() {
        assert_eq!(killing_basis(0, 0).unwrap().len(), 1);
        assert_eq!(killing_basis(1, 0).unwrap().len(), 15);
        assert_eq!(killing_basis(0, 2).unwrap().len(), 10);
        assert!(matches!(killing_basis(5, 0), Err(Error::SizeLimit(_))));
    }
}


//! Polynomials in the Minkowski coordinates with symmetric-spinor coefficients.

use std::collections::BTreeMap;

use crate::spinor::{solder, sym_outer, Point4, SymSpinor, C64, ONE};

/// Exponents of `(t, x, y, z)`.
pub type Mono = [u8; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorPoly {
    p: usize,
    q: usize,
    terms: BTreeMap<Mono, SymSpinor>,
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn mono_eval(m: &Mono, x: &Point4) -> f64 {
    let mut r = 1.0;
    for a in 0..4 {
        for _ in 0..m[a] {
            r *= x[a];
        }
    }
    r
}

impl SpinorPoly {
    pub fn zero(p: usize, q: usize) -> Self {
        SpinorPoly { p, q, terms: BTreeMap::new() }
    }

    pub fn constant(s: SymSpinor) -> Self {
        let (p, q) = s.valence();
        let mut r = Self::zero(p, q);
        r.add_term([0; 4], &s);
        r
    }

    pub fn monomial(m: Mono, s: SymSpinor) -> Self {
        let (p, q) = s.valence();
        let mut r = Self::zero(p, q);
        r.add_term(m, &s);
        r
    }

    /// The scalar coordinate function `x^a`.
    pub fn coordinate(a: usize) -> Self {
        let mut m = [0u8; 4];
        m[a] = 1;
        Self::monomial(m, SymSpinor::scalar(ONE))
    }

    /// Lower coordinate spinor `x_{AA'}` as a linear polynomial.
    pub fn coordinate_spinor() -> Self {
        let mut r = Self::zero(1, 1);
        for a in 0..4 {
            let mut m = [0u8; 4];
            m[a] = 1;
            r.add_term(m, &solder_vec(a));
        }
        r
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &SymSpinor)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, s: &SymSpinor) {
        assert_eq!(s.valence(), (self.p, self.q), "valence mismatch");
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(|| SymSpinor::zeros(s.p(), s.q()));
        *e += s;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, s) in &o.terms {
            r.add_term(*m, s);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-ONE))
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map_coeffs(self.p, self.q, |s| s.scale(z))
    }

    pub fn map_coeffs(&self, p: usize, q: usize, f: impl Fn(&SymSpinor) -> SymSpinor) -> Self {
        let mut r = Self::zero(p, q);
        for (m, s) in &self.terms {
            r.add_term(*m, &f(s));
        }
        r
    }

    /// Conjugate coefficients; coordinates are real.
    pub fn conjugate(&self) -> Self {
        self.map_coeffs(self.q, self.p, |s| s.conjugate())
    }

    pub fn eval(&self, x: &Point4) -> SymSpinor {
        let mut r = SymSpinor::zeros(self.p, self.q);
        for (m, s) in &self.terms {
            r += &s.scale(C64::new(mono_eval(m, x), 0.0));
        }
        r
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.terms.values().map(|s| s.norm_inf()).fold(0.0, f64::max)
    }

    pub fn deriv(&self, a: usize) -> Self {
        let mut r = Self::zero(self.p, self.q);
        for (m, s) in &self.terms {
            if m[a] > 0 {
                let mut n = *m;
                n[a] -= 1;
                r.add_term(n, &s.scale(C64::new(m[a] as f64, 0.0)));
            }
        }
        r
    }

    /// `∂_{BB'}` of the polynomial, indexed `[B][B']`.
    pub fn spinor_grad(&self) -> [[Self; 2]; 2] {
        let d: Vec<Self> = (0..4).map(|a| self.deriv(a)).collect();
        let comp = |b: usize, bp: usize| {
            let mut r = Self::zero(self.p, self.q);
            for (a, da) in d.iter().enumerate() {
                let e = solder(a).get(b, bp);
                if e != C64::new(0.0, 0.0) {
                    r = r.add(&da.scale(e));
                }
            }
            r
        };
        [[comp(0, 0), comp(0, 1)], [comp(1, 0), comp(1, 1)]]
    }

    /// Totally symmetrized gradient, valence `(p+1, q+1)`.
    pub fn sym_grad(&self) -> Self {
        let g = self.spinor_grad();
        let mut r = Self::zero(self.p + 1, self.q + 1);
        for b in 0..2 {
            for bp in 0..2 {
                let e = SymSpinor::unit(1, 1, b, bp);
                r = r.add(&g[b][bp].map_coeffs(self.p + 1, self.q + 1, |s| sym_outer(&e, s)));
            }
        }
        r
    }

    /// Product through a bilinear coefficient operation.
    pub fn bilinear(&self, o: &Self, f: impl Fn(&SymSpinor, &SymSpinor) -> SymSpinor) -> Self {
        let mut out: Option<Self> = None;
        for (m1, s1) in &self.terms {
            for (m2, s2) in &o.terms {
                let v = f(s1, s2);
                let r = out.get_or_insert_with(|| Self::zero(v.p(), v.q()));
                r.add_term(mono_add(m1, m2), &v);
            }
        }
        out.unwrap_or_else(|| {
            // valence of an empty product: probe with zero coefficients
            let v = f(&SymSpinor::zeros(self.p, self.q), &SymSpinor::zeros(o.p, o.q));
            Self::zero(v.p(), v.q())
        })
    }

    /// Drop coefficients below `tol` in max-norm.
    pub fn pruned(&self, tol: f64) -> Self {
        let mut r = Self::zero(self.p, self.q);
        for (m, s) in &self.terms {
            if s.norm_inf() > tol {
                r.add_term(*m, s);
            }
        }
        r
    }
}

// lower soldering matrix of the unit vector along coordinate `a`
fn solder_vec(a: usize) -> SymSpinor {
    let mut v = [0.0; 4];
    v[a] = 1.0;
    crate::spinor::vector_lower(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{transvect, vector_lower};

    #[test]
    fn coordinate_spinor_evaluates_to_soldered_point() {
        let x = [0.4, -1.2, 0.3, 2.2];
        let s = SpinorPoly::coordinate_spinor().eval(&x);
        assert!((&s - &vector_lower(&x)).norm_inf() < 1e-15);
    }

    #[test]
    fn divergence_of_position_is_four() {
        // ∂_{AA'} x^{AA'} = ε^{AB} ε^{A'B'} ∂_{AA'} x_{BB'}
        let g = SpinorPoly::coordinate_spinor().spinor_grad();
        let mut div = C64::new(0.0, 0.0);
        for b in 0..2 {
            for bp in 0..2 {
                let d = g[b][bp].eval(&[0.0; 4]);
                let e = SymSpinor::unit(1, 1, b, bp);
                div += transvect(&e, &d, 1, 1).unwrap().value();
            }
        }
        assert!((div - C64::new(4.0, 0.0)).norm() < 1e-14, "{div}");
    }

    #[test]
    fn product_rule() {
        let a = SpinorPoly::coordinate(0).add(&SpinorPoly::coordinate(2).scale(C64::new(0.0, 2.0)));
        let b = SpinorPoly::coordinate(0).bilinear(&a, |u, v| sym_outer(u, v));
        let d = b.deriv(0);
        let x = [0.7, 0.0, -0.4, 0.0];
        let want = C64::new(2.0 * 0.7, 2.0 * -0.4);
        assert!((d.eval(&x).value() - want).norm() < 1e-15);
    }
}

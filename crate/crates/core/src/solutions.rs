//! Exact massless spin-s solutions built from polynomial-times-null-exponential terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::killing::{rotation_data, KillingSpinor};
use crate::poly::SpinorPoly;
use crate::spinor::{
    covector_from_lower, solder, sym_outer, sym_power, tv, Point4, SymSpinor, C64, I, ONE, ZERO,
};

/// One term `poly(x) · exp(iσ k·x)` with `k` a real covector.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyExpTerm {
    pub poly: SpinorPoly,
    pub k: [f64; 4],
    pub sign: i8,
}

impl PolyExpTerm {
    /// `σ k_a`, the covector in the exponent.
    pub fn wave(&self) -> [f64; 4] {
        let s = self.sign as f64;
        self.k.map(|v| s * v)
    }

    fn phase(&self, x: &Point4) -> C64 {
        let w = self.wave();
        let th = w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + w[3] * x[3];
        C64::new(th.cos(), th.sin())
    }
}

/// A finite sum of polynomial-times-exponential terms with coefficients of fixed valence.
///
/// Solutions of the spin-s equation have valence `(2s, 0)`; adjoint solutions `(1, 2s-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    p: usize,
    q: usize,
    terms: Vec<PolyExpTerm>,
}

pub type SolutionField = Field;
pub type AdjointField = Field;

impl Field {
    pub fn zero(p: usize, q: usize) -> Self {
        Field { p, q, terms: Vec::new() }
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> &[PolyExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add a term, merging with an existing term of the same exponential.
    pub fn push(&mut self, t: PolyExpTerm) {
        assert_eq!(t.poly.valence(), (self.p, self.q), "valence mismatch");
        if t.poly.is_zero() {
            return;
        }
        let w = t.wave();
        if let Some(e) = self.terms.iter_mut().find(|e| e.wave() == w) {
            e.poly = e.poly.add(&t.poly);
        } else {
            self.terms.push(t);
        }
        self.terms.retain(|e| !e.poly.is_zero());
    }

    pub fn add(&self, o: &Field) -> Field {
        let mut r = self.clone();
        for t in &o.terms {
            r.push(t.clone());
        }
        r
    }

    pub fn sub(&self, o: &Field) -> Field {
        self.add(&o.scale(-ONE))
    }

    pub fn scale(&self, z: C64) -> Field {
        let mut r = Field::zero(self.p, self.q);
        for t in &self.terms {
            r.push(PolyExpTerm { poly: t.poly.scale(z), ..t.clone() });
        }
        r
    }

    /// Pointwise complex conjugate (valence swaps, exponent sign flips).
    pub fn conjugate(&self) -> Field {
        Field {
            p: self.q,
            q: self.p,
            terms: self
                .terms
                .iter()
                .map(|t| PolyExpTerm { poly: t.poly.conjugate(), k: t.k, sign: -t.sign })
                .collect(),
        }
    }

    /// Apply a linear coefficient map to every term.
    pub fn map_coeffs(&self, p: usize, q: usize, f: impl Fn(&SymSpinor) -> SymSpinor) -> Field {
        let mut r = Field::zero(p, q);
        for t in &self.terms {
            r.push(PolyExpTerm { poly: t.poly.map_coeffs(p, q, &f), k: t.k, sign: t.sign });
        }
        r
    }

    /// Multiply by a polynomial through a bilinear coefficient product `f(field, poly)`.
    pub fn mul_poly(&self, poly: &SpinorPoly, f: impl Fn(&SymSpinor, &SymSpinor) -> SymSpinor) -> Field {
        let probe = f(&SymSpinor::zeros(self.p, self.q), &SymSpinor::zeros(poly.valence().0, poly.valence().1));
        let mut r = Field::zero(probe.p(), probe.q());
        for t in &self.terms {
            r.push(PolyExpTerm { poly: t.poly.bilinear(poly, &f), k: t.k, sign: t.sign });
        }
        r
    }

    pub fn eval(&self, x: &Point4) -> SymSpinor {
        let mut r = SymSpinor::zeros(self.p, self.q);
        for t in &self.terms {
            r += &t.poly.eval(x).scale(t.phase(x));
        }
        r
    }

    /// Exact coordinate derivative `∂_a`.
    pub fn deriv(&self, a: usize) -> Field {
        let mut r = Field::zero(self.p, self.q);
        for t in &self.terms {
            let w = t.wave()[a];
            let mut poly = t.poly.deriv(a);
            if w != 0.0 {
                poly = poly.add(&t.poly.scale(I * w));
            }
            r.push(PolyExpTerm { poly, k: t.k, sign: t.sign });
        }
        r
    }

    /// `∂_{BB'}` as fields, indexed `[B][B']`.
    pub fn spinor_grad(&self) -> [[Field; 2]; 2] {
        let d: Vec<Field> = (0..4).map(|a| self.deriv(a)).collect();
        let comp = |b: usize, bp: usize| {
            let mut r = Field::zero(self.p, self.q);
            for (a, da) in d.iter().enumerate() {
                let e = solder(a).get(b, bp);
                if e != ZERO {
                    r = r.add(&da.scale(e));
                }
            }
            r
        };
        [[comp(0, 0), comp(0, 1)], [comp(1, 0), comp(1, 1)]]
    }

    /// Totally symmetrized gradient, valence `(p+1, q+1)`.
    pub fn sym_grad(&self) -> Field {
        let g = self.spinor_grad();
        let mut r = Field::zero(self.p + 1, self.q + 1);
        for (b, row) in g.iter().enumerate() {
            for (bp, gf) in row.iter().enumerate() {
                let e = SymSpinor::unit(1, 1, b, bp);
                r = r.add(&gf.map_coeffs(self.p + 1, self.q + 1, |s| sym_outer(&e, s)));
            }
        }
        r
    }

    /// Value and coordinate derivatives at a point, without building new fields.
    pub fn value_and_partials(&self, x: &Point4) -> (SymSpinor, [SymSpinor; 4]) {
        let mut v = SymSpinor::zeros(self.p, self.q);
        let mut d: [SymSpinor; 4] = std::array::from_fn(|_| SymSpinor::zeros(self.p, self.q));
        for t in &self.terms {
            let e = t.phase(x);
            let pv = t.poly.eval(x).scale(e);
            let w = t.wave();
            for a in 0..4 {
                d[a] += &t.poly.deriv(a).eval(x).scale(e);
                if w[a] != 0.0 {
                    d[a] += &pv.scale(I * w[a]);
                }
            }
            v += &pv;
        }
        (v, d)
    }

    /// `∂_{BB'}` evaluated at a point, indexed `[B][B']`.
    pub fn grad_at(&self, x: &Point4) -> [[SymSpinor; 2]; 2] {
        let (_, d) = self.value_and_partials(x);
        grad_from_partials(&d)
    }

    /// Rough magnitude used to normalize residuals: largest coefficient times phase scale.
    pub fn scale_at(&self, x: &Point4) -> f64 {
        let (v, d) = self.value_and_partials(x);
        d.iter().map(|s| s.norm_inf()).fold(v.norm_inf(), f64::max).max(f64::MIN_POSITIVE)
    }

    /// Largest wave-covector component over all terms.
    pub fn max_wavenumber(&self) -> f64 {
        self.terms.iter().flat_map(|t| t.k.map(f64::abs)).fold(0.0, f64::max)
    }

    /// Largest coordinate degree over all terms.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.poly.degree()).max().unwrap_or(0)
    }
}

pub(crate) fn grad_from_partials(d: &[SymSpinor; 4]) -> [[SymSpinor; 2]; 2] {
    let (p, q) = d[0].valence();
    std::array::from_fn(|b| {
        std::array::from_fn(|bp| {
            let mut r = SymSpinor::zeros(p, q);
            for (a, da) in d.iter().enumerate() {
                let e = solder(a).get(b, bp);
                if e != ZERO {
                    r += &da.scale(e);
                }
            }
            r
        })
    })
}

/// Symmetrize a split gradient `[B][B']` of valence-`(p,q)` values into `(p+1, q+1)`.
pub fn symmetrize_grad(g: &[[SymSpinor; 2]; 2]) -> SymSpinor {
    let (p, q) = g[0][0].valence();
    let mut r = SymSpinor::zeros(p + 1, q + 1);
    for b in 0..2 {
        for bp in 0..2 {
            r += &sym_outer(&SymSpinor::unit(1, 1, b, bp), &g[b][bp]);
        }
    }
    r
}

/// Wave covector `k_a` of the null mode `k_{AA'} = α_A ᾱ_{A'}`.
pub fn null_covector(alpha: &SymSpinor) -> [f64; 4] {
    let k = sym_outer(alpha, &alpha.conjugate());
    covector_from_lower(&k).map(|z| z.re)
}

fn check_alpha(alpha: &SymSpinor) -> Result<()> {
    if alpha.valence() != (1, 0) {
        return Err(Error::Precondition("α must have valence (1,0)".into()));
    }
    if alpha.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    Ok(())
}

fn single_mode(coeff: SymSpinor, alpha: &SymSpinor, sign: i8) -> Field {
    let (p, q) = coeff.valence();
    let mut f = Field::zero(p, q);
    f.push(PolyExpTerm { poly: SpinorPoly::constant(coeff), k: null_covector(alpha), sign });
    f
}

/// `f · α^{⊙2s} · exp(iσ k·x)` with `k_{AA'} = α_A ᾱ_{A'}`.
pub fn plane_wave(twice_spin: usize, alpha: &SymSpinor, f: C64, sign: i8) -> Result<SolutionField> {
    check_alpha(alpha)?;
    if twice_spin == 0 {
        return Err(Error::Precondition("spin must be at least 1/2".into()));
    }
    Ok(single_mode(sym_power(alpha, twice_spin).scale(f), alpha, sign))
}

/// Adjoint solution `f · α_A ᾱ_{A'_1} ⋯ ᾱ_{A'_{2s-1}} · exp(iσ k·x)`.
pub fn adjoint_wave(twice_spin: usize, alpha: &SymSpinor, f: C64, sign: i8) -> Result<AdjointField> {
    check_alpha(alpha)?;
    if twice_spin == 0 {
        return Err(Error::Precondition("spin must be at least 1/2".into()));
    }
    let coeff = sym_outer(alpha, &sym_power(&alpha.conjugate(), twice_spin - 1)).scale(f);
    Ok(single_mode(coeff, alpha, sign))
}

/// Adjoint solution `f · α_A β̄_{A'_1} ⋯ β̄_{A'_{2s-1}} · exp(iσ k·x)`, `k = αᾱ`. Any `β`
/// solves the adjoint equation since `α^A α_A = 0`; with `β = α` this is [`adjoint_wave`],
/// whose elementary current pairs trivially with the mode it shares a wave vector with.
pub fn adjoint_wave_polarized(twice_spin: usize, alpha: &SymSpinor, beta: &SymSpinor, f: C64, sign: i8) -> Result<AdjointField> {
    check_alpha(alpha)?;
    check_alpha(beta)?;
    if twice_spin == 0 {
        return Err(Error::Precondition("spin must be at least 1/2".into()));
    }
    let coeff = sym_outer(alpha, &sym_power(&beta.conjugate(), twice_spin - 1)).scale(f);
    Ok(single_mode(coeff, alpha, sign))
}

/// Integer-spin wave along `+z` whose electric/magnetic combination is
/// `E + iB = f n^{⊙s} e^{iσω(t-z)}`, `n = x̂ + i ŷ`.
pub fn paper_wave(twice_spin: usize, f: C64, omega: f64, sign: i8) -> Result<SolutionField> {
    if twice_spin == 0 || twice_spin % 2 != 0 {
        return Err(Error::Unsupported("the E+iB wave is defined for integer spin only".into()));
    }
    if !(omega > 0.0) {
        return Err(Error::Precondition("ω must be positive".into()));
    }
    let s = twice_spin / 2;
    // α ∝ ι gives k_a = ω(1,0,0,-1)
    let alpha = SymSpinor::iota().scale(C64::new(2f64.powf(0.25) * omega.sqrt(), 0.0));
    // The field carries the opposite phase sign: E+iB is built from φ̄.
    let unit = single_mode(sym_power(&SymSpinor::iota(), twice_spin), &alpha, -sign);
    let origin = [0.0; 4];
    let eb = crate::analysis::eb_combination(&unit, &origin)?;
    let target = sym_power(&crate::analysis::polarization_n(), s);
    // E+iB is antilinear in the amplitude c: eb(c φ) = c̄ eb(φ)
    let (i, j) = (0..=s)
        .flat_map(|i| (0..=s).map(move |j| (i, j)))
        .max_by(|a, b| target.get(a.0, a.1).norm().total_cmp(&target.get(b.0, b.1).norm()))
        .unwrap();
    let cbar = f * target.get(i, j) / eb.get(i, j);
    Ok(unit.scale(cbar.conj()))
}

/// Duality rotation `φ ↦ -iφ`.
pub fn duality(field: &SolutionField) -> SolutionField {
    field.scale(-I)
}

/// Symmetrized derivatives `derivs[p]` of valence `(2s+p, p)` at a point.
#[derive(Clone, Debug)]
pub struct Jet {
    pub twice_spin: usize,
    pub derivs: Vec<SymSpinor>,
    /// Unsymmetrized first derivative `∂_{BB'} φ`, indexed `[B][B']`.
    pub grad: [[SymSpinor; 2]; 2],
}

pub fn jet_at(field: &Field, x: &Point4, order: usize) -> Jet {
    let (p, q) = field.valence();
    let mut derivs = vec![field.eval(x)];
    let mut cur = field.clone();
    for _ in 0..order {
        cur = cur.sym_grad();
        derivs.push(cur.eval(x));
    }
    Jet { twice_spin: p + q, derivs, grad: field.grad_at(x) }
}

/// Max-norm of `∂^{A}_{A'} φ_{A⋯}` (valence `(p,0)`) or of the symmetrized adjoint divergence.
pub fn equation_residual(field: &Field, x: &Point4) -> f64 {
    let g = field.grad_at(x);
    equation_from_grad(field.valence(), &g).norm_inf()
}

/// Field equation (valence `(p,0)`, `p ≥ 1`) or adjoint equation (valence `(1,q)`) from a split gradient.
pub(crate) fn equation_from_grad(valence: (usize, usize), g: &[[SymSpinor; 2]; 2]) -> SymSpinor {
    let (p, q) = valence;
    if q == 0 || p > 1 {
        // ε^{AB} ∂_{B A'} φ_{A⋯}: one value per A'
        let mut out = SymSpinor::zeros(p - 1, 1);
        for ap in 0..2 {
            let v = &g[1][ap].slice_unprimed(0) - &g[0][ap].slice_unprimed(1);
            out += &sym_outer(&SymSpinor::unit(0, 1, 0, ap), &v);
        }
        out
    } else {
        // ε^{AB} ∂_{B(B'} ω_{A A'⋯)}
        let mut out = SymSpinor::zeros(0, q + 1);
        for bp in 0..2 {
            let v = &g[1][bp].slice_unprimed(0) - &g[0][bp].slice_unprimed(1);
            out += &sym_outer(&SymSpinor::unit(0, 1, 0, bp), &v);
        }
        out
    }
}

/// Normalization scale for [`equation_residual`].
pub fn equation_scale(field: &Field, x: &Point4) -> f64 {
    field.scale_at(x)
}

/// Lie derivative `ζ^a ∂_a + p λ + q λ̄ + w θ`, where `θ = ∂·ζ` and `λ`, `λ̄` are the
/// trace-free parts of `∂ζ`. The spinorial Lie derivative has `w = (lower - upper)/8`.
pub(crate) fn lie_with(field: &Field, zeta: &KillingSpinor, weight: f64) -> Field {
    let (p, q) = field.valence();
    let rd = rotation_data(zeta);
    let mut r = Field::zero(p, q);
    for a in 0..4 {
        let comp = &rd.vector[a];
        if comp.is_zero() {
            continue;
        }
        r = r.add(&field.deriv(a).mul_poly(comp, |f, z| f.scale(z.value())));
    }
    if p > 0 {
        let c = C64::new(p as f64, 0.0);
        r = r.add(&field.mul_poly(&rd.lambda, |f, l| tv(f, l, 1, 0).scale(c)));
    }
    if q > 0 {
        let c = C64::new(q as f64, 0.0);
        r = r.add(&field.mul_poly(&rd.lambda_bar, |f, l| tv(f, l, 0, 1).scale(c)));
    }
    if weight != 0.0 {
        let w = C64::new(weight, 0.0);
        r = r.add(&field.mul_poly(&rd.theta, |f, t| f.scale(t.value() * w)));
    }
    r
}

/// Weight of one lower index in the spinorial Lie derivative; upper indices carry the opposite.
pub const INDEX_WEIGHT: f64 = 0.125;

/// Conformal weight term `¼ ∂·ζ` of `ŝL_ζ`.
pub const CONFORMAL_WEIGHT: f64 = 0.25;

fn slie_weight(valence: (usize, usize)) -> f64 {
    let (p, q) = valence;
    if q == 0 {
        CONFORMAL_WEIGHT + INDEX_WEIGHT * p as f64
    } else {
        // adjoint solutions ω_A^{A'⋯}: one lower index, q upper
        CONFORMAL_WEIGHT + INDEX_WEIGHT * (1.0 - q as f64)
    }
}

/// Conformally weighted Lie derivative `ŝL_ζ = L_ζ + ¼ ∂·ζ`.
///
/// Accepts solutions (valence `(2s,0)`) and adjoint solutions (valence `(1,2s-1)`); both
/// are mapped to solutions of the same equation.
pub fn slie(field: &Field, zeta: &KillingSpinor) -> Result<Field> {
    crate::killing::require_ckv(zeta)?;
    let (p, q) = field.valence();
    if q > 0 && p != 1 {
        return Err(Error::Precondition(format!("ŝL needs valence (2s,0) or (1,q), got ({p},{q})")));
    }
    Ok(slie_unchecked(field, zeta))
}

/// [`slie`] without the Killing check; used to build deliberately broken currents.
pub(crate) fn slie_unchecked(field: &Field, zeta: &KillingSpinor) -> Field {
    lie_with(field, zeta, slie_weight(field.valence()))
}

/// `(ŝL_ζ)^n φ`.
pub fn slie_n(field: &SolutionField, zeta: &KillingSpinor, n: usize) -> Result<SolutionField> {
    let mut f = field.clone();
    for _ in 0..n {
        f = slie(&f, zeta)?;
    }
    Ok(f)
}

/// Serializable description of a superposition of null modes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub twice_spin: usize,
    pub alpha: [f64; 4],
    pub amp: [f64; 2],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeFamily {
    pub version: u32,
    pub modes: Vec<ModeSpec>,
}

impl ModeFamily {
    pub fn build(&self) -> Result<SolutionField> {
        let mut f: Option<Field> = None;
        for m in &self.modes {
            let alpha = SymSpinor::from_fn(1, 0, |i, _| C64::new(m.alpha[2 * i], m.alpha[2 * i + 1]));
            let w = plane_wave(m.twice_spin, &alpha, C64::new(m.amp[0], m.amp[1]), m.sign)?;
            f = Some(match f {
                None => w,
                Some(g) => {
                    if g.valence() != w.valence() {
                        return Err(Error::SpinMismatch { expected: g.valence().0, found: w.valence().0 });
                    }
                    g.add(&w)
                }
            });
        }
        f.ok_or_else(|| Error::Precondition("empty mode family".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::killing::{real_ckv_generators, translation, vector_bracket};

    fn test_alpha() -> SymSpinor {
        SymSpinor::from_fn(1, 0, |i, _| C64::new(0.6 + i as f64, 0.2 - 0.3 * i as f64))
    }

    #[test]
    fn slie_preserves_both_equations() {
        let x = [0.3, -0.4, 0.7, 0.2];
        for ts in 1..=4 {
            let f = plane_wave(ts, &test_alpha(), C64::new(1.0, 0.5), 1).unwrap();
            let w = adjoint_wave(ts, &test_alpha(), C64::new(-0.2, 0.9), -1).unwrap();
            for g in real_ckv_generators() {
                for h in [&f, &w] {
                    let l = slie(h, &g).unwrap();
                    assert!(equation_residual(&l, &x) < 1e-12 * l.scale_at(&x), "{} ts={ts}", g.label);
                }
            }
        }
    }

    #[test]
    fn slie_along_translation_is_a_derivative() {
        let f = plane_wave(3, &test_alpha(), ONE, 1).unwrap();
        let l = slie(&f, &translation(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let x = [0.1, 0.2, -0.3, 0.4];
        assert!((&l.eval(&x) - &f.deriv(0).eval(&x)).norm_inf() < 1e-13);
    }

    #[test]
    fn slie_commutator_is_bracket() {
        let gens = real_ckv_generators();
        let f = plane_wave(2, &test_alpha(), ONE, 1).unwrap();
        let x = [0.5, -0.1, 0.3, 0.8];
        for (a, b) in [(0, 14), (5, 13), (4, 10), (11, 12)] {
            let (u, v) = (&gens[a], &gens[b]);
            let lhs = slie(&slie(&f, v).unwrap(), u).unwrap().sub(&slie(&slie(&f, u).unwrap(), v).unwrap());
            let rhs = lie_with(&f, &vector_bracket(u, v), slie_weight((2, 0)));
            let d = (&lhs.eval(&x) - &rhs.eval(&x)).norm_inf();
            assert!(d < 1e-11 * lhs.scale_at(&x).max(1.0), "{} {} {d}", u.label, v.label);
        }
    }

    #[test]
    fn spin_half_wave_at_origin() {
        let f = plane_wave(1, &SymSpinor::o(), ONE, 1).unwrap();
        assert_eq!(f.eval(&[0.0; 4]), SymSpinor::o());
        assert!(equation_residual(&f, &[0.3, 1.0, -2.0, 0.5]) < 1e-15);
    }

    #[test]
    fn zero_amplitude_and_zero_alpha() {
        assert!(plane_wave(2, &SymSpinor::o(), ZERO, 1).unwrap().is_zero());
        assert!(matches!(plane_wave(2, &SymSpinor::zeros(1, 0), ONE, 1), Err(Error::ZeroSpinor)));
    }

    #[test]
    fn jet_of_plane_wave() {
        let alpha = SymSpinor::from_fn(1, 0, |i, _| C64::new(0.3 + i as f64, -0.4));
        let f = C64::new(0.7, 0.2);
        let w = plane_wave(3, &alpha, f, -1).unwrap();
        let x = [0.1, 0.2, -0.3, 0.4];
        let j = jet_at(&w, &x, 1);
        let k = null_covector(&alpha);
        let ph = -(k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3]);
        let want = sym_outer(&sym_power(&alpha, 4), &alpha.conjugate()).scale(-I * f * C64::new(ph.cos(), ph.sin()));
        assert!((&j.derivs[1] - &want).norm_inf() < 1e-14);
    }

    #[test]
    fn corrupted_mode_fails_equation() {
        let mut f = Field::zero(2, 0);
        f.push(PolyExpTerm {
            poly: SpinorPoly::constant(sym_power(&SymSpinor::o(), 2)),
            k: [1.0, 0.0, 0.0, 0.0],
            sign: 1,
        });
        let x = [0.0; 4];
        assert!(equation_residual(&f, &x) > 0.1 * equation_scale(&f, &x));
    }

    #[test]
    fn adjoint_wave_satisfies_adjoint_equation() {
        let alpha = SymSpinor::from_fn(1, 0, |i, _| C64::new(1.0 - i as f64, 0.5));
        for ts in 1..=4 {
            let w = adjoint_wave(ts, &alpha, ONE, 1).unwrap();
            assert_eq!(w.valence(), (1, ts - 1));
            let x = [0.4, 0.1, 0.0, -0.7];
            assert!(equation_residual(&w, &x) < 1e-13);
            let beta = SymSpinor::from_fn(1, 0, |i, _| C64::new(0.3, i as f64 - 0.2));
            let p = adjoint_wave_polarized(ts, &alpha, &beta, C64::new(0.5, -1.0), -1).unwrap();
            assert!(equation_residual(&p, &x) < 1e-13);
        }
    }
}


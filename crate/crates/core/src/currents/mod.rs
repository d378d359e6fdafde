//! Conserved currents of the spin-s equations, the linear adjoint symmetries they come
//! from, trivial currents, and the conserved tensors obtained by factoring out constant
//! Killing data.

mod tensor;

pub use tensor::{
    conserved_tensor, dense_apply, hodge_dual, structure_residuals, volume_form, zilch_raw, ChiralTensor, StructureReport,
    SymTensor, TensorEval, TensorKind, TensorValue,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::killing::{ks_product, KillingSpinor};
use crate::poly::SpinorPoly;
use crate::solutions::{slie_unchecked, AdjointField, Field, SolutionField};
use crate::spinor::{lower_vector_c, sym_outer, tv, Point4, SymSpinor, C64, I, ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurrentKind {
    W,
    T,
    Z,
    V,
    FromAdjoint,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdjointKind {
    W,
    U,
    V,
}

/// A linear adjoint symmetry `P_A^{A'_1⋯A'_{2s-1}}`, materialized as a field of valence
/// `(1, 2s-1)` (primed indices stored lowered).
#[derive(Clone, Debug)]
pub struct AdjointSymmetryEval {
    pub kind: AdjointKind,
    pub order: usize,
    pub twice_spin: usize,
    p: Field,
}

impl AdjointSymmetryEval {
    pub fn field(&self) -> &Field {
        &self.p
    }

    /// `(P, P̃)` at a point, with `P̃ = P̄`.
    pub fn eval(&self, x: &Point4) -> (SymSpinor, SymSpinor) {
        let v = self.p.eval(x);
        let c = v.conjugate();
        (v, c)
    }

    /// Max-norm of `∂_{A(A'_1} P_{A'_2⋯A'_{2s})}^A`.
    /// At `s = 1/2` this is the field equation itself.
    pub fn residual(&self, x: &Point4) -> f64 {
        crate::solutions::equation_residual(&self.p, x)
    }

    pub fn scale(&self, z: C64) -> Self {
        AdjointSymmetryEval { p: self.p.scale(z), ..self.clone() }
    }
}

#[derive(Clone, Debug)]
enum Body {
    /// `c φ̄_{A'A'_1⋯} P_A^{A'_1⋯} + c.c.`, or `2c` times the first term when `literal`.
    Pairing { left: Field, p: Field, factor: C64, literal: bool },
    /// `∂_A^{B'} Θ_{A'B'} + ∂_{A'}^B Θ̃_{AB}`.
    Curl { theta: Field, theta_t: Field },
}

/// One conserved current `Ψ^a(x)` for fixed solution and Killing data.
#[derive(Clone, Debug)]
pub struct CurrentEval {
    pub kind: CurrentKind,
    pub order: usize,
    pub twice_spin: usize,
    body: Body,
}

impl CurrentEval {
    /// `Ψ_{AA'}` with lower indices.
    pub fn spinor_at(&self, x: &Point4) -> SymSpinor {
        match &self.body {
            Body::Pairing { left, p, factor, literal } => {
                let q = self.twice_spin - 1;
                let xv = tv(&left.eval(x).conjugate(), &p.eval(x), 0, q).scale(*factor);
                if *literal {
                    xv.scale(C64::new(2.0, 0.0))
                } else {
                    let c = xv.conjugate();
                    xv + c
                }
            }
            Body::Curl { theta, theta_t } => {
                let g = theta.grad_at(x);
                let h = theta_t.grad_at(x);
                let mut r = SymSpinor::zeros(1, 1);
                for a in 0..2 {
                    let v = &g[a][1].slice_primed(0) - &g[a][0].slice_primed(1);
                    r += &sym_outer(&SymSpinor::unit(1, 0, a, 0), &v);
                    let w = &h[1][a].slice_unprimed(0) - &h[0][a].slice_unprimed(1);
                    r += &sym_outer(&SymSpinor::unit(0, 1, 0, a), &w);
                }
                r
            }
        }
    }

    /// Complex vector components `Ψ^a`.
    pub fn eval_complex(&self, x: &Point4) -> [C64; 4] {
        lower_vector_c(&self.spinor_at(x))
    }

    /// Real part of `Ψ^a`.
    pub fn eval(&self, x: &Point4) -> [f64; 4] {
        self.eval_complex(x).map(|z| z.re)
    }

    /// Largest imaginary component of `Ψ^a`.
    pub fn imag_part(&self, x: &Point4) -> f64 {
        self.eval_complex(x).iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Largest wave-covector component among the captured fields, at least 1.
    pub fn wavenumber(&self) -> f64 {
        let k = match &self.body {
            Body::Pairing { left, p, .. } => left.max_wavenumber().max(p.max_wavenumber()),
            Body::Curl { theta, theta_t } => theta.max_wavenumber().max(theta_t.max_wavenumber()),
        };
        k.max(1.0)
    }

    /// The fields whose exponentials appear in the current, for commensurability checks.
    pub fn fields(&self) -> Vec<&Field> {
        match &self.body {
            Body::Pairing { left, p, .. } => vec![left, p],
            Body::Curl { theta, theta_t } => vec![theta, theta_t],
        }
    }
}

fn check_solution(field: &Field) -> Result<usize> {
    let (p, q) = field.valence();
    if q != 0 || p == 0 {
        return Err(Error::Precondition(format!("expected a solution of valence (2s,0), got ({p},{q})")));
    }
    Ok(p)
}

fn check_real_ckv(zeta: &KillingSpinor) -> Result<()> {
    if zeta.valence() != (1, 1) {
        return Err(Error::Precondition("ζ must have valence (1,1)".into()));
    }
    let r = zeta.residual_coeffs();
    if r > 1e-10 * zeta.poly.norm_inf().max(1.0) {
        return Err(Error::NotKilling(r));
    }
    let im = zeta.poly.sub(&zeta.poly.conjugate()).norm_inf();
    if im > 1e-12 * zeta.poly.norm_inf().max(1.0) {
        return Err(Error::NonReal(im));
    }
    Ok(())
}

/// `ζ^{⊙m}`; the constant 1 when `m = 0`.
pub fn zeta_power(zeta: &KillingSpinor, m: usize) -> KillingSpinor {
    if m == 0 {
        let mut one = KillingSpinor::from_poly(SpinorPoly::constant(SymSpinor::scalar(ONE)));
        one.is_real = true;
        return one;
    }
    ks_product(&vec![zeta.clone(); m])
}

/// Scale the `t²` coefficient of a conformal Killing vector by `1 + eps`; for `eps ≠ 0` the
/// result is no longer Killing whenever ζ has a special conformal part.
fn perturb_quadratic(zeta: &KillingSpinor, eps: f64) -> KillingSpinor {
    if eps == 0.0 {
        return zeta.clone();
    }
    let mut extra = SpinorPoly::zero(1, 1);
    for (m, s) in zeta.poly.terms() {
        if m[0] == 2 {
            extra.add_term(*m, &s.scale(C64::new(eps, 0.0)));
        }
    }
    let mut r = KillingSpinor::from_poly(zeta.poly.add(&extra));
    r.is_real = zeta.is_real;
    r
}

fn lie_iter(field: &Field, zeta: &KillingSpinor, n: usize) -> Field {
    let mut f = field.clone();
    for _ in 0..n {
        f = slie_unchecked(&f, zeta);
    }
    f
}

/// `U(φ; n, ζ, ξ) = ξ^{A_1⋯A'_1⋯} (ŝL_ζ)^n φ_{AA_1⋯}`.
fn u_field(phi_n: &Field, xi: &KillingSpinor) -> Field {
    let q = xi.k;
    phi_n.mul_poly(&xi.poly, |f, k| tv(f, k, q, 0))
}

/// `V(φ̄; n, ζ, Υ) = Υ^{A'A'_1⋯B'⋯} ∂_{AA'} φ̄_{B'⋯} + c ∂_{AA'}Υ^{A'A'_1⋯B'⋯} φ̄_{B'⋯}`
/// with `φ̄ = (ŝL_ζ)^n φ̄` and `c = (2s+1)/(4s+1)` unless overridden.
fn v_field(phi_n: &Field, ups: &SpinorPoly, coeff: f64) -> Field {
    let ts = phi_n.valence().0;
    let phib = phi_n.conjugate();
    let dbar = phi_n.sym_grad().conjugate();
    let mut p = dbar.mul_poly(ups, |d, u| tv(d, u, 0, ts + 1));
    let d = ups.spinor_grad();
    let c = C64::new(coeff, 0.0);
    for a in 0..2 {
        // ∂_{AA'} Υ^{A'⋯} = ε^{A'C'} ∂_{AA'} Υ_{C'⋯}
        let n = d[a][0]
            .map_coeffs(0, 2 * ts - 1, |s| s.slice_primed(1))
            .sub(&d[a][1].map_coeffs(0, 2 * ts - 1, |s| s.slice_primed(0)));
        let e = SymSpinor::unit(1, 0, a, 0);
        let g = phib.mul_poly(&n, |f, nn| sym_outer(&e, &tv(f, nn, 0, ts)).scale(c));
        p = p.add(&g);
    }
    p
}

/// The gradient coefficient `(2s+1)/(4s+1)` of the chiral current.
pub fn chiral_coefficient(twice_spin: usize) -> f64 {
    (twice_spin + 1) as f64 / (2 * twice_spin + 1) as f64
}

/// Elementary current `ω_A^{A'_1⋯} φ̄_{A'A'_1⋯} + c.c.`
pub fn elementary_current(omega: &AdjointField, field: &SolutionField) -> Result<CurrentEval> {
    elementary_impl(omega, field, 0.0)
}

fn elementary_impl(omega: &AdjointField, field: &SolutionField, eps: f64) -> Result<CurrentEval> {
    let ts = check_solution(field)?;
    let (p, q) = omega.valence();
    if p != 1 || q + 1 != ts {
        return Err(Error::SpinMismatch { expected: ts, found: p + q });
    }
    let mut om = omega.clone();
    if eps != 0.0 {
        // multiply by (1 + eps t): no longer an adjoint solution
        om = om.add(&om.mul_poly(&SpinorPoly::coordinate(0), |f, t| f.scale(t.value() * eps)));
    }
    Ok(CurrentEval {
        kind: CurrentKind::W,
        order: 0,
        twice_spin: ts,
        body: Body::Pairing { left: field.clone(), p: om, factor: ONE, literal: false },
    })
}

/// Stress-energy current `2 ζ⋯ζ φ_{AA_1⋯} φ̄_{A'A'_1⋯}` of `(ŝL_ζ)^n φ`.
pub fn stress_energy(field: &SolutionField, zeta: &KillingSpinor, n: usize) -> Result<CurrentEval> {
    stress_energy_impl(field, zeta, n, 0.0)
}

fn stress_energy_impl(field: &SolutionField, zeta: &KillingSpinor, n: usize, eps: f64) -> Result<CurrentEval> {
    let ts = check_solution(field)?;
    check_real_ckv(zeta)?;
    let z = perturb_quadratic(zeta, eps);
    let phi_n = lie_iter(field, &z, n);
    let xi = zeta_power(&z, ts - 1);
    Ok(CurrentEval {
        kind: CurrentKind::T,
        order: n,
        twice_spin: ts,
        body: Body::Pairing { p: u_field(&phi_n, &xi), left: phi_n, factor: ONE, literal: true },
    })
}

/// Zilch current `i ζ⋯ζ (φ̄ ŝL_ζ φ - φ ŝL_ζ φ̄)` of `(ŝL_ζ)^n φ`.
pub fn zilch(field: &SolutionField, zeta: &KillingSpinor, n: usize) -> Result<CurrentEval> {
    zilch_impl(field, zeta, n, 0.0)
}

fn zilch_impl(field: &SolutionField, zeta: &KillingSpinor, n: usize, eps: f64) -> Result<CurrentEval> {
    let ts = check_solution(field)?;
    check_real_ckv(zeta)?;
    let z = perturb_quadratic(zeta, eps);
    let phi_n = lie_iter(field, &z, n);
    let phi_n1 = slie_unchecked(&phi_n, &z);
    let xi = zeta_power(&z, ts - 1);
    Ok(CurrentEval {
        kind: CurrentKind::Z,
        order: n,
        twice_spin: ts,
        body: Body::Pairing { left: phi_n, p: u_field(&phi_n1, &xi), factor: I, literal: false },
    })
}

/// Chiral current of `(ŝL_ζ)^n φ` built from `Y^{⊙2s}` and its gradient.
pub fn chiral(field: &SolutionField, y: &KillingSpinor, zeta: &KillingSpinor, n: usize) -> Result<CurrentEval> {
    chiral_impl(field, y, zeta, n, 0.0)
}

fn check_cky(y: &KillingSpinor) -> Result<()> {
    if y.valence() != (0, 2) {
        return Err(Error::Precondition("Y must have valence (0,2)".into()));
    }
    let r = y.residual_coeffs();
    if r > 1e-10 * y.poly.norm_inf().max(1.0) {
        return Err(Error::NotKilling(r));
    }
    Ok(())
}

fn chiral_impl(field: &SolutionField, y: &KillingSpinor, zeta: &KillingSpinor, n: usize, eps: f64) -> Result<CurrentEval> {
    let ts = check_solution(field)?;
    check_real_ckv(zeta)?;
    check_cky(y)?;
    let phi_n = lie_iter(field, zeta, n);
    let phi_n1 = slie_unchecked(&phi_n, zeta);
    let ups = ks_product(&vec![y.clone(); ts]);
    let p = v_field(&phi_n, &ups.poly, chiral_coefficient(ts) * (1.0 + eps));
    Ok(CurrentEval {
        kind: CurrentKind::V,
        order: n,
        twice_spin: ts,
        body: Body::Pairing { left: phi_n1, p, factor: ONE, literal: false },
    })
}

/// Elementary adjoint symmetry `P = ω`.
pub fn adjoint_w(omega: &AdjointField) -> Result<AdjointSymmetryEval> {
    let (p, q) = omega.valence();
    if p != 1 {
        return Err(Error::Precondition(format!("adjoint field must have valence (1,q), got ({p},{q})")));
    }
    Ok(AdjointSymmetryEval { kind: AdjointKind::W, order: 0, twice_spin: q + 1, p: omega.clone() })
}

/// `U(φ; n, ζ, ξ)` with ξ of type `(2s-1, 2s-1)`.
pub fn adjoint_u(field: &SolutionField, zeta: &KillingSpinor, xi: &KillingSpinor, n: usize) -> Result<AdjointSymmetryEval> {
    let ts = check_solution(field)?;
    check_real_ckv(zeta)?;
    if xi.valence() != (ts - 1, ts - 1) {
        return Err(Error::Precondition(format!("ξ must have valence ({0},{0})", ts - 1)));
    }
    let phi_n = lie_iter(field, zeta, n);
    Ok(AdjointSymmetryEval { kind: AdjointKind::U, order: n, twice_spin: ts, p: u_field(&phi_n, xi) })
}

/// `V(φ̄; n, ζ, Υ)` with Υ of type `(0, 4s)`.
pub fn adjoint_v(field: &SolutionField, zeta: &KillingSpinor, ups: &KillingSpinor, n: usize) -> Result<AdjointSymmetryEval> {
    let ts = check_solution(field)?;
    check_real_ckv(zeta)?;
    if ups.valence() != (0, 2 * ts) {
        return Err(Error::Precondition(format!("Υ must have valence (0,{})", 2 * ts)));
    }
    let phi_n = lie_iter(field, zeta, n);
    Ok(AdjointSymmetryEval {
        kind: AdjointKind::V,
        order: n + 1,
        twice_spin: ts,
        p: v_field(&phi_n, &ups.poly, chiral_coefficient(ts)),
    })
}

/// Current obtained from a homogeneous linear adjoint symmetry by the scaling formula.
///
/// The λ-integral gives a factor 1 when `P` does not depend on the field (W) and 1/2 when it
/// is linear in it (U, V).
pub fn current_from_adjoint(p: &AdjointSymmetryEval, field: &SolutionField) -> Result<CurrentEval> {
    let ts = check_solution(field)?;
    if ts != p.twice_spin {
        return Err(Error::SpinMismatch { expected: ts, found: p.twice_spin });
    }
    let factor = match p.kind {
        AdjointKind::W => ONE,
        AdjointKind::U | AdjointKind::V => C64::new(0.5, 0.0),
    };
    Ok(CurrentEval {
        kind: CurrentKind::FromAdjoint,
        order: p.order,
        twice_spin: ts,
        body: Body::Pairing { left: field.clone(), p: p.p.clone(), factor, literal: false },
    })
}

/// Trivial current `∂_A^{B'} Θ_{A'B'} + ∂_{A'}^B Θ̃_{AB}`.
pub fn trivial_current(theta: &Field, theta_t: &Field) -> Result<CurrentEval> {
    if theta.valence() != (0, 2) || theta_t.valence() != (2, 0) {
        return Err(Error::Precondition("Θ must have valence (0,2) and Θ̃ valence (2,0)".into()));
    }
    Ok(CurrentEval {
        kind: CurrentKind::Trivial,
        order: 0,
        twice_spin: 0,
        body: Body::Curl { theta: theta.clone(), theta_t: theta_t.clone() },
    })
}

/// Recipe for a current, applied to a solution on demand.
#[derive(Clone, Debug)]
pub enum CurrentSpec {
    W { omega: AdjointField },
    T { zeta: KillingSpinor, order: usize },
    Z { zeta: KillingSpinor, order: usize },
    V { y: KillingSpinor, zeta: KillingSpinor, order: usize },
    /// `Φ_T` (or `Φ_Z` when `imaginary`) from `U(φ; n, ζ, ξ)`.
    U { xi: KillingSpinor, zeta: KillingSpinor, order: usize, imaginary: bool },
}

impl CurrentSpec {
    pub fn kind(&self) -> CurrentKind {
        match self {
            CurrentSpec::W { .. } => CurrentKind::W,
            CurrentSpec::T { .. } => CurrentKind::T,
            CurrentSpec::Z { .. } => CurrentKind::Z,
            CurrentSpec::V { .. } => CurrentKind::V,
            CurrentSpec::U { .. } => CurrentKind::FromAdjoint,
        }
    }

    pub fn build(&self, field: &SolutionField) -> Result<CurrentEval> {
        self.build_perturbed(field, 0.0)
    }

    /// Build with one coefficient scaled by `1 + eps`: the gradient coefficient for V, the
    /// `t²` coefficient of ζ for T, Z and U, and a factor `1 + eps·t` on ω for W.
    pub fn build_perturbed(&self, field: &SolutionField, eps: f64) -> Result<CurrentEval> {
        match self {
            CurrentSpec::W { omega } => elementary_impl(omega, field, eps),
            CurrentSpec::T { zeta, order } => stress_energy_impl(field, zeta, *order, eps),
            CurrentSpec::Z { zeta, order } => zilch_impl(field, zeta, *order, eps),
            CurrentSpec::V { y, zeta, order } => chiral_impl(field, y, zeta, *order, eps),
            CurrentSpec::U { xi, zeta, order, imaginary } => {
                let ts = check_solution(field)?;
                check_real_ckv(zeta)?;
                let z = perturb_quadratic(zeta, eps);
                let phi_n = lie_iter(field, &z, *order);
                let mut p = AdjointSymmetryEval {
                    kind: AdjointKind::U,
                    order: *order,
                    twice_spin: ts,
                    p: u_field(&phi_n, xi),
                };
                if *imaginary {
                    p = p.scale(I);
                }
                let mut c = current_from_adjoint(&p, &phi_n)?;
                c.order = *order;
                Ok(c)
            }
        }
    }
}

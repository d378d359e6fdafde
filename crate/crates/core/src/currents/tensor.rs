//! Conserved tensors evaluated on jets, as multilinear forms on complex vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solutions::Jet;
use crate::spinor::dense::Dense;
use crate::spinor::{sym_outer, tv, vector_lower_c, vector_spinor_c, SymSpinor, C64, I, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TensorKind {
    T,
    Z,
    VPlus,
    VMinus,
}

#[derive(Clone, Copy, Debug)]
pub struct TensorEval {
    pub kind: TensorKind,
    pub twice_spin: usize,
}

/// A totally symmetric tensor given by a `(r,r)` spinor with lower indices.
#[derive(Clone, Debug)]
pub struct SymTensor {
    pub spinor: SymSpinor,
}

impl SymTensor {
    pub fn rank(&self) -> usize {
        self.spinor.p()
    }

    /// `S_{a_1⋯a_r} v_1^{a_1} ⋯ v_r^{a_r}`.
    pub fn apply(&self, vs: &[[C64; 4]]) -> C64 {
        assert_eq!(vs.len(), self.rank(), "wrong number of arguments");
        let mut s = self.spinor.clone();
        for v in vs {
            s = tv(&s, &vector_lower_c(v), 1, 1);
        }
        s.value()
    }
}

/// `V_±(a_1, a_2, (b_1,c_1), ⋯, (b_{2s},c_{2s}))`, built from `D̄ = ∂φ̄` of valence `(1, 2s+1)`.
#[derive(Clone, Debug)]
pub struct ChiralTensor {
    pub twice_spin: usize,
    pub plus: bool,
    dbar: SymSpinor,
}

impl ChiralTensor {
    pub fn new(twice_spin: usize, plus: bool, dbar: SymSpinor) -> Self {
        ChiralTensor { twice_spin, plus, dbar }
    }

    /// `V(φ̄)` alone: `ε_{B_1C_1}⋯ ∂_{A_2A'_1}φ̄_{(B'⋯} ∂_{A_1A'_2}φ̄_{C'⋯)}` on the arguments.
    pub fn apply_v(&self, a1: &[C64; 4], a2: &[C64; 4], pairs: &[([C64; 4], [C64; 4])]) -> C64 {
        assert_eq!(pairs.len(), self.twice_spin, "need 2s skew pairs");
        let u1 = vector_spinor_c(a1);
        let u2 = vector_spinor_c(a2);
        let slice = |a: usize, ap: usize| self.dbar.slice_unprimed(a).slice_primed(ap);
        let mut x = SymSpinor::zeros(0, 2 * self.twice_spin);
        for a1i in 0..2 {
            for a1p in 0..2 {
                for a2i in 0..2 {
                    for a2p in 0..2 {
                        let w = u1.get(a1i, a1p) * u2.get(a2i, a2p);
                        if w != ZERO {
                            x += &sym_outer(&slice(a2i, a1p), &slice(a1i, a2p)).scale(w);
                        }
                    }
                }
            }
        }
        // ε_{BC} b^{BB'} c^{CC'} for each pair, symmetrized together
        let mut m = SymSpinor::scalar(C64::new(1.0, 0.0));
        for (b, c) in pairs {
            m = sym_outer(&m, &tv(&vector_lower_c(b), &vector_lower_c(c), 1, 0));
        }
        tv(&x, &m, 0, 2 * self.twice_spin).value()
    }

    pub fn apply(&self, a1: &[C64; 4], a2: &[C64; 4], pairs: &[([C64; 4], [C64; 4])]) -> C64 {
        let v = self.apply_v(a1, a2, pairs);
        let cj = |u: &[C64; 4]| u.map(|z| z.conj());
        let cpairs: Vec<_> = pairs.iter().map(|(b, c)| (cj(b), cj(c))).collect();
        let vbar = self.apply_v(&cj(a1), &cj(a2), &cpairs).conj();
        if self.plus {
            v + vbar
        } else {
            I * v - I * vbar
        }
    }
}

#[derive(Clone, Debug)]
pub enum TensorValue {
    Sym(SymTensor),
    Chiral(ChiralTensor),
}

pub fn conserved_tensor(kind: TensorKind, twice_spin: usize) -> Result<TensorEval> {
    if twice_spin == 0 {
        return Err(Error::Precondition("spin must be at least 1/2".into()));
    }
    Ok(TensorEval { kind, twice_spin })
}

impl TensorEval {
    pub fn eval(&self, jet: &Jet) -> Result<TensorValue> {
        if jet.twice_spin != self.twice_spin {
            return Err(Error::SpinMismatch { expected: self.twice_spin, found: jet.twice_spin });
        }
        let phi = &jet.derivs[0];
        let need = if self.kind == TensorKind::T { 0 } else { 1 };
        if jet.derivs.len() <= need {
            return Err(Error::Precondition(format!("{:?} needs a jet of order {need}", self.kind)));
        }
        Ok(match self.kind {
            TensorKind::T => TensorValue::Sym(SymTensor { spinor: sym_outer(phi, &phi.conjugate()).scale(C64::new(2.0, 0.0)) }),
            TensorKind::Z => {
                let d1 = &jet.derivs[1];
                let z = sym_outer(&phi.conjugate(), d1).scale(I) - sym_outer(phi, &d1.conjugate()).scale(I);
                TensorValue::Sym(SymTensor { spinor: z })
            }
            TensorKind::VPlus | TensorKind::VMinus => TensorValue::Chiral(ChiralTensor::new(
                self.twice_spin,
                self.kind == TensorKind::VPlus,
                jet.derivs[1].conjugate(),
            )),
        })
    }
}

/// Zilch tensor from the raw gradient `∂_{BB'}φ`, symmetrized only as written:
/// `i φ̄_{(A'⋯} ∂_{|B|B')}φ_{A⋯} - i φ_{(A⋯} ∂_{B)B'}φ̄_{A'⋯}`. Slot `2s` carries `(B, B')`.
pub fn zilch_raw(jet: &Jet) -> Dense {
    let ts = jet.twice_spin;
    let r = ts + 1;
    let phi = &jet.derivs[0];
    let g = &jet.grad;
    let mask = (1usize << r) - 1;
    let data = (0..1usize << (2 * r))
        .map(|ix| {
            let un = ix & mask;
            let pr = ix >> r;
            let bit = |w: usize, k: usize| (w >> k) & 1;
            let ones = |w: usize| w.count_ones() as usize;
            let mut acc = ZERO;
            // first term: unprimed B = slot ts, primed symmetrized over all slots
            let b = bit(un, ts);
            let a_count = ones(un & ((1 << ts) - 1));
            for k in 0..r {
                let rest = ones(pr & !(1 << k));
                acc += I * phi.get(rest, 0).conj() * g[b][bit(pr, k)].get(a_count, 0) / r as f64;
            }
            // second term: primed B' = slot ts, unprimed symmetrized
            let bp = bit(pr, ts);
            let ap_count = ones(pr & ((1 << ts) - 1));
            for k in 0..r {
                let rest = ones(un & !(1 << k));
                // ∂_{BB'}φ̄ = conj(∂_{B'B}φ) with the index types exchanged
                let h = g[bp][bit(un, k)].get(ap_count, 0).conj();
                acc -= I * phi.get(rest, 0) * h / r as f64;
            }
            acc
        })
        .collect();
    Dense { p: r, q: r, data }
}

/// `S_{a_1⋯a_r} v_1^{a_1}⋯v_r^{a_r}` for a dense all-lower tensor whose slot `k` pairs
/// unprimed slot `k` with primed slot `k`.
pub fn dense_apply(t: &Dense, vs: &[[C64; 4]]) -> C64 {
    let r = t.p;
    assert_eq!(t.q, r);
    assert_eq!(vs.len(), r);
    let ups: Vec<SymSpinor> = vs.iter().map(vector_spinor_c).collect();
    let mut acc = ZERO;
    for (ix, d) in t.data.iter().enumerate() {
        if *d == ZERO {
            continue;
        }
        let mut w = *d;
        for (k, u) in ups.iter().enumerate() {
            w *= u.get((ix >> k) & 1, (ix >> (r + k)) & 1);
        }
        acc += w;
    }
    acc
}

/// `ε_{abcd} v^a w^b x^c y^d` from `i(ε_{AC}ε_{BD}ε_{A'D'}ε_{B'C'} - ε_{AD}ε_{BC}ε_{A'C'}ε_{B'D'})`.
pub fn volume_form(v: &[C64; 4], w: &[C64; 4], x: &[C64; 4], y: &[C64; 4]) -> C64 {
    let s = [v, w, x, y].map(vector_spinor_c);
    let eps = |i: usize, j: usize| -> f64 {
        match (i, j) {
            (0, 1) => 1.0,
            (1, 0) => -1.0,
            _ => 0.0,
        }
    };
    let mut acc = ZERO;
    for ix in 0..256usize {
        let u: [usize; 4] = std::array::from_fn(|k| (ix >> k) & 1);
        let p: [usize; 4] = std::array::from_fn(|k| (ix >> (4 + k)) & 1);
        let e = eps(u[0], u[2]) * eps(u[1], u[3]) * eps(p[0], p[3]) * eps(p[1], p[2])
            - eps(u[0], u[3]) * eps(u[1], u[2]) * eps(p[0], p[2]) * eps(p[1], p[3]);
        if e == 0.0 {
            continue;
        }
        let mut w = C64::new(e, 0.0);
        for k in 0..4 {
            w *= s[k].get(u[k], p[k]);
        }
        acc += w;
    }
    I * acc
}

/// Coordinate basis vector `e_μ`.
pub(crate) fn basis(mu: usize) -> [C64; 4] {
    let mut e = [ZERO; 4];
    e[mu] = C64::new(1.0, 0.0);
    e
}

pub(crate) const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Hodge dual on one skew pair: `½ ε_{bc}{}^{de} F(d, e)` evaluated at `(b, c)`.
pub fn hodge_dual(b: &[C64; 4], c: &[C64; 4], f: impl Fn(&[C64; 4], &[C64; 4]) -> C64) -> C64 {
    let mut acc = ZERO;
    for mu in 0..4 {
        for nu in 0..4 {
            if mu == nu {
                continue;
            }
            let (em, en) = (basis(mu), basis(nu));
            let e = volume_form(b, c, &em, &en);
            if e != ZERO {
                acc += e * ETA[mu] * ETA[nu] * f(&em, &en);
            }
        }
    }
    acc * 0.5
}

/// Largest violations of the algebraic identities of the conserved tensors at one jet,
/// each relative to the size of the tensor on the same arguments.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    /// `T`, `Z` from the raw gradient: symmetry and agreement with the compressed form.
    pub symmetric: f64,
    pub trace_free: f64,
    /// `V_±`: symmetric in the first pair, skew in each `(b_i, c_i)`, symmetric under pair swaps.
    pub chiral_symmetry: f64,
    /// Traces among the `4s` skew slots.
    pub chiral_trace_free: f64,
    /// Traces of the second slot against a skew slot. These do not vanish on shell.
    pub chiral_trace_second: f64,
    /// `*V_± = ±V_∓` on the first skew pair.
    pub duality: f64,
}

impl StructureReport {
    pub fn max(&self) -> f64 {
        [self.symmetric, self.trace_free, self.chiral_symmetry, self.chiral_trace_free, self.duality]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// [`Self::max`] including the second-slot traces.
    pub fn max_all(&self) -> f64 {
        self.max().max(self.chiral_trace_second)
    }
}

fn trace_slots(f: &dyn Fn(&[[C64; 4]]) -> C64, args: &[[C64; 4]], i: usize, j: usize) -> C64 {
    let mut acc = ZERO;
    for mu in 0..4 {
        let mut a = args.to_vec();
        a[i] = basis(mu);
        a[j] = basis(mu);
        acc += f(&a) * ETA[mu];
    }
    acc
}

/// Check the symmetry, trace and duality identities of `T`, `Z`, `V_±` on `samples` sets of
/// argument vectors.
pub fn structure_residuals(jet: &Jet, samples: &[Vec<[C64; 4]>]) -> Result<StructureReport> {
    let ts = jet.twice_spin;
    let mut rep = StructureReport::default();
    let rel = |d: C64, scale: f64| d.norm() / scale.max(f64::MIN_POSITIVE);
    let sym = |kind| -> Result<SymTensor> {
        match conserved_tensor(kind, ts)?.eval(jet)? {
            TensorValue::Sym(s) => Ok(s),
            TensorValue::Chiral(_) => unreachable!(),
        }
    };
    let chi = |kind| -> Result<ChiralTensor> {
        match conserved_tensor(kind, ts)?.eval(jet)? {
            TensorValue::Chiral(c) => Ok(c),
            TensorValue::Sym(_) => unreachable!(),
        }
    };
    let t = sym(TensorKind::T)?;
    let z = sym(TensorKind::Z)?;
    let zr = zilch_raw(jet);
    let (vp, vm) = (chi(TensorKind::VPlus)?, chi(TensorKind::VMinus)?);
    let split = |a: &[[C64; 4]]| -> ([C64; 4], [C64; 4], Vec<([C64; 4], [C64; 4])>) {
        (a[0], a[1], a[2..].chunks(2).map(|c| (c[0], c[1])).collect())
    };
    for args in samples {
        // T and Z
        for (tensor, raw) in [(&t, None), (&z, Some(&zr))] {
            let r = tensor.rank();
            let a = &args[..r];
            let val = tensor.apply(a);
            let f = |v: &[[C64; 4]]| tensor.apply(v);
            let mut scale = val.norm();
            if let Some(raw) = raw {
                let fr = |v: &[[C64; 4]]| dense_apply(raw, v);
                // every transposition with the gradient slot
                for k in 0..r {
                    let mut b = a.to_vec();
                    b.swap(k, r - 1);
                    scale = scale.max(fr(&b).norm());
                    rep.symmetric = rep.symmetric.max(rel(fr(&b) - val, scale));
                }
                if r >= 2 {
                    for (i, j) in [(0, r - 1), (0, 1)] {
                        rep.trace_free = rep.trace_free.max(rel(trace_slots(&fr, a, i, j), scale));
                    }
                }
            }
            if r >= 2 {
                rep.trace_free = rep.trace_free.max(rel(trace_slots(&f, a, 0, r - 1), scale));
            }
        }
        // V±
        let n = 2 + 2 * ts;
        let a = &args[..n];
        for (v, other, sign) in [(&vp, &vm, 1.0), (&vm, &vp, -1.0)] {
            let f = |x: &[[C64; 4]]| {
                let (a1, a2, pairs) = split(x);
                v.apply(&a1, &a2, &pairs)
            };
            let g = |x: &[[C64; 4]]| {
                let (a1, a2, pairs) = split(x);
                other.apply(&a1, &a2, &pairs)
            };
            let val = f(a);
            let scale = val.norm().max(g(a).norm());
            let mut b = a.to_vec();
            b.swap(0, 1);
            rep.chiral_symmetry = rep.chiral_symmetry.max(rel(f(&b) - val, scale));
            for p in 0..ts {
                let mut b = a.to_vec();
                b.swap(2 + 2 * p, 3 + 2 * p);
                rep.chiral_symmetry = rep.chiral_symmetry.max(rel(f(&b) + val, scale));
                if p > 0 {
                    let mut b = a.to_vec();
                    b.swap(2, 2 + 2 * p);
                    b.swap(3, 3 + 2 * p);
                    rep.chiral_symmetry = rep.chiral_symmetry.max(rel(f(&b) - val, scale));
                }
            }
            for i in 1..n {
                for j in i + 1..n {
                    let tr = rel(trace_slots(&f, a, i, j), scale);
                    if i == 1 {
                        rep.chiral_trace_second = rep.chiral_trace_second.max(tr);
                    } else {
                        rep.chiral_trace_free = rep.chiral_trace_free.max(tr);
                    }
                }
            }
            let dual = hodge_dual(&a[2], &a[3], |b, c| {
                let mut x = a.to_vec();
                x[2] = *b;
                x[3] = *c;
                f(&x)
            });
            rep.duality = rep.duality.max(rel(dual - g(a) * sign, scale));
        }
    }
    Ok(rep)
}

//! Numerical certification: divergence residuals, quadrature, electric/magnetic split,
//! densities and rank tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::currents::{
    conserved_tensor, CurrentEval, CurrentKind, CurrentSpec, TensorKind, TensorValue,
};
use crate::error::{Error, Result};
use crate::killing::{cky_generators, real_ckv_generators, KillingSpinor};
use crate::linalg::real_rank;
use crate::solutions::{jet_at, plane_wave, Field, SolutionField};
use crate::spinor::{
    lower_from_covector, solder, sym_outer, sym_power, t_lower, tv, vector_lower_c, Point4, SymSpinor, C64, I,
    ONE, ZERO,
};

/// Polarization `n = x̂ + i ŷ` as a lower spinor.
pub fn polarization_n() -> SymSpinor {
    vector_lower_c(&[ZERO, ONE, I, ZERO])
}

/// `n = x̂ + i ŷ` as a complex vector.
pub fn polarization_n_vector() -> [C64; 4] {
    [ZERO, ONE, I, ZERO]
}

/// `t^{B'_1}_{A_1} ⋯ φ̄_{⋯ B'_1 ⋯}`: `E + iB` for integer spin, the hybrid `E` otherwise.
pub fn eb_combination(field: &Field, x: &Point4) -> Result<SymSpinor> {
    let m = check_spin_field(field)?.div_ceil(2);
    let phib = field.eval(x).conjugate();
    Ok(tv(&phib, &sym_power(&t_lower(), m), 0, m))
}

fn check_spin_field(field: &Field) -> Result<usize> {
    let (p, q) = field.valence();
    if q != 0 || p == 0 {
        return Err(Error::Precondition("expected a spin-s field of valence (2s,0)".into()));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------------------
// divergence

/// Default finite-difference step for a current. Quadratic currents oscillate at up to twice
/// the field wavenumber and carry polynomial factors from the Killing data.
pub fn default_step(c: &CurrentEval) -> f64 {
    0.025 / c.wavenumber()
}

fn central4(f: impl Fn(f64) -> C64, h: f64) -> C64 {
    (-f(2.0 * h) + f(h) * 8.0 - f(-h) * 8.0 + f(-2.0 * h)) / (12.0 * h)
}

/// `∂_a Ψ^a` by fourth-order central differences and one Richardson step.
pub fn fd_divergence(psi: impl Fn(&Point4) -> [C64; 4], x: &Point4, h: f64) -> C64 {
    let d = |h: f64| -> C64 {
        (0..4)
            .map(|a| {
                central4(
                    |s| {
                        let mut y = *x;
                        y[a] += s;
                        psi(&y)[a]
                    },
                    h,
                )
            })
            .sum()
    };
    (d(h / 2.0) * 16.0 - d(h)) / 15.0
}

/// `|∂_a Ψ^a| / (|Ψ|_∞ · k)` at `x`, with `k` the dominant wavenumber.
pub fn divergence_residual(c: &CurrentEval, x: &Point4, h: f64) -> f64 {
    let div = fd_divergence(|y| c.eval_complex(y), x, h);
    let scale = c.eval_complex(x).iter().map(|z| z.norm()).fold(0.0, f64::max) * c.wavenumber();
    if div.norm() == 0.0 {
        0.0
    } else if scale == 0.0 {
        f64::INFINITY
    } else {
        div.norm() / scale
    }
}

// ---------------------------------------------------------------------------------------
// quadrature

const COMMENSURATE_TOL: f64 = 1e-9;

/// Largest spatial harmonic of a field in units of `2π/L`; errors if some mode is not a
/// multiple.
pub fn max_harmonic(field: &Field, l: f64) -> Result<u64> {
    let unit = 2.0 * std::f64::consts::PI / l;
    let mut h = 0u64;
    for t in field.terms() {
        for &k in &t.k[1..] {
            let r = k / unit;
            if (r - r.round()).abs() > COMMENSURATE_TOL {
                return Err(Error::Incommensurate(format!("k = {k} is not a multiple of 2π/{l}")));
            }
            h = h.max(r.round().abs() as u64);
        }
    }
    Ok(h)
}

/// Equal-weight sum of `f` over the periodic `N³` grid of side `L` at time `t`, times the
/// cell volume. Rows are summed in parallel and combined in index order.
pub fn grid_integral(f: impl Fn(&Point4) -> f64 + Sync, t: f64, n: usize, l: f64) -> f64 {
    let dx = l / n as f64;
    let rows: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            (0..n).map(|k| f(&[t, i as f64 * dx, j as f64 * dx, k as f64 * dx])).sum::<f64>()
        })
        .collect();
    rows.iter().sum::<f64>() * dx * dx * dx
}

/// `C[Ψ](t) = ∫ Ψ^t d³x` over the periodic box.
///
/// Exact when the density is a trigonometric polynomial below the Nyquist bound. Killing
/// data that grows with `x` makes the density non-periodic; the sum is then still a linear
/// functional of the current but no longer time-independent.
pub fn conserved_quantity(c: &CurrentEval, t: f64, n: usize, l: f64) -> Result<f64> {
    let mut h = 0;
    for f in c.fields() {
        h = h.max(max_harmonic(f, l)?);
    }
    if (n as u64) < 2 * h + 1 {
        return Err(Error::Precondition(format!("grid N={n} below 2·{h}+1")));
    }
    Ok(grid_integral(|x| c.eval(x)[0], t, n, l))
}

/// Polynomial degree in `x` of the current's density, zero when the integrand is periodic.
pub fn current_degree(c: &CurrentEval) -> usize {
    c.fields().iter().map(|f| f.degree()).max().unwrap_or(0)
}

// ---------------------------------------------------------------------------------------
// electric/magnetic split

/// Integer spin: Hermitian `(s,s)` spinors `E`, `B` with `E + iB` the `t`-contracted `φ̄`.
/// Half-integer spin: the hybrid `E` of valence `(s+½, s-½)`, `b` absent.
#[derive(Clone, Debug)]
pub struct EBPair {
    pub e: SymSpinor,
    pub b: Option<SymSpinor>,
}

fn eb_field(field: &Field) -> Result<Field> {
    let p = check_spin_field(field)?;
    let m = p.div_ceil(2);
    let tm = sym_power(&t_lower(), m);
    Ok(field.conjugate().map_coeffs(m, p - m, |c| tv(c, &tm, 0, m)))
}

fn hermitian_parts(eb: &Field) -> (Field, Field) {
    let half = C64::new(0.5, 0.0);
    let c = eb.conjugate();
    (eb.add(&c).scale(half), eb.sub(&c).scale(-I * 0.5))
}

pub fn eb_split(field: &SolutionField, x: &Point4) -> Result<EBPair> {
    let p = check_spin_field(field)?;
    let eb = eb_field(field)?;
    if p % 2 == 1 {
        return Ok(EBPair { e: eb.eval(x), b: None });
    }
    let (e, b) = hermitian_parts(&eb);
    Ok(EBPair { e: e.eval(x), b: Some(b.eval(x)) })
}

/// Multi-indices over `{1,2,3}` of length `r`, base-3 little-endian.
fn spatial_tuples(r: usize) -> Vec<Vec<usize>> {
    (0..3usize.pow(r as u32))
        .map(|mut n| {
            (0..r)
                .map(|_| {
                    let d = n % 3 + 1;
                    n /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

fn tuple_index(t: &[usize]) -> usize {
    t.iter().rev().fold(0, |acc, &d| acc * 3 + (d - 1))
}

/// Cartesian components `S(e_{i_1}, ⋯, e_{i_r})` of an `(r,r)` spinor.
fn cartesian(s: &SymSpinor) -> Vec<C64> {
    let r = s.p();
    let basis: Vec<SymSpinor> = (0..4)
        .map(|a| {
            let mut v = [ZERO; 4];
            v[a] = ONE;
            vector_lower_c(&v)
        })
        .collect();
    spatial_tuples(r)
        .iter()
        .map(|t| {
            let mut c = s.clone();
            for &i in t {
                c = tv(&c, &basis[i], 1, 1);
            }
            c.value()
        })
        .collect()
}

fn levi(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// `(∇×S)_{i_1⋯i_r} = ε_{(i_1}{}^{jk} ∂_j S_{k i_2⋯i_r)}` from spatial partials.
fn cartesian_curl(d: &[Vec<C64>; 3], r: usize) -> Vec<C64> {
    spatial_tuples(r)
        .iter()
        .map(|t| {
            let mut acc = ZERO;
            for p in 0..r {
                for j in 1..=3 {
                    for k in 1..=3 {
                        let e = levi(t[p], j, k);
                        if e != 0.0 {
                            let mut u = t.clone();
                            u[p] = k;
                            acc += d[j - 1][tuple_index(&u)] * e;
                        }
                    }
                }
            }
            acc / r as f64
        })
        .collect()
}

fn cartesian_div(d: &[Vec<C64>; 3], r: usize) -> Vec<C64> {
    spatial_tuples(r - 1)
        .iter()
        .map(|t| {
            (1..=3)
                .map(|j| {
                    let mut u = vec![j];
                    u.extend_from_slice(t);
                    d[j - 1][tuple_index(&u)]
                })
                .sum()
        })
        .collect()
}

fn max_abs<'a>(it: impl IntoIterator<Item = &'a C64>) -> f64 {
    it.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sign `σ` in `∂_t E = σ ∇×B`, `∂_t B = -σ ∇×E` for the Cartesian components used here.
pub const CURL_SIGN: f64 = 1.0;

/// Constant `κ` in the half-integer evolution `∂_t F_{A⋯} = κ D_{(A}{}^B F_{⋯)B}`.
pub const HYBRID_EVOLUTION: f64 = -2.0;

/// Residual of the split equations, normalized by the field's magnitude times wavenumber.
///
/// Integer spin: `∂_t E = ∇×B`, `∂_t B = -∇×E`, `∇·E = ∇·B = 0` in Cartesian components.
/// Half-integer spin: the hybrid `E` with its remaining primed indices turned by `t`
/// evolves as `∂_t F = -2 D_{(A}{}^B F_{⋯)B}` and obeys `D^{AB} F_{AB⋯} = 0`, where
/// `D_{AB} = t_{(A}{}^{A'} ∇_{B)A'}` is the spatial derivative.
pub fn split_residual(field: &SolutionField, x: &Point4) -> Result<f64> {
    let p = check_spin_field(field)?;
    let eb = eb_field(field)?;
    let k = field.max_wavenumber().max(1.0);
    let scale = field.eval(x).norm_inf() * k;
    if scale == 0.0 {
        return Ok(0.0);
    }
    let res = if p % 2 == 0 {
        let s = p / 2;
        let (e, b) = hermitian_parts(&eb);
        let parts = |f: &Field| -> (Vec<C64>, [Vec<C64>; 3]) {
            let (_, d) = f.value_and_partials(x);
            (cartesian(&d[0]), [cartesian(&d[1]), cartesian(&d[2]), cartesian(&d[3])])
        };
        let (et, ed) = parts(&e);
        let (bt, bd) = parts(&b);
        let ce = cartesian_curl(&ed, s);
        let cb = cartesian_curl(&bd, s);
        let r1: Vec<C64> = et.iter().zip(&cb).map(|(a, c)| a - c * CURL_SIGN).collect();
        let r2: Vec<C64> = bt.iter().zip(&ce).map(|(a, c)| a + c * CURL_SIGN).collect();
        max_abs(&r1).max(max_abs(&r2)).max(max_abs(&cartesian_div(&ed, s))).max(max_abs(&cartesian_div(&bd, s)))
    } else {
        let q = eb.valence().1;
        let f = eb.map_coeffs(p, 0, |c| tv(c, &sym_power(&t_lower(), q), 0, q));
        let (_, d) = f.value_and_partials(x);
        let (evo, constraint) = hybrid_spatial(&d, p);
        let r = &d[0] - &evo.scale(C64::new(HYBRID_EVOLUTION, 0.0));
        r.norm_inf().max(constraint.map_or(0.0, |c| c.norm_inf()))
    };
    Ok(res / scale)
}

/// `D_{(C}{}^B F_{⋯)B}` and, for `p ≥ 2`, `D^{BC} F_{BC⋯}` from coordinate partials of `F`.
fn hybrid_spatial(d: &[SymSpinor; 4], p: usize) -> (SymSpinor, Option<SymSpinor>) {
    let t = t_lower();
    // τ^{(C')}_B = t_B{}^{C'}
    let tau = [t.slice_primed(1), t.slice_primed(0).scale(-ONE)];
    let h: Vec<SymSpinor> = (0..2)
        .map(|c| {
            let mut acc = SymSpinor::zeros(p - 1, 0);
            for (cp, tc) in tau.iter().enumerate() {
                for a in 1..4 {
                    let e = solder(a).get(c, cp);
                    if e != ZERO {
                        acc += &tv(&d[a], tc, 1, 0).scale(e);
                    }
                }
            }
            acc
        })
        .collect();
    let mut evo = SymSpinor::zeros(p, 0);
    for (c, hc) in h.iter().enumerate() {
        evo += &sym_outer(&SymSpinor::unit(1, 0, c, 0), hc);
    }
    let constraint = (p >= 2).then(|| &h[0].slice_unprimed(1) - &h[1].slice_unprimed(0));
    (evo, constraint)
}

// ---------------------------------------------------------------------------------------
// densities

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Densities {
    pub energy: f64,
    pub zilch: f64,
    pub chiral_plus: f64,
    pub chiral_minus: f64,
    /// Half-integer spin: the same contractions read as spinor-particle densities.
    pub hybrid: bool,
}

fn seesaw(slots: usize) -> f64 {
    if slots % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn t_vec() -> [C64; 4] {
    [ONE, ZERO, ZERO, ZERO]
}

/// Energy `½T`, zilch `½Z` and chiral `V_±` densities, contracted with `t` and `u` in
/// mixed index position (`t^A{}_{A'}` against `T_A{}^{A'}`). Each such contraction is minus
/// the all-lower one, so the multilinear values carry `(-1)^{slots}`: `(-1)^{2s}` for the
/// energy, `(-1)^{2s+1}` for the zilch and `+1` for the chiral densities, whose arguments
/// are `(t, t, (t,u), ⋯, (t,u))`. For half-integer spin there is no energy reading and the
/// plain all-lower contractions are returned, so `energy` is the positive spinor particle
/// density `t^{AA'}⋯ φ_{A⋯} φ̄_{A'⋯}`.
pub fn densities(field: &SolutionField, x: &Point4, u: &[C64; 4]) -> Result<Densities> {
    let ts = check_spin_field(field)?;
    let jet = jet_at(field, x, 1);
    let t = t_vec();
    let sym = |kind| -> Result<C64> {
        match conserved_tensor(kind, ts)?.eval(&jet)? {
            TensorValue::Sym(s) => Ok(s.apply(&vec![t; s.rank()])),
            TensorValue::Chiral(_) => unreachable!(),
        }
    };
    let chiral = |kind| -> Result<C64> {
        match conserved_tensor(kind, ts)?.eval(&jet)? {
            TensorValue::Chiral(v) => Ok(v.apply(&t, &t, &vec![(t, *u); ts])),
            TensorValue::Sym(_) => unreachable!(),
        }
    };
    let hybrid = ts % 2 == 1;
    let (se, sz) = if hybrid { (1.0, 1.0) } else { (seesaw(ts), seesaw(ts + 1)) };
    Ok(Densities {
        energy: se * 0.5 * sym(TensorKind::T)?.re,
        zilch: sz * 0.5 * sym(TensorKind::Z)?.re,
        chiral_plus: chiral(TensorKind::VPlus)?.re,
        chiral_minus: chiral(TensorKind::VMinus)?.re,
        hybrid,
    })
}

// ---------------------------------------------------------------------------------------
// random data

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Spinor `α` with `α_A ᾱ_{A'}` the lower spinor of the future null covector `(|k|, k)`.
pub fn alpha_for_wavevector(k: &[f64; 3]) -> Result<SymSpinor> {
    let n = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if n == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let kk = lower_from_covector(&[n, k[0], k[1], k[2]].map(|v| C64::new(v, 0.0)));
    let (k00, k11) = (kk.get(0, 0).re, kk.get(1, 1).re);
    Ok(if k00 >= k11 {
        let a0 = k00.sqrt();
        SymSpinor::from_fn(1, 0, |i, _| if i == 0 { C64::new(a0, 0.0) } else { kk.get(1, 0) / a0 })
    } else {
        let a1 = k11.sqrt();
        SymSpinor::from_fn(1, 0, |i, _| if i == 1 { C64::new(a1, 0.0) } else { kk.get(0, 1) / a1 })
    })
}

fn gauss_c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Superposition of `modes` null modes with integer spatial harmonics in `[-kmax, kmax]³`
/// of the box `L`, random amplitudes and frequency signs.
pub fn random_family(rng: &mut ChaCha8Rng, twice_spin: usize, modes: usize, l: f64, kmax: i64) -> Result<SolutionField> {
    family_impl(rng, twice_spin, modes, l, kmax, false)
}

/// As [`random_family`], but every spinor `α` carries both frequency signs with independent
/// amplitudes. The chiral densities couple `φ` with `φ`, so their torus integral only sees
/// such pairs and vanishes on generic families.
pub fn random_paired_family(rng: &mut ChaCha8Rng, twice_spin: usize, modes: usize, l: f64, kmax: i64) -> Result<SolutionField> {
    family_impl(rng, twice_spin, modes, l, kmax, true)
}

fn family_impl(rng: &mut ChaCha8Rng, twice_spin: usize, modes: usize, l: f64, kmax: i64, paired: bool) -> Result<SolutionField> {
    let unit = 2.0 * std::f64::consts::PI / l;
    let mut f = Field::zero(twice_spin, 0);
    for _ in 0..modes {
        let k = loop {
            let k: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-kmax..=kmax));
            if k != [0, 0, 0] {
                break k;
            }
        };
        let alpha = alpha_for_wavevector(&k.map(|v| v as f64 * unit))?;
        if paired {
            f = f.add(&plane_wave(twice_spin, &alpha, gauss_c(rng), 1)?);
            f = f.add(&plane_wave(twice_spin, &alpha, gauss_c(rng), -1)?);
        } else {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            f = f.add(&plane_wave(twice_spin, &alpha, gauss_c(rng), sign)?);
        }
    }
    Ok(f)
}

/// Superposition of `modes` null modes sharing one frequency sign, with harmonics that step
/// away from a common base along single coordinate axes.
///
/// Rank tests pair these with Killing data that grows polynomially in `x`. On the periodic
/// grid, `Σ_x x_i e^{iΔ·x}` vanishes unless `Δ` lies along axis `i`, so generic families
/// only see the grid average of the Killing data and cannot separate the generators.
pub fn random_axis_family(rng: &mut ChaCha8Rng, twice_spin: usize, modes: usize, l: f64) -> Result<SolutionField> {
    let unit = 2.0 * std::f64::consts::PI / l;
    let base: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-1..=1));
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut f = Field::zero(twice_spin, 0);
    for j in 0..modes {
        let mut k = base;
        if j > 0 {
            let axis = rng.gen_range(0..3);
            let step = rng.gen_range(1..=2);
            k[axis] += if rng.gen_bool(0.5) { step } else { -step };
        }
        if k == [0, 0, 0] {
            k[0] = 1;
        }
        let alpha = alpha_for_wavevector(&k.map(|v| v as f64 * unit))?;
        f = f.add(&plane_wave(twice_spin, &alpha, gauss_c(rng), sign)?);
    }
    Ok(f)
}

/// Random real combination of the 15 conformal Killing vectors.
pub fn random_ckv(rng: &mut ChaCha8Rng) -> KillingSpinor {
    combine(rng, &real_ckv_generators(), false)
}

/// Random translation; the only Killing vectors whose currents are periodic.
pub fn random_translation(rng: &mut ChaCha8Rng) -> KillingSpinor {
    combine(rng, &real_ckv_generators()[..4], false)
}

/// Random complex combination of the 10 self-dual Killing-Yano generators.
pub fn random_cky(rng: &mut ChaCha8Rng) -> KillingSpinor {
    combine(rng, &cky_generators(), true)
}

/// Random constant self-dual Killing-Yano spinor.
pub fn random_constant_cky(rng: &mut ChaCha8Rng) -> KillingSpinor {
    let gens: Vec<KillingSpinor> = cky_generators().into_iter().filter(|g| g.poly.degree() == 0).collect();
    combine(rng, &gens, true)
}

fn combine(rng: &mut ChaCha8Rng, gens: &[KillingSpinor], complex: bool) -> KillingSpinor {
    let mut acc = KillingSpinor::zero(gens[0].k, gens[0].l);
    for g in gens {
        let c = if complex { gauss_c(rng) } else { C64::new(rng.gen_range(-1.0..1.0), 0.0) };
        acc = acc.add(&g.scale(c));
    }
    acc.is_real = !complex;
    acc
}

pub fn random_point(rng: &mut ChaCha8Rng, r: f64) -> Point4 {
    std::array::from_fn(|_| rng.gen_range(-r..r))
}

// ---------------------------------------------------------------------------------------
// rank

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub currents: usize,
    pub families: usize,
}

pub const RANK_TOL: f64 = 1e-8;

/// Rank of `M[i][j] = C[current_i(family_j)](t)`.
pub fn independence_rank(currents: &[CurrentSpec], families: &[SolutionField], t: f64, n: usize, l: f64) -> Result<RankReport> {
    if families.len() < currents.len() {
        return Err(Error::Precondition(format!(
            "{} families cannot separate {} currents",
            families.len(),
            currents.len()
        )));
    }
    let rows: Vec<Vec<f64>> = currents
        .iter()
        .map(|c| {
            families
                .iter()
                .map(|f| conserved_quantity(&c.build(f)?, t, n, l))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let (rank, singular_values) = real_rank(&rows, RANK_TOL);
    Ok(RankReport { rank, singular_values, currents: currents.len(), families: families.len() })
}

impl RankReport {
    /// Flags a rank below `wanted`; callers retry with a new seed.
    pub fn require(&self, wanted: usize) -> Result<()> {
        if self.rank < wanted {
            return Err(Error::Degenerate { rank: self.rank, wanted });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------------------
// verification report

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub twice_spin: usize,
    pub current: CurrentKind,
    pub order: usize,
    pub seed: u64,
    pub modes: usize,
    pub box_l: f64,
    pub grid: usize,
    pub points: usize,
    pub div_tol: f64,
    pub quantity_tol: f64,
    pub break_coeff: f64,
}

impl VerifyConfig {
    pub fn new(twice_spin: usize, current: CurrentKind, order: usize, seed: u64) -> Self {
        VerifyConfig {
            twice_spin,
            current,
            order,
            seed,
            modes: 3,
            box_l: 2.0 * std::f64::consts::PI,
            grid: 12,
            points: 20,
            div_tol: 1e-6,
            quantity_tol: 1e-9,
            break_coeff: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSample {
    pub t: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parity {
    /// `+1` if invariant under `φ ↦ -iφ`, `-1` if negated; absent for currents linear in `φ`.
    pub duality: Option<i8>,
    pub expected: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub divergence: f64,
    pub quantity: f64,
    pub parity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantityReport {
    pub current: CurrentKind,
    pub spin: String,
    pub order: usize,
    pub seed: u64,
    pub residual_max: f64,
    pub quantities: Vec<TimeSample>,
    pub quantity_drift: f64,
    pub parity: Parity,
    pub tolerances: Tolerances,
    pub pass: bool,
}

pub fn spin_label(twice_spin: usize) -> String {
    if twice_spin % 2 == 0 {
        format!("{}", twice_spin / 2)
    } else {
        format!("{twice_spin}/2")
    }
}

pub const TIME_SAMPLES: [f64; 4] = [0.0, 0.37, 1.1, 2.5];

/// Current spec for a kind with Killing data drawn from `rng`; `periodic` restricts to
/// translations and constant Killing-Yano spinors.
pub fn random_spec(
    rng: &mut ChaCha8Rng,
    kind: CurrentKind,
    twice_spin: usize,
    order: usize,
    periodic: bool,
    l: f64,
) -> Result<CurrentSpec> {
    let zeta = if periodic { random_translation(rng) } else { random_ckv(rng) };
    Ok(match kind {
        CurrentKind::W => random_w_spec(rng, twice_spin, l)?.0,
        CurrentKind::T => CurrentSpec::T { zeta, order },
        CurrentKind::Z => CurrentSpec::Z { zeta, order },
        CurrentKind::V => {
            let y = if periodic { random_constant_cky(rng) } else { random_cky(rng) };
            CurrentSpec::V { y, zeta, order }
        }
        other => return Err(Error::Unsupported(format!("no random generator for {other:?} currents"))),
    })
}

/// Elementary current of a random adjoint plane wave with random primed polarization, and the spinor `α` of that wave.
pub fn random_w_spec(rng: &mut ChaCha8Rng, twice_spin: usize, l: f64) -> Result<(CurrentSpec, SymSpinor)> {
    let unit = 2.0 * std::f64::consts::PI / l;
    let k: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2i64..=2) as f64 * unit);
    let k = if k == [0.0; 3] { [unit, 0.0, 0.0] } else { k };
    let alpha = alpha_for_wavevector(&k)?;
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let beta = SymSpinor::from_fn(1, 0, |_, _| gauss_c(rng));
    let omega = crate::solutions::adjoint_wave_polarized(twice_spin, &alpha, &beta, gauss_c(rng), sign)?;
    Ok((CurrentSpec::W { omega }, alpha))
}

/// Divergence battery at random points, time samples of the conserved quantity on periodic
/// data, and the duality parity.
pub fn run_verification(cfg: &VerifyConfig) -> Result<QuantityReport> {
    if cfg.twice_spin == 0 {
        return Err(Error::Precondition("spin must be at least 1/2".into()));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let family = random_family(&mut rng, cfg.twice_spin, cfg.modes, cfg.box_l, 2)?;

    // divergence on general Killing data
    let spec = random_spec(&mut rng, cfg.current, cfg.twice_spin, cfg.order, false, cfg.box_l)?;
    let c = spec.build_perturbed(&family, cfg.break_coeff)?;
    let h = default_step(&c);
    let pts: Vec<Point4> = (0..cfg.points).map(|_| random_point(&mut rng, 1.0)).collect();
    let residual_max = pts.par_iter().map(|x| divergence_residual(&c, x, h)).collect::<Vec<_>>().into_iter().fold(0.0, f64::max);

    // time samples on periodic data
    let mut pfamily = random_paired_family(&mut rng, cfg.twice_spin, cfg.modes, cfg.box_l, 2)?;
    let pspec = if cfg.current == CurrentKind::W {
        // an elementary current only sees the modes of the adjoint wave
        let (spec, alpha) = random_w_spec(&mut rng, cfg.twice_spin, cfg.box_l)?;
        for sign in [1, -1] {
            pfamily = pfamily.add(&plane_wave(cfg.twice_spin, &alpha, gauss_c(&mut rng), sign)?);
        }
        spec
    } else {
        random_spec(&mut rng, cfg.current, cfg.twice_spin, cfg.order, true, cfg.box_l)?
    };
    let pc = pspec.build_perturbed(&pfamily, cfg.break_coeff)?;
    let quantities = TIME_SAMPLES
        .iter()
        .map(|&t| Ok(TimeSample { t, value: conserved_quantity(&pc, t, cfg.grid, cfg.box_l)? }))
        .collect::<Result<Vec<_>>>()?;
    let q0 = quantities[0].value;
    let drift = quantities.iter().map(|s| (s.value - q0).abs()).fold(0.0, f64::max);
    let qscale = quantities.iter().map(|s| s.value.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let quantity_drift = drift / qscale;

    // duality parity
    let parity_tol = 1e-12;
    let expected = match cfg.current {
        CurrentKind::T | CurrentKind::Z => Some(1),
        CurrentKind::V => Some(-1),
        _ => None,
    };
    let duality = if expected.is_some() {
        let cd = spec.build_perturbed(&crate::solutions::duality(&family), cfg.break_coeff)?;
        let x = pts[0];
        let (a, b) = (c.eval(&x), cd.eval(&x));
        let sc = a.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let d_same = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max) / sc;
        let d_neg = a.iter().zip(&b).map(|(u, v)| (u + v).abs()).fold(0.0, f64::max) / sc;
        if d_same <= parity_tol {
            Some(1)
        } else if d_neg <= parity_tol {
            Some(-1)
        } else {
            Some(0)
        }
    } else {
        None
    };

    let pass = residual_max <= cfg.div_tol && quantity_drift <= cfg.quantity_tol && duality == expected;
    Ok(QuantityReport {
        current: cfg.current,
        spin: spin_label(cfg.twice_spin),
        order: cfg.order,
        seed: cfg.seed,
        residual_max,
        quantities,
        quantity_drift,
        parity: Parity { duality, expected },
        tolerances: Tolerances { divergence: cfg.div_tol, quantity: cfg.quantity_tol, parity: parity_tol },
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::{chiral, elementary_current, stress_energy, zilch};
    use crate::solutions::{adjoint_wave, paper_wave};

    fn seeded() -> ChaCha8Rng {
        rng_from_seed(11)
    }

    #[test]
    fn alpha_reproduces_wavevector() {
        let k = [1.0, -2.0, 2.0];
        let a = alpha_for_wavevector(&k).unwrap();
        let kk = crate::solutions::null_covector(&a);
        for (u, v) in kk.iter().zip([3.0, 1.0, -2.0, 2.0]) {
            assert!((u - v).abs() < 1e-12, "{kk:?}");
        }
    }

    #[test]
    fn quadrature_of_constant_and_mode() {
        let l = 2.0 * std::f64::consts::PI;
        let c = grid_integral(|_| 1.5, 0.0, 8, l);
        assert!((c - 1.5 * l.powi(3)).abs() < 1e-12 * c);
        let m = grid_integral(|x| 2.0 + (x[1] + 2.0 * x[3]).cos(), 0.0, 8, l);
        assert!((m - 2.0 * l.powi(3)).abs() < 1e-12 * m);
    }

    #[test]
    fn fd_divergence_converges_at_fourth_order_or_better() {
        // not conserved: ∂·Ψ = cos(x) cos(y) + ...
        let psi = |x: &Point4| -> [C64; 4] {
            [x[0].sin() * x[1].cos(), x[1].sin() * x[2].cos(), (x[2] + x[0]).sin(), x[3].cos()].map(|v| C64::new(v, 0.0))
        };
        let x: Point4 = [0.3, -0.2, 0.7, 0.1];
        let exact = x[0].cos() * x[1].cos() + x[1].cos() * x[2].cos() + (x[2] + x[0]).cos() - x[3].sin();
        let e1 = (fd_divergence(psi, &x, 0.2).re - exact).abs();
        let e2 = (fd_divergence(psi, &x, 0.1).re - exact).abs();
        assert!((e1 / e2).log2() >= 3.5, "{e1} {e2}");
    }

    #[test]
    fn plane_wave_densities() {
        // E + iB = f n^s e^{iσω(t-z)} with |n|² = 2
        let xhat = [ZERO, ONE, ZERO, ZERO];
        for ts in [2, 4] {
            let p = 2f64.powi(ts as i32 / 2);
            for sg in [1, -1] {
                let f = paper_wave(ts, C64::new(2.0, 0.0), 3.0, sg).unwrap();
                let d = densities(&f, &[0.0; 4], &xhat).unwrap();
                assert!((d.energy - 4.0 * p).abs() < 1e-9, "{ts} {d:?}");
                assert!((d.zilch + sg as f64 * 12.0 * p).abs() < 1e-9, "{ts} {d:?}");
                assert!((d.chiral_plus + 72.0).abs() < 1e-9 && d.chiral_minus.abs() < 1e-9, "{ts} {d:?}");
            }
            let g = paper_wave(ts, C64::new(1.0, 1.0), 1.0, 1).unwrap();
            let d = densities(&g, &[0.0; 4], &xhat).unwrap();
            assert!(d.chiral_plus.abs() < 1e-9 && (d.chiral_minus - 4.0).abs() < 1e-9, "{ts} {d:?}");
            // only f̄² survives the contraction with n
            let d = densities(&g, &[0.0; 4], &polarization_n_vector()).unwrap();
            assert!(d.chiral_plus.abs() < 1e-9 && (d.chiral_minus - 2.0 * p * p).abs() < 1e-9, "{ts} {d:?}");
        }
    }

    #[test]
    fn zero_field_has_zero_densities() {
        let f = Field::zero(2, 0);
        let d = densities(&f, &[0.3, 0.0, 0.1, 0.0], &polarization_n_vector()).unwrap();
        assert_eq!((d.energy, d.zilch, d.chiral_plus, d.chiral_minus), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn paper_wave_eb() {
        let f = paper_wave(2, C64::new(2.0, -1.0), 3.0, 1).unwrap();
        let x = [0.3, 0.1, 0.2, -0.5];
        let eb = eb_combination(&f, &x).unwrap();
        let ph = 3.0 * (x[0] - x[3]);
        let want = polarization_n().scale(C64::new(2.0, -1.0) * C64::new(ph.cos(), ph.sin()));
        assert!((&eb - &want).norm_inf() < 1e-12);
    }

    #[test]
    fn split_equations_hold_on_shell() {
        let mut rng = seeded();
        for ts in 1..=4 {
            let f = random_family(&mut rng, ts, 3, 2.0 * std::f64::consts::PI, 2).unwrap();
            for _ in 0..5 {
                let x = random_point(&mut rng, 1.0);
                let r = split_residual(&f, &x).unwrap();
                assert!(r < 1e-11, "ts={ts}: {r}");
            }
        }
    }

    #[test]
    fn duality_rotates_e_into_b() {
        let mut rng = seeded();
        let f = random_family(&mut rng, 2, 2, 2.0 * std::f64::consts::PI, 2).unwrap();
        let x = [0.1, 0.2, 0.3, 0.4];
        let a = eb_split(&f, &x).unwrap();
        let b = eb_split(&crate::solutions::duality(&f), &x).unwrap();
        assert!((&b.e + a.b.as_ref().unwrap()).norm_inf() < 1e-12);
        assert!((b.b.as_ref().unwrap() - &a.e).norm_inf() < 1e-12);
    }

    #[test]
    fn currents_are_conserved() {
        let mut rng = seeded();
        for ts in 1..=4 {
            let f = random_family(&mut rng, ts, 3, 2.0 * std::f64::consts::PI, 2).unwrap();
            let z = random_ckv(&mut rng);
            let y = random_cky(&mut rng);
            let k = [1.0, 0.0, 2.0];
            let w = adjoint_wave(ts, &alpha_for_wavevector(&k).unwrap(), C64::new(0.3, 0.8), 1).unwrap();
            let mut cs = vec![("W".to_string(), elementary_current(&w, &f).unwrap())];
            for n in 0..=1 {
                cs.push((format!("T{n}"), stress_energy(&f, &z, n).unwrap()));
                cs.push((format!("Z{n}"), zilch(&f, &z, n).unwrap()));
                cs.push((format!("V{n}"), chiral(&f, &y, &z, n).unwrap()));
            }
            for (name, c) in &cs {
                let x = random_point(&mut rng, 1.0);
                let r = divergence_residual(c, &x, default_step(c));
                assert!(r < 1e-6, "ts={ts} {name}: {r}");
            }
        }
    }
}

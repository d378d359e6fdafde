//! Command-line front end: `verify`, `count`, `quantities` and `basis`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the report is still
//! written), 2 on usage or configuration errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    densities, independence_rank, random_axis_family, rng_from_seed, run_verification, spin_label, QuantityReport,
    VerifyConfig,
};
use crate::counting::{consistency_check, enumerate_basis, weight_count, CountTable, ENUMERATE_BOUND};
use crate::currents::{CurrentKind, CurrentSpec};
use crate::error::{Error, Result};
use crate::killing::KillingSpinorJson;
use crate::solutions::{paper_wave, plane_wave, SolutionField};
use crate::spinor::{SymSpinor, C64, I, ONE, ZERO};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest twice-spin accepted by the numerical subcommands.
pub const MAX_TWICE_SPIN: usize = 4;
/// Largest Lie-derivative order accepted by `verify`.
pub const MAX_ORDER: usize = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "spincons", version, about = "Conserved currents of massless spin-s fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check conservation, time independence and duality parity of one current.
    Verify(VerifyArgs),
    /// Tabulate current counts and check the weight identities.
    Count(CountArgs),
    /// Plane-wave densities against their closed forms.
    Quantities(QuantitiesArgs),
    /// List a current basis of given weight and check its rank.
    Basis(BasisArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
pub enum CurrentArg {
    #[value(alias = "w")]
    W,
    #[value(alias = "t")]
    T,
    #[value(alias = "z")]
    Z,
    #[value(alias = "v")]
    V,
}

impl From<CurrentArg> for CurrentKind {
    fn from(c: CurrentArg) -> Self {
        match c {
            CurrentArg::W => CurrentKind::W,
            CurrentArg::T => CurrentKind::T,
            CurrentArg::Z => CurrentKind::Z,
            CurrentArg::V => CurrentKind::V,
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Spin as "1/2", "1", "3/2", "2".
    #[arg(long, value_parser = parse_spin)]
    pub spin: usize,
    #[arg(long, value_enum, ignore_case = true)]
    pub current: CurrentArg,
    /// Number of weighted Lie derivatives applied to the field.
    #[arg(long, default_value_t = 0)]
    pub order: usize,
    /// RNG seed; defaults to $SPINCONS_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub modes: usize,
    /// Periodic box side.
    #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
    pub box_l: f64,
    /// Quadrature points per side.
    #[arg(long, default_value_t = 12)]
    pub grid: usize,
    /// Divergence sample points.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub div_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub quantity_tol: f64,
    /// Relative perturbation of one coefficient of the current; 0 leaves it intact.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub break_coeff: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CountArgs {
    #[arg(long, value_parser = parse_spin)]
    pub spin: usize,
    #[arg(long, default_value_t = 2)]
    pub max_order: u64,
    #[arg(long, default_value_t = 8)]
    pub max_weight: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Direction {
    /// The complex polarization vector `n = x̂ + iŷ`.
    N,
    /// The real unit vector `x̂`.
    X,
}

#[derive(clap::Args, Debug, Clone)]
pub struct QuantitiesArgs {
    #[arg(long, value_parser = parse_spin)]
    pub spin: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Complex amplitude such as "2", "1+1i", "-0.5-2i".
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub amp: C64,
    /// Propagation sign of the phase `e^{±iω(t-z)}`.
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    pub sign: i8,
    /// Spatial vector in the chiral densities.
    #[arg(long, value_enum, default_value = "n")]
    pub direction: Direction,
    /// Sample points along one wavelength for the slice average.
    #[arg(long, default_value_t = 16)]
    pub slice: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct BasisArgs {
    #[arg(long, value_parser = parse_spin)]
    pub spin: usize,
    #[arg(long)]
    pub weight: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random families used for the rank; defaults to the count plus 5.
    #[arg(long)]
    pub families: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub grid: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Parses "1/2", "3/2", "2", ... into twice the spin.
pub fn parse_spin(s: &str) -> std::result::Result<usize, String> {
    let s = s.trim();
    let twice = match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<usize>().ok().filter(|n| n % 2 == 1),
        Some(_) => None,
        None => s.parse::<usize>().ok().map(|n| 2 * n),
    };
    match twice {
        Some(0) => Err("spin must be at least 1/2".into()),
        Some(t) => Ok(t),
        None => Err(format!("'{s}' is not a spin; use 1/2, 1, 3/2, ...")),
    }
}

/// Parses "a", "bi", "a+bi", "a-bi".
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("'{s}' is not a complex number");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(C64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

fn parse_sign(s: &str) -> std::result::Result<i8, String> {
    match s.trim() {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(format!("sign must be + or -, got '{other}'")),
    }
}

fn resolve_seed(seed: Option<u64>) -> Result<u64> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("SPINCONS_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Config(format!("SPINCONS_SEED='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn check_spin(ts: usize) -> Result<()> {
    if ts > MAX_TWICE_SPIN {
        return Err(Error::Config(format!("spin {} is above the supported maximum 2", spin_label(ts))));
    }
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: Option<u64>,
    config: C,
    result: R,
}

/// Rendered output and pass flag of one subcommand.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub output: String,
}

fn render<C: Serialize, R: Serialize>(
    format: Format,
    command: &str,
    seed: Option<u64>,
    config: C,
    result: R,
    csv: impl FnOnce(&R) -> String,
    text: impl FnOnce(&R) -> String,
) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let env = Envelope { tool: "spincons", version: env!("CARGO_PKG_VERSION"), command, seed, config, result };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::Serde(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => csv(&result),
        Format::Text => text(&result),
    })
}

// ---------------------------------------------------------------------------------------
// verify

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    check_spin(a.spin)?;
    if a.order > MAX_ORDER {
        return Err(Error::Config(format!("order {} is above the supported maximum {MAX_ORDER}", a.order)));
    }
    if a.modes == 0 || a.points == 0 || a.grid == 0 || !(a.box_l > 0.0) {
        return Err(Error::Config("modes, points, grid and box side must be positive".into()));
    }
    let mut cfg = VerifyConfig::new(a.spin, a.current.into(), a.order, resolve_seed(a.seed)?);
    cfg.modes = a.modes;
    cfg.box_l = a.box_l;
    cfg.grid = a.grid;
    cfg.points = a.points;
    cfg.div_tol = a.div_tol;
    cfg.quantity_tol = a.quantity_tol;
    cfg.break_coeff = a.break_coeff;
    let report = run_verification(&cfg)?;
    let pass = report.pass;
    let output = render(a.common.format, "verify", Some(cfg.seed), &cfg, report, verify_csv, verify_text)?;
    Ok(Outcome { pass, output })
}

fn parity_label(p: Option<i8>) -> String {
    match p {
        Some(1) => "even".into(),
        Some(-1) => "odd".into(),
        Some(_) => "none".into(),
        None => "n/a".into(),
    }
}

fn verify_csv(r: &QuantityReport) -> String {
    let mut s = String::from("current,spin,order,seed,residual_max,quantity_drift,duality,expected,pass\n");
    let _ = writeln!(
        s,
        "{:?},{},{},{},{:e},{:e},{},{},{}",
        r.current,
        r.spin,
        r.order,
        r.seed,
        r.residual_max,
        r.quantity_drift,
        parity_label(r.parity.duality),
        parity_label(r.parity.expected),
        r.pass
    );
    s.push_str("\nt,quantity\n");
    for q in &r.quantities {
        let _ = writeln!(s, "{},{:e}", q.t, q.value);
    }
    s
}

fn verify_text(r: &QuantityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "current {:?}  spin {}  order {}  seed {}", r.current, r.spin, r.order, r.seed);
    let _ = writeln!(s, "divergence residual max  {:.3e}  (tol {:.0e})", r.residual_max, r.tolerances.divergence);
    for q in &r.quantities {
        let _ = writeln!(s, "  C(t = {:<4})  {:+.12e}", q.t, q.value);
    }
    let _ = writeln!(s, "quantity drift           {:.3e}  (tol {:.0e})", r.quantity_drift, r.tolerances.quantity);
    let _ = writeln!(s, "duality parity           {} (expected {})", parity_label(r.parity.duality), parity_label(r.parity.expected));
    let _ = writeln!(s, "{}", if r.pass { "PASS" } else { "FAIL" });
    s
}

// ---------------------------------------------------------------------------------------
// count

#[derive(Serialize)]
struct CountConfig {
    spin: String,
    twice_spin: usize,
    max_order: u64,
    max_weight: u64,
}

pub fn cmd_count(a: &CountArgs) -> Result<Outcome> {
    if a.max_order > 64 || a.max_weight > 64 {
        return Err(Error::Config("orders and weights above 64 overflow the integer formulas".into()));
    }
    let table = consistency_check(a.spin as u64, a.max_order, a.max_weight);
    let cfg = CountConfig { spin: spin_label(a.spin), twice_spin: a.spin, max_order: a.max_order, max_weight: a.max_weight };
    let pass = table.ok;
    let output = render(a.common.format, "count", None, cfg, table, count_csv, count_text)?;
    Ok(Outcome { pass, output })
}

fn count_csv(t: &CountTable) -> String {
    let mut s = String::from("n,T,Z,V\n");
    for (n, c) in t.counts.iter().enumerate() {
        let _ = writeln!(s, "{n},{},{},{}", c.t, c.z, c.v);
    }
    s.push_str("\nweight,weight_dim,count_sum,killing_sum,ok\n");
    for r in &t.weights {
        let _ = writeln!(s, "{},{},{},{},{}", r.weight, r.weight_dim, r.count_sum, r.killing_sum, r.ok);
    }
    s
}

fn count_text(t: &CountTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "spin {}", spin_label(t.twice_spin as usize));
    let _ = writeln!(s, "{:>3} {:>12} {:>12} {:>12}", "n", "T", "Z", "V");
    for (n, c) in t.counts.iter().enumerate() {
        let _ = writeln!(s, "{n:>3} {:>12} {:>12} {:>12}", c.t, c.z, c.v);
    }
    let _ = writeln!(s, "\n{:>3} {:>12} {:>12} {:>12}", "w", "dim", "counts", "killing");
    for r in &t.weights {
        let _ = writeln!(s, "{:>3} {:>12} {:>12} {:>12}  {}", r.weight, r.weight_dim, r.count_sum, r.killing_sum, if r.ok { "ok" } else { "MISMATCH" });
    }
    s
}

// ---------------------------------------------------------------------------------------
// quantities

#[derive(Serialize)]
struct QuantitiesConfig {
    spin: String,
    omega: f64,
    amp: [f64; 2],
    sign: i8,
    direction: Direction,
    slice: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub name: &'static str,
    /// Value at the origin.
    pub point: f64,
    /// Average over one wavelength along the propagation axis.
    pub slice: f64,
    pub closed_form: Option<f64>,
    /// `|point - closed_form|` relative to the natural scale of the row.
    pub deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityTable {
    pub hybrid: bool,
    pub rows: Vec<DensityRow>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Wave along `z` with `k = ω(1,0,0,∓1)`: the `E+iB` wave for integer spin, the matching
/// single-mode solution otherwise.
fn z_wave(ts: usize, f: C64, omega: f64, sign: i8) -> Result<SolutionField> {
    if ts % 2 == 0 {
        paper_wave(ts, f, omega, sign)
    } else {
        if !(omega > 0.0) {
            return Err(Error::Precondition("ω must be positive".into()));
        }
        let alpha = SymSpinor::iota().scale(C64::new(2f64.powf(0.25) * omega.sqrt(), 0.0));
        plane_wave(ts, &alpha, f, sign)
    }
}

pub fn density_table(ts: usize, f: C64, omega: f64, sign: i8, direction: Direction, slice: usize) -> Result<DensityTable> {
    let field = z_wave(ts, f, omega, sign)?;
    let u = match direction {
        Direction::N => crate::analysis::polarization_n_vector(),
        Direction::X => [ZERO, ONE, ZERO, ZERO],
    };
    let at = |z: f64| densities(&field, &[0.0, 0.0, 0.0, z], &u);
    let d0 = at(0.0)?;
    let lambda = 2.0 * std::f64::consts::PI / omega;
    let n = slice.max(1);
    let mut mean = [0.0; 4];
    for j in 0..n {
        let d = at(lambda * j as f64 / n as f64)?;
        for (m, v) in mean.iter_mut().zip([d.energy, d.zilch, d.chiral_plus, d.chiral_minus]) {
            *m += v / n as f64;
        }
    }
    let f2 = f * f;
    let a2 = f.norm_sqr();
    let w2 = omega * omega;
    // closed forms for E+iB = f n^s e^{±iω(t-z)}
    let closed: [Option<f64>; 4] = if ts % 2 == 0 {
        [Some(a2), Some(-(sign as f64) * omega * a2), Some(w2 * 2.0 * f2.re), Some((I * w2 * (f2 - f2.conj())).re)]
    } else {
        [None; 4]
    };
    let scales = [a2, omega * a2, w2 * a2, w2 * a2];
    let names = ["energy", "zilch", "chiral_plus", "chiral_minus"];
    let points = [d0.energy, d0.zilch, d0.chiral_plus, d0.chiral_minus];
    let tolerance = 1e-9;
    let rows: Vec<DensityRow> = (0..4)
        .map(|k| {
            let deviation = closed[k].map(|c| if scales[k] > 0.0 { (points[k] - c).abs() / scales[k] } else { (points[k] - c).abs() });
            DensityRow { name: names[k], point: points[k], slice: mean[k], closed_form: closed[k], deviation }
        })
        .collect();
    let pass = rows.iter().all(|r| r.deviation.map_or(true, |d| d <= tolerance));
    Ok(DensityTable { hybrid: d0.hybrid, rows, tolerance, pass })
}

pub fn cmd_quantities(a: &QuantitiesArgs) -> Result<Outcome> {
    check_spin(a.spin)?;
    if !(a.omega > 0.0) {
        return Err(Error::Config("omega must be positive".into()));
    }
    let table = density_table(a.spin, a.amp, a.omega, a.sign, a.direction, a.slice)?;
    let cfg = QuantitiesConfig {
        spin: spin_label(a.spin),
        omega: a.omega,
        amp: [a.amp.re, a.amp.im],
        sign: a.sign,
        direction: a.direction,
        slice: a.slice,
    };
    let pass = table.pass;
    let output = render(a.common.format, "quantities", None, cfg, table, density_csv, density_text)?;
    Ok(Outcome { pass, output })
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:e}"))
}

fn density_csv(t: &DensityTable) -> String {
    let mut s = String::from("density,point,slice,closed_form,deviation\n");
    for r in &t.rows {
        let _ = writeln!(s, "{},{:e},{:e},{},{}", r.name, r.point, r.slice, opt(r.closed_form), opt(r.deviation));
    }
    s
}

fn density_text(t: &DensityTable) -> String {
    let mut s = String::new();
    if t.hybrid {
        s.push_str("half-integer spin: spinor particle densities, no closed forms\n");
    }
    let _ = writeln!(s, "{:<13} {:>16} {:>16} {:>16} {:>11}", "density", "point", "slice", "closed form", "deviation");
    for r in &t.rows {
        let c = r.closed_form.map_or("-".to_string(), |x| format!("{x:.10}"));
        let d = r.deviation.map_or("-".to_string(), |x| format!("{x:.2e}"));
        let _ = writeln!(s, "{:<13} {:>16.10} {:>16.10} {:>16} {:>11}", r.name, r.point, r.slice, c, d);
    }
    if !t.hybrid {
        let _ = writeln!(s, "{}", if t.pass { "PASS" } else { "FAIL" });
    }
    s
}

// ---------------------------------------------------------------------------------------
// basis

#[derive(Serialize)]
struct BasisConfig {
    spin: String,
    weight: u64,
    families: usize,
    grid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub kind: CurrentKind,
    pub order: usize,
    pub killing: KillingSpinorJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub count: u64,
    pub currents: Vec<BasisEntry>,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub pass: bool,
}

fn entry(spec: &CurrentSpec) -> BasisEntry {
    let (order, ks) = match spec {
        CurrentSpec::U { xi, order, .. } => (*order, xi),
        CurrentSpec::T { zeta, order } | CurrentSpec::Z { zeta, order } => (*order, zeta),
        CurrentSpec::V { y, order, .. } => (*order, y),
        CurrentSpec::W { .. } => unreachable!("elementary currents are not enumerated"),
    };
    BasisEntry { kind: spec.kind(), order, killing: KillingSpinorJson::from(ks) }
}

/// Enumerated basis of weight `w` and the rank of its conserved quantities on seeded families.
pub fn basis_report(ts: usize, w: u64, seed: u64, families: Option<usize>, grid: usize) -> Result<BasisReport> {
    let specs = enumerate_basis(ts as u64, w)?;
    let count = weight_count(ts as u64, w);
    let nf = families.unwrap_or(specs.len() + 5);
    let l = 2.0 * std::f64::consts::PI;
    let mut rng = rng_from_seed(seed);
    let fams = (0..nf).map(|_| random_axis_family(&mut rng, ts, 3, l)).collect::<Result<Vec<_>>>()?;
    let rank = independence_rank(&specs, &fams, 0.0, grid, l)?;
    Ok(BasisReport {
        count,
        currents: specs.iter().map(entry).collect(),
        rank: rank.rank,
        singular_values: rank.singular_values,
        pass: rank.rank as u64 == count,
    })
}

pub fn cmd_basis(a: &BasisArgs) -> Result<Outcome> {
    check_spin(a.spin)?;
    if a.weight > ENUMERATE_BOUND {
        return Err(Error::Config(format!("weight {} is above the enumeration bound {ENUMERATE_BOUND}", a.weight)));
    }
    let seed = resolve_seed(a.seed)?;
    let report = basis_report(a.spin, a.weight, seed, a.families, a.grid)?;
    let cfg = BasisConfig {
        spin: spin_label(a.spin),
        weight: a.weight,
        families: a.families.unwrap_or(report.currents.len() + 5),
        grid: a.grid,
    };
    let pass = report.pass;
    let output = render(a.common.format, "basis", Some(seed), cfg, report, basis_csv, basis_text)?;
    Ok(Outcome { pass, output })
}

fn basis_csv(r: &BasisReport) -> String {
    let mut s = String::from("index,kind,order,k,l,label\n");
    for (i, e) in r.currents.iter().enumerate() {
        let _ = writeln!(s, "{i},{:?},{},{},{},{}", e.kind, e.order, e.killing.k, e.killing.l, e.killing.label);
    }
    let _ = writeln!(s, "\ncount,rank,pass\n{},{},{}", r.count, r.rank, r.pass);
    s
}

fn basis_text(r: &BasisReport) -> String {
    let mut s = String::new();
    for (i, e) in r.currents.iter().enumerate() {
        let _ = writeln!(s, "{i:>3}  {:?} n={}  Killing ({},{}) {}", e.kind, e.order, e.killing.k, e.killing.l, e.killing.label);
    }
    let _ = writeln!(s, "count {}  rank {}  {}", r.count, r.rank, if r.pass { "PASS" } else { "FAIL" });
    s
}

// ---------------------------------------------------------------------------------------
// entry points

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Count(a) => cmd_count(a),
        Command::Quantities(a) => cmd_quantities(a),
        Command::Basis(a) => cmd_basis(a),
    }
}

fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Verify(a) => a.common.output.as_ref(),
        Command::Count(a) => a.common.output.as_ref(),
        Command::Quantities(a) => a.common.output.as_ref(),
        Command::Basis(a) => a.common.output.as_ref(),
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::Precondition(_) | Error::SizeLimit(_) | Error::Unsupported(_) | Error::SpinMismatch { .. })
}

/// Parses `args`, runs the subcommand, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match output_path(&cli) {
                Some(p) => std::fs::write(p, &out.output).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{}", out.output);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
                Ok(()) if out.pass => EXIT_PASS,
                Ok(()) => EXIT_FAIL,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

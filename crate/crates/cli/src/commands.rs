use std::path::Path;
use std::sync::Arc;

use clap::Args;
use hypermech::covariant::{
    covariant_transform, fsb_annihilator_residual, hardy_holomorphy_residual, hardy_image_closed_form,
    cauchy_riemann_residual, Group, LineQuadrature, MotherWavelet, MARGIN,
};
use hypermech::hypercomplex::{exp_unit, AlgebraKind, Hyper};
use hypermech::mechanics::{evolve_observed, harmonic_analytic, stable_dt, Hamiltonian, Mode, PhaseGrid};
use hypermech::numerics::linspace;
use hypermech::reps::{PlanckParams, StateEval};
use hypermech::sl2geom::{moebius, subgroup_element, SubgroupId};
use hypermech::states::{count_extrema, interference_curve, symmetric_pair};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{finite, positive, resolve, FileConfig};
use crate::output::{emit, to_json, Cell, Table};
use crate::{CliError, Common, Format};

fn format_of(common: &Common, file: &FileConfig) -> Result<Format, CliError> {
    resolve(file, "format", common.format, Format::Csv)
}

fn planck(common: &Common, file: &FileConfig) -> Result<PlanckParams, CliError> {
    let hbar = positive("hbar", resolve(file, "hbar", common.hbar, 1.0)?)?;
    PlanckParams::new(hbar).map_err(|e| CliError::module("reps", e))
}

fn table_json(t: &Table) -> Value {
    let rows = t
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (h, c) in t.header.iter().zip(row) {
                let v = match c {
                    Cell::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
                    Cell::Text(s) => Value::String(s.clone()),
                    Cell::Empty => Value::Null,
                };
                obj.insert(h.to_string(), v);
            }
            Value::Object(obj)
        })
        .collect();
    Value::Array(rows)
}

fn emit_table(common: &Common, file: &FileConfig, t: &Table) -> Result<(), CliError> {
    let text = match format_of(common, file)? {
        Format::Csv => t.to_csv(),
        Format::Json => to_json(&table_json(t))?,
    };
    emit(common.out.as_deref(), &text)
}

fn parse_list<T: std::str::FromStr<Err = String> + Copy>(s: &str, all: &[T]) -> Result<Vec<T>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    s.split(',').map(|p| p.trim().parse::<T>().map_err(CliError::usage)).collect()
}

fn t_range(tmin: f64, tmax: f64, n: usize) -> Vec<f64> {
    if n == 0 || tmin > tmax {
        Vec::new()
    } else if n == 1 {
        vec![tmin]
    } else {
        linspace(tmin, tmax, n)
    }
}

#[derive(Args, Debug, Default)]
pub struct OrbitsArgs {
    /// A, N, K, Nprime, Aprime, a comma list, or all.
    #[arg(long)]
    pub subgroup: Option<String>,
    /// elliptic, parabolic, hyperbolic, a comma list, or all.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    /// Number of samples along each orbit.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub u0: Option<f64>,
    #[arg(long)]
    pub v0: Option<f64>,
}

/// `d/dt g(t) w` at `t = 0`, i.e. `X12 + (X11 - X22) w - X21 w^2`.
fn derived_action(id: SubgroupId, w: &Hyper) -> Option<Hyper> {
    let h = 1e-5;
    let (p, m) = (subgroup_element(id, h), subgroup_element(id, -h));
    let d = |a: f64, b: f64| (a - b) / (2.0 * h);
    let (x11, x12, x21, x22) = (d(p.a, m.a), d(p.b, m.b), d(p.c, m.c), d(p.d, m.d));
    let w2 = w.mul(w).ok()?;
    Hyper::real(x12, w.kind).add(&w.scale(x11 - x22)).ok()?.sub(&w2.scale(x21)).ok()
}

fn orbit_table(id: SubgroupId, kind: AlgebraKind, w0: &Hyper, ts: &[f64]) -> Table {
    let mut t = Table::new(&["t", "u", "v", "kind", "subgroup"]);
    for &s in ts {
        // points where c w + d is a zero divisor are left out
        if let Ok(w) = moebius(&subgroup_element(id, s), w0) {
            t.push(vec![s.into(), w.u.into(), w.v.into(), kind.name().into(), id.name().into()]);
        }
    }
    t
}

fn field_table(id: SubgroupId, kind: AlgebraKind) -> Table {
    let mut t = Table::new(&["u", "v", "du", "dv", "kind", "subgroup"]);
    for u in linspace(-2.0, 2.0, 9) {
        for v in linspace(0.25, 2.0, 8) {
            let w = Hyper::new(u, v, kind);
            if let Some(d) = derived_action(id, &w) {
                t.push(vec![u.into(), v.into(), d.u.into(), d.v.into(), kind.name().into(), id.name().into()]);
            }
        }
    }
    t
}

pub fn orbits(common: &Common, file: &FileConfig, a: &OrbitsArgs) -> Result<u8, CliError> {
    let subs = parse_list(&resolve(file, "subgroup", a.subgroup.clone(), "all".into())?, &SubgroupId::ALL)?;
    let kinds = parse_list(&resolve(file, "kind", a.kind.clone(), "all".into())?, &AlgebraKind::ALL)?;
    let tmin = finite("tmin", resolve(file, "tmin", a.tmin, -3.0)?)?;
    let tmax = finite("tmax", resolve(file, "tmax", a.tmax, 3.0)?)?;
    let n = resolve(file, "n", a.n, 201)?;
    let u0 = finite("u0", resolve(file, "u0", a.u0, 0.0)?)?;
    let v0 = positive("v0", resolve(file, "v0", a.v0, 2.0)?)?;
    let ts = t_range(tmin, tmax, n);
    match &common.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            for id in &subs {
                for kind in &kinds {
                    let w0 = Hyper::new(u0, v0, *kind);
                    let stem = format!("{}_{}", id.name(), kind.name());
                    let orbit = orbit_table(*id, *kind, &w0, &ts).to_csv();
                    emit(Some(&dir.join(format!("orbit_{stem}.csv"))), &orbit)?;
                    let field = field_table(*id, *kind).to_csv();
                    emit(Some(&dir.join(format!("field_{stem}.csv"))), &field)?;
                }
            }
        }
        None => {
            let mut all = Table::new(&["t", "u", "v", "kind", "subgroup"]);
            for id in &subs {
                for kind in &kinds {
                    all.rows.extend(orbit_table(*id, *kind, &Hyper::new(u0, v0, *kind), &ts).rows);
                }
            }
            emit_table(common, file, &all)?;
        }
    }
    Ok(0)
}

#[derive(Args, Debug, Default)]
pub struct RotationsArgs {
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
}

pub fn rotations(common: &Common, file: &FileConfig, a: &RotationsArgs) -> Result<u8, CliError> {
    let kinds = parse_list(&resolve(file, "kind", a.kind.clone(), "all".into())?, &AlgebraKind::ALL)?;
    let tmin = finite("tmin", resolve(file, "tmin", a.tmin, -2.0)?)?;
    let tmax = finite("tmax", resolve(file, "tmax", a.tmax, 2.0)?)?;
    let n = resolve(file, "n", a.n, 101)?;
    let mut t = Table::new(&["t", "u", "v", "kind"]);
    for kind in kinds {
        for s in t_range(tmin, tmax, n) {
            let w = exp_unit(s, kind);
            t.push(vec![s.into(), w.u.into(), w.v.into(), kind.name().into()]);
        }
    }
    emit_table(common, file, &t)?;
    Ok(0)
}

#[derive(Args, Debug, Default)]
pub struct DynamicsArgs {
    /// harmonic or unharmonic.
    #[arg(long = "H", alias = "hamiltonian")]
    pub hamiltonian: Option<String>,
    /// quantum, hyperbolic or classical.
    #[arg(long)]
    pub mode: Option<String>,
    /// Final time; one period by default.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Centre of the initial Gaussian.
    #[arg(long, allow_hyphen_values = true)]
    pub q0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<f64>,
    /// Approximate number of output rows.
    #[arg(long)]
    pub samples: Option<usize>,
}

pub fn dynamics(common: &Common, file: &FileConfig, a: &DynamicsArgs) -> Result<u8, CliError> {
    let pp = planck(common, file)?;
    let m = positive("m", resolve(file, "m", common.m, 1.0)?)?;
    let k = positive("k", resolve(file, "k", common.k, 1.0)?)?;
    let n = resolve(file, "grid", common.grid, 128)?;
    let l = positive("domain", resolve(file, "domain", common.domain, 6.0)?)?;
    let mode: Mode = resolve(file, "mode", a.mode.clone(), "quantum".into())?
        .parse()
        .map_err(|e| CliError::module("mechanics", e))?;
    let kind = resolve(file, "H", a.hamiltonian.clone(), "harmonic".into())?;
    let h = match kind.to_ascii_lowercase().as_str() {
        "harmonic" => Hamiltonian::Harmonic { m, k },
        "unharmonic" | "anharmonic" => Hamiltonian::Unharmonic {
            m,
            k,
            lambda: finite("lambda", resolve(file, "lambda", a.lambda, 0.7)?)?,
        },
        other => return Err(CliError::usage(format!("unknown Hamiltonian `{other}`"))),
    };
    let t_end = resolve(file, "t", a.t, h.period())?;
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(CliError::usage(format!("--t must be non-negative, got {t_end}")));
    }
    let (q0, p0) = (resolve(file, "q0", a.q0, 1.5)?, resolve(file, "p0", a.p0, 0.0)?);
    let samples = resolve(file, "samples", a.samples, 50)?.max(1);
    let init = move |q: f64, p: f64| (-((q - q0) * (q - q0) + (p - p0) * (p - p0))).exp();
    let f0 = PhaseGrid::from_fn(l, n, pp, init).map_err(|e| CliError::module("mechanics", e))?;
    let limit = stable_dt(mode, &h, &f0);
    let steps = if t_end == 0.0 { 0 } else { (t_end / (0.9 * limit)).ceil() as usize };
    let dt = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let every = (steps / samples).max(1);
    let harmonic = matches!(h, Hamiltonian::Harmonic { .. });
    let mut table = Table::new(&["t", "L2_mass", "rel_err_vs_analytic"]);
    let mut errors = None;
    let row = |s: usize, g: &PhaseGrid<f64>| -> Result<Vec<Cell>, CliError> {
        let t = s as f64 * dt;
        let err = if harmonic {
            let exact = PhaseGrid::from_fn(l, n, pp, harmonic_analytic(m, k, init, t)).map_err(|e| CliError::module("mechanics", e))?;
            Cell::Num(g.rel_l2_error(&exact).map_err(|e| CliError::module("mechanics", e))?)
        } else {
            Cell::Empty
        };
        Ok(vec![t.into(), g.l2_norm().into(), err])
    };
    table.push(row(0, &f0)?);
    evolve_observed(mode, &h, &f0, dt, steps, |s, g| {
        if s > 0 && (s % every == 0 || s == steps) && errors.is_none() {
            match row(s, g) {
                Ok(r) => table.push(r),
                Err(e) => errors = Some(e),
            }
        }
    })
    .map_err(|e| CliError::module("mechanics", e))?;
    if let Some(e) = errors {
        return Err(e);
    }
    emit_table(common, file, &table)?;
    Ok(0)
}

#[derive(Args, Debug, Default)]
pub struct InterferenceArgs {
    #[arg(long)]
    pub mode: Option<String>,
    /// gaussian, rational or bump.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cmax: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
}

pub fn interference(common: &Common, file: &FileConfig, a: &InterferenceArgs) -> Result<u8, CliError> {
    let pp = planck(common, file)?;
    let m = positive("m", resolve(file, "m", common.m, 1.0)?)?;
    let k = positive("k", resolve(file, "k", common.k, 1.0)?)?;
    let mode: Mode = resolve(file, "mode", a.mode.clone(), "quantum".into())?
        .parse()
        .map_err(|e| CliError::module("mechanics", e))?;
    let family = resolve(file, "family", a.family.clone(), "rational".into())?.to_ascii_lowercase();
    let ca = finite("a", resolve(file, "a", a.a, 0.0)?)?;
    let cb = finite("b", resolve(file, "b", a.b, 0.5)?)?;
    let cmin = finite("cmin", resolve(file, "cmin", a.cmin, -2.0)?)?;
    let cmax = finite("cmax", resolve(file, "cmax", a.cmax, 2.0)?)?;
    let n = resolve(file, "n", a.n, 201)?;
    let (s1, s2) = symmetric_pair(&family, ca, cb, m, k, pp).map_err(|e| CliError::module("states", e))?;
    let cs = t_range(cmin, cmax, n);
    let rows = interference_curve(&s1, &s2, &cs, mode).map_err(|e| CliError::module("states", e))?;
    let mut t = Table::new(&["c", "sum", "interference", "mode", "state_family"]);
    for r in &rows {
        t.push(vec![r.c.into(), r.sum.into(), r.interference.into(), mode.name().into(), family.as_str().into()]);
    }
    if format_of(common, file)? == Format::Json {
        #[derive(Serialize)]
        struct Report {
            rows: Value,
            extrema: usize,
        }
        let vals: Vec<f64> = rows.iter().map(|r| r.interference).collect();
        let rep = Report {
            rows: table_json(&t),
            extrema: count_extrema(&vals, 1e-9),
        };
        emit(common.out.as_deref(), &to_json(&rep)?)?;
    } else {
        emit(common.out.as_deref(), &t.to_csv())?;
    }
    Ok(0)
}

#[derive(Args, Debug, Default)]
pub struct WaveletArgs {
    /// heisenberg or sl2.
    #[arg(long)]
    pub group: Option<String>,
    /// gaussian, perturbed, f-plus or f-minus.
    #[arg(long)]
    pub mother: Option<String>,
    /// Width parameter c of the Gaussian mother wavelet e^{-c q^2/2}.
    #[arg(long)]
    pub c: Option<f64>,
    /// Perturbation of the perturbed Gaussian.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Centre of the Gaussian test state (Heisenberg group).
    #[arg(long, allow_hyphen_values = true)]
    pub centre: Option<f64>,
    /// The SL(2,R) test state is 1/(t - i pole).
    #[arg(long, allow_hyphen_values = true)]
    pub pole: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ymin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ymax: Option<f64>,
    /// Where to write the JSON residual report.
    #[arg(long)]
    pub report: Option<std::path::PathBuf>,
}

#[derive(Debug, Serialize)]
struct WaveletReport {
    group: &'static str,
    mother: String,
    grid: usize,
    residual_name: &'static str,
    residual: f64,
    closed_form_error: Option<f64>,
}

pub fn wavelet(common: &Common, file: &FileConfig, a: &WaveletArgs) -> Result<u8, CliError> {
    let pp = planck(common, file)?;
    let group = match resolve(file, "group", a.group.clone(), "heisenberg".into())?.to_ascii_lowercase().as_str() {
        "heisenberg" | "h1" => Group::Heisenberg,
        "sl2" => Group::Sl2,
        other => return Err(CliError::usage(format!("unknown group `{other}`"))),
    };
    let default_mother = if group == Group::Heisenberg { "gaussian" } else { "f-plus" };
    let mother_name = resolve(file, "mother", a.mother.clone(), default_mother.into())?.to_ascii_lowercase();
    let c = positive("c", resolve(file, "c", a.c, 2.0 * std::f64::consts::PI)?)?;
    let mother = match mother_name.as_str() {
        "gaussian" => MotherWavelet::gaussian(c),
        "perturbed" => MotherWavelet::perturbed_gaussian(c, resolve(file, "eps", a.eps, 0.5)?),
        "f-plus" => MotherWavelet::f_plus(),
        "f-minus" => MotherWavelet::f_minus(),
        other => return Err(CliError::usage(format!("unknown mother wavelet `{other}`"))),
    };
    if mother.group != group {
        return Err(CliError::usage(format!("mother wavelet `{mother_name}` does not belong to this group")));
    }
    let interior = resolve(file, "grid", common.grid, 64)?;
    if interior == 0 {
        return Err(CliError::usage("--grid must be positive"));
    }
    let (dx, dy) = match group {
        Group::Heisenberg => ((-1.0, 1.0), (-1.0, 1.0)),
        Group::Sl2 => ((-1.0, 1.0), (0.5, 2.5)),
    };
    let xmin = resolve(file, "xmin", a.xmin, dx.0)?;
    let xmax = resolve(file, "xmax", a.xmax, dx.1)?;
    let ymin = resolve(file, "ymin", a.ymin, dy.0)?;
    let ymax = resolve(file, "ymax", a.ymax, dy.1)?;
    if !(xmin < xmax && ymin < ymax) {
        return Err(CliError::usage("empty transform domain"));
    }
    let xs = linspace(xmin, xmax, interior + 2 * MARGIN);
    let ys = linspace(ymin, ymax, interior + 2 * MARGIN);
    let (state, pole) = match group {
        Group::Heisenberg => {
            let q0 = resolve(file, "centre", a.centre, 0.3)?;
            let f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
                Arc::new(move |q| Complex64::new((-0.5 * (q - q0) * (q - q0)).exp(), 0.0));
            (StateEval::Config(f), None)
        }
        Group::Sl2 => {
            let p = resolve(file, "pole", a.pole, -1.0)?;
            if p == 0.0 {
                return Err(CliError::usage("--pole must be non-zero"));
            }
            let f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |t| 1.0 / Complex64::new(t, -p));
            (StateEval::Config(f), Some(p))
        }
    };
    let tg = covariant_transform(pp, &state, &mother, &xs, &ys, LineQuadrature::default())
        .map_err(|e| CliError::module("covariant", e))?;
    let cov = |e| CliError::module("covariant", e);
    let (residual_name, residual, closed) = match group {
        Group::Heisenberg => ("fsb_annihilation", fsb_annihilator_residual(&tg, pp, c).map_err(cov)?, None),
        Group::Sl2 => {
            let closed = if pole == Some(-1.0) && mother_name == "f-plus" {
                let mut worst: f64 = 0.0;
                for (i, x) in xs.iter().enumerate() {
                    for (j, y) in ys.iter().enumerate() {
                        worst = worst.max((tg.at(i, j) - hardy_image_closed_form(*x, *y)).norm());
                    }
                }
                Some(worst)
            } else {
                None
            };
            if mother_name == "f-minus" {
                ("anti_holomorphy", cauchy_riemann_residual(&tg, -1.0).map_err(cov)?, closed)
            } else {
                ("holomorphy", hardy_holomorphy_residual(&tg).map_err(cov)?, closed)
            }
        }
    };
    let report = WaveletReport {
        group: match group {
            Group::Heisenberg => "heisenberg",
            Group::Sl2 => "sl2",
        },
        mother: mother_name,
        grid: interior,
        residual_name,
        residual,
        closed_form_error: closed,
    };
    let mut t = Table::new(&["x", "y", "re", "im"]);
    for (i, x) in tg.xs.iter().enumerate() {
        for (j, y) in tg.ys.iter().enumerate() {
            let v = tg.at(i, j);
            t.push(vec![(*x).into(), (*y).into(), v.re.into(), v.im.into()]);
        }
    }
    let report_json = to_json(&report)?;
    match format_of(common, file)? {
        Format::Json => emit(common.out.as_deref(), &report_json)?,
        Format::Csv => emit(common.out.as_deref(), &t.to_csv())?,
    }
    if let Some(p) = &a.report {
        emit(Some(Path::new(p)), &report_json)?;
    }
    Ok(0)
}

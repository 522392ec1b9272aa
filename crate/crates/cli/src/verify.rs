//! `hypermech verify`: runs invariant checks and reports residuals as JSON.

use std::f64::consts::PI;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use hypermech::covariant::{
    covariant_transform, fsb_annihilator_residual, hardy_holomorphy_residual, reconstruction_check,
    sl2_line_uncertainty, LineQuadrature, MotherWavelet, ReconstructionGrid, MARGIN,
};
use hypermech::heisenberg::{field_commutator_residual, invariant_field_step, Field, GroupFn, HElem, Side};
use hypermech::hypercomplex::{exp_unit, AlgebraKind, Hyper};
use hypermech::ladder::{solve_ladder, Basis, Generator, LadderBasis, LieTable};
use hypermech::numerics::linspace;
use hypermech::reps::{
    commutator_report, dual_ops, identity_residual, quadratic_relations_check, schrodinger_ops, OperatorExpr,
    PlanckParams, StateEval, Variant,
};
use hypermech::sl2geom::{iwasawa, moebius, subgroup_element, Mat2, SubgroupId};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{positive, resolve, FileConfig};
use crate::output::{emit, to_json};
use crate::{CliError, Common};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Suite {
    #[default]
    All,
    Reps,
    Ladder,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// `all` runs every check; `reps` and `ladder` print detailed tables.
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Run only checks whose name starts with this prefix.
    #[arg(long)]
    pub only: Option<String>,
    /// Random cases per algebraic check.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Flips the sign of S in the Heisenberg commutator check.
    #[arg(long, hide = true)]
    pub inject_wrong_sign: bool,
}

#[derive(Debug, Serialize)]
struct CheckResult {
    name: String,
    residual: Option<f64>,
    threshold: f64,
    pass: bool,
    error: Option<CliError>,
}

#[derive(Debug, Serialize)]
struct Report {
    pass: bool,
    checks: Vec<CheckResult>,
}

type Runner = Box<dyn Fn() -> Result<f64, CliError>>;

struct Check {
    name: String,
    threshold: f64,
    run: Runner,
}

fn check(name: impl Into<String>, threshold: f64, run: impl Fn() -> Result<f64, CliError> + 'static) -> Check {
    Check {
        name: name.into(),
        threshold,
        run: Box::new(run),
    }
}

fn size(w: &Hyper) -> f64 {
    w.u.abs() + w.v.abs()
}

fn alg<T>(r: Result<T, hypermech::hypercomplex::AlgebraError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::module("hypercomplex", e))
}

fn random_hyper(rng: &mut ChaCha8Rng, k: AlgebraKind) -> Hyper {
    Hyper::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), k)
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    let a: f64 = rng.gen_range(0.3..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let (b, c) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    Mat2 { a, b, c, d: (1.0 + b * c) / a }
}

fn hypercomplex_checks(seed: u64, cases: usize) -> Vec<Check> {
    let ring = move || -> Result<f64, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for k in AlgebraKind::ALL {
            for _ in 0..cases {
                let (a, b, d) = (random_hyper(&mut rng, k), random_hyper(&mut rng, k), random_hyper(&mut rng, k));
                let scale = 1.0 + size(&a) * size(&b) * (1.0 + size(&d));
                let ab = alg(a.mul(&b))?;
                worst = worst.max(ab.dist(&alg(b.mul(&a))?) / scale);
                worst = worst.max(alg(ab.mul(&d))?.dist(&alg(a.mul(&alg(b.mul(&d))?))?) / scale);
                let lhs = alg(a.mul(&alg(b.add(&d))?))?;
                worst = worst.max(lhs.dist(&alg(ab.add(&alg(a.mul(&d))?))?) / scale);
            }
        }
        Ok(worst)
    };
    let modulus = move || -> Result<f64, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut worst: f64 = 0.0;
        for k in AlgebraKind::ALL {
            for _ in 0..cases {
                let (a, b) = (random_hyper(&mut rng, k), random_hyper(&mut rng, k));
                let m = alg(a.mul(&b))?.modulus_sq();
                worst = worst.max((m - a.modulus_sq() * b.modulus_sq()).abs() / (1.0 + (size(&a) * size(&b)).powi(2)));
            }
        }
        Ok(worst)
    };
    let expo = move || -> Result<f64, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        let mut worst: f64 = 0.0;
        for k in AlgebraKind::ALL {
            for _ in 0..cases {
                let (s, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let e = exp_unit(s + t, k);
                worst = worst.max(e.dist(&alg(exp_unit(s, k).mul(&exp_unit(t, k)))?) / (1.0 + size(&e)));
            }
        }
        Ok(worst)
    };
    vec![
        check("hypercomplex.ring_axioms", 1e-12, ring),
        check("hypercomplex.modulus_multiplicative", 1e-12, modulus),
        check("hypercomplex.exp_unit_homomorphism", 1e-12, expo),
    ]
}

fn sl2geom_checks(seed: u64, cases: usize) -> Vec<Check> {
    let geom = |e| CliError::module("sl2geom", e);
    let action = move || -> Result<f64, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        let mut worst: f64 = 0.0;
        for k in AlgebraKind::ALL {
            for _ in 0..cases {
                let (g1, g2) = (random_sl2(&mut rng), random_sl2(&mut rng));
                let w = Hyper::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0), k);
                // pairs that leave the domain of definition are skipped
                if let (Ok(inner), Ok(direct)) = (moebius(&g2, &w), moebius(&g1.mul(&g2), &w)) {
                    if let Ok(outer) = moebius(&g1, &inner) {
                        worst = worst.max(outer.dist(&direct) / (1.0 + size(&direct)).powi(2));
                    }
                }
            }
        }
        Ok(worst)
    };
    let iwa = move || -> Result<f64, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
        let mut worst: f64 = 0.0;
        for _ in 0..cases {
            let g = random_sl2(&mut rng);
            let (a, n, k) = iwasawa(&g);
            worst = worst.max(a.mul(&n).mul(&k).max_abs_diff(&g));
        }
        Ok(worst)
    };
    let isotropy = move || -> Result<f64, CliError> {
        let fixed = [
            (SubgroupId::K, Hyper::unit(AlgebraKind::Elliptic)),
            (SubgroupId::Aprime, Hyper::unit(AlgebraKind::Hyperbolic)),
            (SubgroupId::Nprime, Hyper::new(0.0, 0.7, AlgebraKind::Parabolic)),
        ];
        let mut worst: f64 = 0.0;
        for (id, w) in fixed {
            for t in linspace(-3.0, 3.0, 32) {
                worst = worst.max(moebius(&subgroup_element(id, t), &w).map_err(geom)?.dist(&w));
            }
        }
        Ok(worst)
    };
    vec![
        check("sl2geom.left_action", 1e-10, action),
        check("sl2geom.iwasawa", 1e-10, iwa),
        check("sl2geom.isotropy", 1e-10, isotropy),
    ]
}

fn ladder_set(g: Generator, k: AlgebraKind) -> Result<Vec<(f64, f64, bool)>, CliError> {
    let mut v: Vec<_> = solve_ladder(g, k, LadderBasis::Sl2)
        .map_err(|e| CliError::module("ladder", e))?
        .iter()
        .map(|s| (s.lambda.u, s.lambda.v, s.parametric))
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(v)
}

fn exact(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn ladder_checks() -> Vec<Check> {
    use AlgebraKind::*;
    vec![
        check("ladder.jacobi", 1e-15, || Ok(LieTable::standard().jacobi_defect())),
        check("ladder.elliptic", 0.5, || {
            Ok(exact(ladder_set(Generator::Z, Elliptic)? == vec![(0.0, -2.0, false), (0.0, 2.0, false)]))
        }),
        check("ladder.hyperbolic", 0.5, || {
            let want = vec![(-2.0, 0.0, false), (0.0, -2.0, false), (0.0, 2.0, false), (2.0, 0.0, false)];
            Ok(exact(ladder_set(Generator::TwoB, Hyperbolic)? == want))
        }),
        check("ladder.parabolic", 0.5, || {
            let want = vec![(0.0, -1.0, true), (0.0, 0.0, false), (0.0, 1.0, true)];
            Ok(exact(ladder_set(Generator::BminusHalfZ, Parabolic)? == want))
        }),
    ]
}

fn heisenberg_checks() -> Vec<Check> {
    vec![check("heisenberg.field_commutators", 1e-6, || {
        let fs: Vec<GroupFn<f64>> = vec![
            Arc::new(|g: HElem| g.x * g.y * (-(g.s * g.s + g.x * g.x + g.y * g.y) / 2.0).exp()),
            Arc::new(|g: HElem| (g.s + g.x * g.y).sin() * (-(g.x * g.x)).exp()),
        ];
        let points = [HElem::new(0.2, -0.3, 0.5), HElem::new(-0.7, 0.4, 1.1)];
        let mut worst: f64 = 0.0;
        for side in [Side::Left, Side::Right] {
            for f in &fs {
                for at in points {
                    let scale = 1.0 + invariant_field_step(Field::S, side, &**f, at, 1e-3).abs();
                    let mut r = field_commutator_residual(Field::X, Field::Y, Some(Field::S), side, f.clone(), at, 1e-3).abs();
                    for (u, v) in [(Field::S, Field::X), (Field::S, Field::Y)] {
                        r = r.max(field_commutator_residual(u, v, None, side, f.clone(), at, 1e-3).abs());
                    }
                    worst = worst.max(r / scale);
                }
            }
        }
        Ok(worst)
    })]
}

fn reps_checks(pp: PlanckParams, wrong_sign: bool) -> Vec<Check> {
    let rep = |e| CliError::module("reps", e);
    let mut out = vec![check("reps.heisenberg_sign", 1e-5, move || {
        let o = schrodinger_ops(pp);
        let (x, y) = (o.get(Basis::X).clone(), o.get(Basis::Y).clone());
        let s = o.get(Basis::S).clone();
        let rhs = if wrong_sign { s.scale(Complex64::new(-1.0, 0.0)) } else { s };
        let one = Complex64::new(1.0, 0.0);
        identity_residual(Variant::Schrodinger, &[(one, vec![x.clone(), y.clone()]), (-one, vec![y, x])], &rhs).map_err(rep)
    })];
    for v in Variant::DERIVED {
        out.push(check(format!("reps.commutators.{}", v.name()), 1e-5, move || {
            let r = commutator_report(v, pp).map_err(rep)?;
            if r.realization.is_none() {
                return Ok(f64::INFINITY);
            }
            Ok(r.relations.iter().map(|x| x.max_residual).fold(0.0, f64::max))
        }));
    }
    for v in [Variant::Schrodinger, Variant::Double] {
        out.push(check(format!("reps.quadratic.{}", v.name()), 1e-5, move || {
            let rows = quadratic_relations_check(v, pp).map_err(rep)?;
            Ok(rows.iter().map(|x| x.max_residual).fold(0.0, f64::max))
        }));
    }
    out.push(check("reps.dual_p_h", 1e-14, move || {
        let d = dual_ops(pp);
        let ph = hypermech::hypercomplex::DualComplex::p_part(Complex64::new(pp.h, 0.0));
        let diff = d.get(Basis::X).commutator(d.get(Basis::Y)).sub(&OperatorExpr::constant(ph));
        Ok(diff.max_coeff() / pp.h)
    }));
    out
}

fn covariant_checks(pp: PlanckParams) -> Vec<Check> {
    let cov = |e| CliError::module("covariant", e);
    let cw = 2.0 * PI;
    vec![
        check("covariant.fsb_annihilation", 1e-4, move || {
            let axis = linspace(-1.0, 1.0, 32 + 2 * MARGIN);
            let v = StateEval::Config(Arc::new(|q: f64| Complex64::new((-0.5 * (q - 0.3) * (q - 0.3)).exp(), 0.0)));
            let tg = covariant_transform(pp, &v, &MotherWavelet::gaussian(cw), &axis, &axis, LineQuadrature::default())
                .map_err(cov)?;
            fsb_annihilator_residual(&tg, pp, cw).map_err(cov)
        }),
        check("covariant.hardy_holomorphy", 1e-4, move || {
            let xs = linspace(-1.0, 1.0, 32 + 2 * MARGIN);
            let ys = linspace(0.5, 2.5, 32 + 2 * MARGIN);
            let v = StateEval::Config(Arc::new(|t: f64| 1.0 / Complex64::new(t, 1.0)));
            let tg = covariant_transform(pp, &v, &MotherWavelet::f_plus(), &xs, &ys, LineQuadrature::default())
                .map_err(cov)?;
            hardy_holomorphy_residual(&tg).map_err(cov)
        }),
        check("covariant.f_plus_minimal", 1e-5, move || {
            let (prod, _) = sl2_line_uncertainty(&MotherWavelet::f_plus().eval, 20000).map_err(cov)?;
            Ok((prod - 0.5).abs())
        }),
        check("covariant.reconstruction", 1e-3, move || {
            let phi = MotherWavelet::gaussian(cw);
            let v = StateEval::Config(Arc::new(|q: f64| Complex64::new((-(q - 0.5) * (q - 0.5)).exp(), 0.0)));
            reconstruction_check(pp, &v, &phi, &phi, ReconstructionGrid::default()).map_err(cov)
        }),
    ]
}

#[derive(Serialize)]
struct RepsRow {
    variant: Variant,
    relation: String,
    max_residual: f64,
    test_set_size: usize,
}

#[derive(Serialize)]
struct LadderRow {
    generator: &'static str,
    scalars: &'static str,
    lambda: String,
    coefficients: Vec<(String, String)>,
    parametric: bool,
}

fn reps_table(pp: PlanckParams) -> Result<Vec<RepsRow>, CliError> {
    let mut rows = Vec::new();
    for v in Variant::DERIVED {
        let r = commutator_report(v, pp).map_err(|e| CliError::module("reps", e))?;
        rows.extend(r.relations.into_iter().map(|x| RepsRow {
            variant: x.variant,
            relation: x.relation,
            max_residual: x.max_residual,
            test_set_size: x.test_set_size,
        }));
    }
    Ok(rows)
}

fn ladder_table() -> Result<Vec<LadderRow>, CliError> {
    let mut rows = Vec::new();
    for g in Generator::ALL {
        for k in AlgebraKind::ALL {
            for s in solve_ladder(g, k, LadderBasis::Sl2).map_err(|e| CliError::module("ladder", e))? {
                let coefficients = Basis::SL2
                    .iter()
                    .map(|b| (b.name().to_string(), s.vector.coeff(*b).to_string()))
                    .collect();
                rows.push(LadderRow {
                    generator: g.name(),
                    scalars: k.name(),
                    lambda: s.lambda.to_string(),
                    coefficients,
                    parametric: s.parametric,
                });
            }
        }
    }
    Ok(rows)
}

pub fn verify(common: &Common, file: &FileConfig, a: &VerifyArgs) -> Result<u8, CliError> {
    let hbar = positive("hbar", resolve(file, "hbar", common.hbar, 1.0)?)?;
    let pp = PlanckParams::new(hbar).map_err(|e| CliError::module("reps", e))?;
    match a.suite {
        Suite::Reps => {
            emit(common.out.as_deref(), &to_json(&reps_table(pp)?)?)?;
            return Ok(0);
        }
        Suite::Ladder => {
            emit(common.out.as_deref(), &to_json(&ladder_table()?)?)?;
            return Ok(0);
        }
        Suite::All => {}
    }
    let seed = resolve(file, "seed", common.seed, 0)?;
    let cases = resolve(file, "cases", a.cases, 1000)?;
    let mut checks = Vec::new();
    checks.extend(hypercomplex_checks(seed, cases));
    checks.extend(sl2geom_checks(seed, cases));
    checks.extend(ladder_checks());
    checks.extend(heisenberg_checks());
    checks.extend(reps_checks(pp, a.inject_wrong_sign));
    checks.extend(covariant_checks(pp));
    let prefix = a.only.clone().or(file.get("only")?).unwrap_or_default();
    let selected: Vec<Check> = checks.into_iter().filter(|c| c.name.starts_with(&prefix)).collect();
    if selected.is_empty() {
        return Err(CliError::usage(format!("no check matches `{prefix}`")));
    }
    let results: Vec<CheckResult> = selected
        .iter()
        .map(|c| match (c.run)() {
            Ok(r) => CheckResult {
                name: c.name.clone(),
                residual: Some(r),
                threshold: c.threshold,
                pass: r < c.threshold,
                error: None,
            },
            Err(e) => CheckResult {
                name: c.name.clone(),
                residual: None,
                threshold: c.threshold,
                pass: false,
                error: Some(e),
            },
        })
        .collect();
    let report = Report {
        pass: results.iter().all(|r| r.pass),
        checks: results,
    };
    emit(common.out.as_deref(), &to_json(&report)?)?;
    Ok(if report.pass { 0 } else { 1 })
}

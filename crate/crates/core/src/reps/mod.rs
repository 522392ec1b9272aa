//! Representations of the Heisenberg group induced by complex, dual and
//! double characters, their derived actions together with the Shale–Weil
//! operators, and the relation checks against the structure constants of
//! [`crate::ladder`].

pub mod gauss;
pub mod ops;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::heisenberg::{HElem, HeisenbergError, KernelGrid};
use crate::hypercomplex::{Double, Dual, DualComplex, Scalar};
use crate::ladder::{Basis, LieTable};
use crate::numerics::simpson;

pub use gauss::{GaussPoly, PhasePoly};
pub use ops::{Mono, OperatorExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("unknown representation variant `{0}`")]
    UnknownVariant(String),
    #[error("the {0} representation has no derived Shale–Weil form")]
    NoDerivedForm(Variant),
    #[error("state of type {state} cannot be acted on by the {variant} representation")]
    ValueAlgebraMismatch { variant: Variant, state: &'static str },
    #[error("derivative of order {0} is not supported by the stencils")]
    OrderTooHigh(u32),
    #[error("kernel grid does not match: {0}")]
    GridMismatch(String),
    #[error("integrand too large at the domain edge for q = {q}: {edge}")]
    DivergentIntegrand { q: f64, edge: f64 },
    #[error("Planck constant must be positive and finite, got {0}")]
    InvalidPlanck(f64),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
}

/// `hbar` together with `h = 2 pi hbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanckParams {
    pub hbar: f64,
    pub h: f64,
}

impl PlanckParams {
    pub fn new(hbar: f64) -> Result<Self, RepError> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(RepError::InvalidPlanck(hbar));
        }
        Ok(PlanckParams {
            hbar,
            h: 2.0 * PI * hbar,
        })
    }
}

impl Default for PlanckParams {
    fn default() -> Self {
        PlanckParams::new(1.0 / (2.0 * PI)).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    Schrodinger,
    Fsb,
    Dual,
    Double,
    Commutative,
}

impl Variant {
    pub const DERIVED: [Variant; 4] = [Variant::Schrodinger, Variant::Fsb, Variant::Dual, Variant::Double];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Schrodinger => "schrodinger",
            Variant::Fsb => "fsb",
            Variant::Dual => "dual",
            Variant::Double => "double",
            Variant::Commutative => "commutative",
        }
    }

    /// Operators act on functions of `q` only.
    pub fn on_configuration_space(self) -> bool {
        matches!(self, Variant::Schrodinger | Variant::Double)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "schrodinger" | "schroedinger" => Ok(Variant::Schrodinger),
            "fsb" => Ok(Variant::Fsb),
            "dual" | "parabolic" => Ok(Variant::Dual),
            "double" | "hyperbolic" => Ok(Variant::Double),
            "commutative" => Ok(Variant::Commutative),
            other => Err(RepError::UnknownVariant(other.to_string())),
        }
    }
}

pub type ConfFn<T> = Arc<dyn Fn(f64) -> T + Send + Sync>;
pub type PhaseFn<T> = Arc<dyn Fn(f64, f64) -> T + Send + Sync>;

/// Value of a dual-valued phase-space state `z + p w` together with the
/// first derivatives of `z`; the derivatives of `w` never enter the dual
/// representation because they come multiplied by `p`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualJet {
    pub val: DualComplex,
    pub zq: Complex64,
    pub zp: Complex64,
}

pub type DualState = Arc<dyn Fn(f64, f64) -> DualJet + Send + Sync>;

/// Dual state with `w = 0` from a closed-form complex Gaussian state.
pub fn dual_state_from_gauss(f: &GaussPoly<Complex64>) -> DualState {
    let (v, fq, fp) = (f.clone(), f.d_q(), f.d_p());
    Arc::new(move |q, p| DualJet {
        val: DualComplex::from_complex(v.eval(q, p)),
        zq: fq.eval(q, p),
        zp: fp.eval(q, p),
    })
}

/// A state tagged by its value algebra.
#[derive(Clone)]
pub enum StateEval {
    Config(ConfFn<Complex64>),
    Phase(PhaseFn<Complex64>),
    Dual(DualState),
    Double(PhaseFn<Double>),
}

impl StateEval {
    pub fn type_name(&self) -> &'static str {
        match self {
            StateEval::Config(_) => "complex configuration",
            StateEval::Phase(_) => "complex phase-space",
            StateEval::Dual(_) => "dual-complex phase-space",
            StateEval::Double(_) => "double phase-space",
        }
    }
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// `[rho(s, x, y) f](q) = e^{2 pi i hbar (s - xy/2) + 2 pi i x q} f(q - hbar y)`.
pub fn schrodinger_rep(pp: PlanckParams, g: HElem, f: ConfFn<Complex64>) -> ConfFn<Complex64> {
    let hb = pp.hbar;
    Arc::new(move |q| cis(2.0 * PI * (hb * (g.s - 0.5 * g.x * g.y) + g.x * q)) * f(q - hb * g.y))
}

/// `e^{-2 pi i (hbar s + q x + p y)} f(q - hbar y / 2, p + hbar x / 2)`.
pub fn fsb_rep(pp: PlanckParams, g: HElem, f: PhaseFn<Complex64>) -> PhaseFn<Complex64> {
    let hb = pp.hbar;
    Arc::new(move |q, p| {
        cis(-2.0 * PI * (hb * g.s + q * g.x + p * g.y)) * f(q - 0.5 * hb * g.y, p + 0.5 * hb * g.x)
    })
}

/// `e^{-2 pi i (x q + y p)} (f + p hbar (2 pi s f - (i y / 2) f_q + (i x / 2) f_p))`.
pub fn dual_rep(pp: PlanckParams, g: HElem, f: DualState) -> DualState {
    let hb = pp.hbar;
    let i = Complex64::new(0.0, 1.0);
    Arc::new(move |q, p| {
        let e = cis(-2.0 * PI * (g.x * q + g.y * p));
        let j = f(q, p);
        let z = j.val.z;
        let block = z * (2.0 * PI * g.s) - i * (0.5 * g.y) * j.zq + i * (0.5 * g.x) * j.zp;
        DualJet {
            val: DualComplex::new(e * z, e * (j.val.w + block * hb)),
            zq: e * (j.zq - i * (2.0 * PI * g.x) * z),
            zp: e * (j.zp - i * (2.0 * PI * g.y) * z),
        }
    })
}

/// `e^{-j (h s + q x + p y)} f(q - h y / 2, p + h x / 2)`.
pub fn double_rep(pp: PlanckParams, g: HElem, f: PhaseFn<Double>) -> PhaseFn<Double> {
    let h = pp.h;
    Arc::new(move |q, p| {
        Double::exp_h(-(h * g.s + q * g.x + p * g.y)) * f(q - 0.5 * h * g.y, p + 0.5 * h * g.x)
    })
}

/// Pure modulation `e^{-2 pi i (q x + p y)} f(q, p)`.
pub fn commutative_rep(g: HElem, f: PhaseFn<Complex64>) -> PhaseFn<Complex64> {
    Arc::new(move |q, p| cis(-2.0 * PI * (q * g.x + p * g.y)) * f(q, p))
}

/// Dispatch on the value algebra of the state.
pub fn act(variant: Variant, pp: PlanckParams, g: HElem, f: &StateEval) -> Result<StateEval, RepError> {
    let mismatch = || RepError::ValueAlgebraMismatch {
        variant,
        state: f.type_name(),
    };
    Ok(match (variant, f) {
        (Variant::Schrodinger, StateEval::Config(f)) => StateEval::Config(schrodinger_rep(pp, g, f.clone())),
        (Variant::Fsb, StateEval::Phase(f)) => StateEval::Phase(fsb_rep(pp, g, f.clone())),
        (Variant::Commutative, StateEval::Phase(f)) => StateEval::Phase(commutative_rep(g, f.clone())),
        (Variant::Dual, StateEval::Dual(f)) => StateEval::Dual(dual_rep(pp, g, f.clone())),
        (Variant::Double, StateEval::Double(f)) => StateEval::Double(double_rep(pp, g, f.clone())),
        _ => return Err(mismatch()),
    })
}

/// The six operators of one variant, indexed by [`Basis`], exactly as
/// derived from the group action and the Shale–Weil extension.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedOps<T> {
    pub variant: Variant,
    pub ops: BTreeMap<Basis, OperatorExpr<T>>,
}

impl<T: Scalar> DerivedOps<T> {
    pub fn get(&self, b: Basis) -> &OperatorExpr<T> {
        &self.ops[&b]
    }
}

const fn m(q: u32, p: u32, dq: u32, dp: u32) -> Mono {
    Mono::new(q, p, dq, dp)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn schrodinger_ops(pp: PlanckParams) -> DerivedOps<Complex64> {
    let hb = pp.hbar;
    let ops = BTreeMap::from([
        (Basis::X, OperatorExpr::term(m(1, 0, 0, 0), c(0.0, 2.0 * PI))),
        (Basis::Y, OperatorExpr::term(m(0, 0, 1, 0), c(-hb, 0.0))),
        (Basis::S, OperatorExpr::constant(c(0.0, 2.0 * PI * hb))),
        (
            Basis::A,
            OperatorExpr::from_terms(&[(m(1, 0, 1, 0), c(-0.5, 0.0)), (Mono::ONE, c(-0.25, 0.0))]),
        ),
        (
            Basis::B,
            OperatorExpr::from_terms(&[
                (m(0, 0, 2, 0), c(0.0, -hb / (8.0 * PI))),
                (m(2, 0, 0, 0), c(0.0, -PI / (2.0 * hb))),
            ]),
        ),
        (
            Basis::Z,
            OperatorExpr::from_terms(&[
                (m(0, 0, 2, 0), c(0.0, hb / (4.0 * PI))),
                (m(2, 0, 0, 0), c(0.0, -PI / hb)),
            ]),
        ),
    ]);
    DerivedOps {
        variant: Variant::Schrodinger,
        ops,
    }
}

/// Shale–Weil operators on the phase space, common to the FSB and dual cases.
fn phase_sw<T: Scalar>() -> [(Basis, OperatorExpr<T>); 3] {
    let r = T::from_real;
    [
        (
            Basis::A,
            OperatorExpr::from_terms(&[(m(1, 0, 1, 0), r(0.5)), (m(0, 1, 0, 1), r(-0.5))]),
        ),
        (
            Basis::B,
            OperatorExpr::from_terms(&[(m(0, 1, 1, 0), r(-0.5)), (m(1, 0, 0, 1), r(-0.5))]),
        ),
        (
            Basis::Z,
            OperatorExpr::from_terms(&[(m(0, 1, 1, 0), r(1.0)), (m(1, 0, 0, 1), r(-1.0))]),
        ),
    ]
}

pub fn fsb_ops(pp: PlanckParams) -> DerivedOps<Complex64> {
    let hb = pp.hbar;
    let mut ops = BTreeMap::from([
        (
            Basis::X,
            OperatorExpr::from_terms(&[(m(1, 0, 0, 0), c(0.0, -2.0 * PI)), (m(0, 0, 0, 1), c(0.5 * hb, 0.0))]),
        ),
        (
            Basis::Y,
            OperatorExpr::from_terms(&[(m(0, 1, 0, 0), c(0.0, -2.0 * PI)), (m(0, 0, 1, 0), c(-0.5 * hb, 0.0))]),
        ),
        (Basis::S, OperatorExpr::constant(c(0.0, -2.0 * PI * hb))),
    ]);
    ops.extend(phase_sw());
    DerivedOps {
        variant: Variant::Fsb,
        ops,
    }
}

pub fn dual_ops(pp: PlanckParams) -> DerivedOps<DualComplex> {
    let hb = pp.hbar;
    let cz = |re: f64, im: f64| DualComplex::from_complex(c(re, im));
    let pw = |re: f64, im: f64| DualComplex::p_part(c(re, im));
    let mut ops = BTreeMap::from([
        (
            Basis::X,
            OperatorExpr::from_terms(&[(m(1, 0, 0, 0), cz(0.0, -2.0 * PI)), (m(0, 0, 0, 1), pw(0.0, 0.5 * hb))]),
        ),
        (
            Basis::Y,
            OperatorExpr::from_terms(&[(m(0, 1, 0, 0), cz(0.0, -2.0 * PI)), (m(0, 0, 1, 0), pw(0.0, -0.5 * hb))]),
        ),
        (Basis::S, OperatorExpr::constant(pw(2.0 * PI * hb, 0.0))),
    ]);
    ops.extend(phase_sw());
    DerivedOps {
        variant: Variant::Dual,
        ops,
    }
}

/// Configuration-space operators of the double-valued representation;
/// `j` is the double unit and `h` the Planck constant.
pub fn double_ops(pp: PlanckParams) -> DerivedOps<Double> {
    let h = pp.h;
    let j = |t: f64| Double::new(0.0, t);
    let r = |t: f64| Double::new(t, 0.0);
    let ops = BTreeMap::from([
        (Basis::X, OperatorExpr::term(m(1, 0, 0, 0), j(1.0))),
        (Basis::Y, OperatorExpr::term(m(0, 0, 1, 0), r(-h))),
        (Basis::S, OperatorExpr::constant(j(h))),
        (
            Basis::A,
            OperatorExpr::from_terms(&[(m(1, 0, 1, 0), r(-0.5)), (Mono::ONE, r(-0.25))]),
        ),
        (
            Basis::B,
            OperatorExpr::from_terms(&[(m(0, 0, 2, 0), j(h / 4.0)), (m(2, 0, 0, 0), j(-1.0 / (4.0 * h)))]),
        ),
        (
            Basis::Z,
            OperatorExpr::from_terms(&[(m(0, 0, 2, 0), j(-h / 2.0)), (m(2, 0, 0, 0), j(-1.0 / (2.0 * h)))]),
        ),
    ]);
    DerivedOps {
        variant: Variant::Double,
        ops,
    }
}

/// Derived operators of any variant.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyOps {
    Complex(DerivedOps<Complex64>),
    Dual(DerivedOps<DualComplex>),
    Double(DerivedOps<Double>),
}

pub fn derived_ops(variant: Variant, pp: PlanckParams) -> Result<AnyOps, RepError> {
    Ok(match variant {
        Variant::Schrodinger => AnyOps::Complex(schrodinger_ops(pp)),
        Variant::Fsb => AnyOps::Complex(fsb_ops(pp)),
        Variant::Dual => AnyOps::Dual(dual_ops(pp)),
        Variant::Double => AnyOps::Double(double_ops(pp)),
        Variant::Commutative => return Err(RepError::NoDerivedForm(variant)),
    })
}

/// Image of each basis element: `e -> sign * ops[source]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Realization {
    pub images: [(Basis, f64); 6],
}

impl Realization {
    pub const IDENTITY: Realization = Realization {
        images: [
            (Basis::S, 1.0),
            (Basis::X, 1.0),
            (Basis::Y, 1.0),
            (Basis::A, 1.0),
            (Basis::B, 1.0),
            (Basis::Z, 1.0),
        ],
    };

    pub fn is_identity(&self) -> bool {
        *self == Realization::IDENTITY
    }

    pub fn image<T: Scalar>(&self, ops: &DerivedOps<T>, e: Basis) -> OperatorExpr<T> {
        let (src, sign) = self.images[e.index()];
        ops.get(src).scale_real(sign)
    }

    /// Image of a real combination of basis elements.
    pub fn image_of<T: Scalar>(&self, ops: &DerivedOps<T>, terms: &[(Basis, T)]) -> OperatorExpr<T> {
        terms
            .iter()
            .fold(OperatorExpr::zero(), |acc, (b, c)| acc.add(&self.image(ops, *b).scale(*c)))
    }

    pub fn describe(&self) -> String {
        Basis::ALL
            .iter()
            .map(|e| {
                let (src, sign) = self.images[e.index()];
                let s = if sign < 0.0 { "-" } else { "" };
                format!("{e}->{s}{src}")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Largest relative coefficient defect of `[R e_j, R e_k] = sum c R e_l`
/// over all pairs.
pub fn symbolic_defect<T: Scalar>(ops: &DerivedOps<T>, r: &Realization, table: &LieTable) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, j) in Basis::ALL.iter().enumerate() {
        for k in &Basis::ALL[a + 1..] {
            let (pj, pk) = (r.image(ops, *j), r.image(ops, *k));
            let lhs = pj.commutator(&pk);
            let rhs = table_rhs(ops, r, table, *j, *k);
            let scale = pj.compose(&pk).max_coeff().max(rhs.max_coeff()).max(f64::MIN_POSITIVE);
            worst = worst.max(lhs.dist(&rhs) / scale);
        }
    }
    worst
}

fn table_rhs<T: Scalar>(ops: &DerivedOps<T>, r: &Realization, table: &LieTable, j: Basis, k: Basis) -> OperatorExpr<T> {
    let br = table.bracket_basis(j, k);
    Basis::ALL.iter().fold(OperatorExpr::zero(), |acc, l| {
        let cl = br[l.index()];
        if cl == 0.0 {
            acc
        } else {
            acc.add(&r.image(ops, *l).scale_real(cl))
        }
    })
}

fn permutations<const N: usize>(items: [Basis; N]) -> Vec<Vec<Basis>> {
    fn rec(rest: Vec<Basis>, acc: Vec<Basis>, out: &mut Vec<Vec<Basis>>) {
        if rest.is_empty() {
            out.push(acc);
            return;
        }
        for i in 0..rest.len() {
            let mut r = rest.clone();
            let x = r.remove(i);
            let mut a = acc.clone();
            a.push(x);
            rec(r, a, out);
        }
    }
    let mut out = Vec::new();
    rec(items.to_vec(), Vec::new(), &mut out);
    out
}

/// The identity if the operators realise the standard table, otherwise the
/// first signed permutation (preserving the Heisenberg and `sl_2` parts) that
/// does.
pub fn find_realization<T: Scalar>(ops: &DerivedOps<T>) -> Option<Realization> {
    let table = LieTable::standard();
    const TOL: f64 = 1e-12;
    if symbolic_defect(ops, &Realization::IDENTITY, &table) < TOL {
        return Some(Realization::IDENTITY);
    }
    for xy in permutations([Basis::X, Basis::Y]) {
        for abz in permutations([Basis::A, Basis::B, Basis::Z]) {
            for signs in 0..64u32 {
                let sg = |i: u32| if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
                let r = Realization {
                    images: [
                        (Basis::S, sg(0)),
                        (xy[0], sg(1)),
                        (xy[1], sg(2)),
                        (abz[0], sg(3)),
                        (abz[1], sg(4)),
                        (abz[2], sg(5)),
                    ],
                };
                if symbolic_defect(ops, &r, &table) < TOL {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Twelve Gaussian-times-monomial functions of `q`.
pub fn config_test_set<T: Scalar>() -> Vec<GaussPoly<T>> {
    let mut v = Vec::new();
    for a in [0.5, 1.0] {
        for n in 0..5 {
            v.push(GaussPoly::monomial(n, 0, a, 0.0, T::one()));
        }
    }
    for n in 0..2 {
        v.push(GaussPoly::monomial(n, 0, 0.25, 0.0, T::one()));
    }
    v
}

/// Twelve Gaussian-times-monomial functions of `(q, p)`.
pub fn phase_test_set<T: Scalar>() -> Vec<GaussPoly<T>> {
    [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3), (2, 2), (4, 0)]
        .iter()
        .map(|(j, k)| GaussPoly::monomial(*j, *k, 0.5, 0.5, T::one()))
        .collect()
}

pub fn sample_points(config: bool) -> Vec<(f64, f64)> {
    if config {
        crate::numerics::linspace(-2.5, 2.5, 21).into_iter().map(|q| (q, 0.0)).collect()
    } else {
        let g = crate::numerics::linspace(-2.0, 2.0, 7);
        g.iter().flat_map(|q| g.iter().map(move |p| (*q, *p))).collect()
    }
}

fn test_set<T: Scalar>(variant: Variant) -> Vec<GaussPoly<T>> {
    if variant.on_configuration_space() {
        config_test_set()
    } else {
        phase_test_set()
    }
}

/// `sup |a - b| / scale` over the sample points.
fn sup_diff<T: Scalar>(a: &dyn Fn(f64, f64) -> T, b: &dyn Fn(f64, f64) -> T, pts: &[(f64, f64)]) -> f64 {
    pts.iter().fold(0.0, |m, (q, p)| m.max((a(*q, *p) - b(*q, *p)).size()))
}

/// Residual of an operator identity `lhs = rhs` on the test set. `lhs` is
/// given as a list of operator words with coefficients,
/// `sum_w c_w P_{w,1} P_{w,2} ... f`, evaluated by exact nested application
/// and, as a second path, by finite differences of the composed operator.
/// The scale is the largest individual word.
pub fn identity_residual<T: Scalar>(
    variant: Variant,
    lhs: &[(T, Vec<OperatorExpr<T>>)],
    rhs: &OperatorExpr<T>,
) -> Result<f64, RepError> {
    let pts = sample_points(variant.on_configuration_space());
    let composed = lhs.iter().fold(OperatorExpr::zero(), |acc, (c, word)| {
        let w = word.iter().rev().fold(OperatorExpr::constant(T::one()), |a, op| op.compose(&a));
        acc.add(&w.scale(*c))
    });
    let mut worst: f64 = 0.0;
    for f in test_set::<T>(variant) {
        let mut total = GaussPoly::zero(f.a, f.b);
        let mut scale: f64 = f.sup_on(&pts);
        for (c, word) in lhs {
            let g = word.iter().rev().fold(f.clone(), |g, op| op.apply_exact(&g)).scale(*c);
            scale = scale.max(g.sup_on(&pts));
            total = total.add(&g);
        }
        let r = rhs.apply_exact(&f);
        scale = scale.max(r.sup_on(&pts));
        let exact = sup_diff(&|q, p| total.eval(q, p), &|q, p| r.eval(q, p), &pts);
        let fe = |q: f64, p: f64| f.eval(q, p);
        let mut fd: f64 = 0.0;
        for (q, p) in &pts {
            let v = composed.apply_fd(&fe, *q, *p)?;
            fd = fd.max((v - r.eval(*q, *p)).size());
        }
        worst = worst.max(exact.max(fd) / scale);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResidual {
    pub variant: Variant,
    pub relation: String,
    pub max_residual: f64,
    pub symbolic_residual: f64,
    pub test_set_size: usize,
}

/// All fifteen bracket relations of the standard table for one family of
/// operators under a realisation.
pub fn relation_residuals<T: Scalar>(ops: &DerivedOps<T>, r: &Realization) -> Result<Vec<RelationResidual>, RepError> {
    let table = LieTable::standard();
    let mut out = Vec::new();
    for (a, j) in Basis::ALL.iter().enumerate() {
        for k in &Basis::ALL[a + 1..] {
            let (pj, pk) = (r.image(ops, *j), r.image(ops, *k));
            let rhs = table_rhs(ops, r, &table, *j, *k);
            let lhs = vec![(T::one(), vec![pj.clone(), pk.clone()]), (-T::one(), vec![pk.clone(), pj.clone()])];
            let max_residual = identity_residual(ops.variant, &lhs, &rhs)?;
            let scale = pj.compose(&pk).max_coeff().max(rhs.max_coeff()).max(f64::MIN_POSITIVE);
            let symbolic_residual = pj.commutator(&pk).dist(&rhs) / scale;
            out.push(RelationResidual {
                variant: ops.variant,
                relation: format!("[{j},{k}]={}", describe_combination(&table.bracket_basis(*j, *k))),
                max_residual,
                symbolic_residual,
                test_set_size: 12,
            });
        }
    }
    Ok(out)
}

fn describe_combination(v: &[f64; 6]) -> String {
    let parts: Vec<String> = Basis::ALL
        .iter()
        .filter(|b| v[b.index()] != 0.0)
        .map(|b| {
            let c = v[b.index()];
            if c == 1.0 {
                b.to_string()
            } else if c == -1.0 {
                format!("-{b}")
            } else {
                format!("{c}{b}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Realisation and relation residuals for a variant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantReport {
    pub variant: Variant,
    pub realization: Option<String>,
    pub relations: Vec<RelationResidual>,
}

fn variant_report<T: Scalar>(ops: &DerivedOps<T>) -> Result<VariantReport, RepError> {
    match find_realization(ops) {
        Some(r) => Ok(VariantReport {
            variant: ops.variant,
            realization: Some(r.describe()),
            relations: relation_residuals(ops, &r)?,
        }),
        None => Ok(VariantReport {
            variant: ops.variant,
            realization: None,
            relations: relation_residuals(ops, &Realization::IDENTITY)?,
        }),
    }
}

pub fn commutator_report(variant: Variant, pp: PlanckParams) -> Result<VariantReport, RepError> {
    match derived_ops(variant, pp)? {
        AnyOps::Complex(o) => variant_report(&o),
        AnyOps::Dual(o) => variant_report(&o),
        AnyOps::Double(o) => variant_report(&o),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticResidual {
    pub variant: Variant,
    pub relation: String,
    /// Residual with the coefficient implied by the operators.
    pub max_residual: f64,
    /// Residual with the coefficient in its commonly quoted form; large when the sign
    /// differs.
    pub quoted_residual: f64,
}

/// Name, target generator, implied coefficient, quoted coefficient, words.
type QuadraticRow<'a, T> = (&'a str, Basis, T, T, Vec<(T, Vec<OperatorExpr<T>>)>);

fn quadratic_rows<T: Scalar>(
    ops: &DerivedOps<T>,
    rows: Vec<QuadraticRow<T>>,
) -> Result<Vec<QuadraticResidual>, RepError> {
    let mut out = Vec::new();
    for (name, target, coef, quoted, words) in rows {
        let rhs = ops.get(target);
        let scaled = |k: T| -> Vec<(T, Vec<OperatorExpr<T>>)> { words.iter().map(|(c, w)| (*c * k, w.clone())).collect() };
        out.push(QuadraticResidual {
            variant: ops.variant,
            relation: name.to_string(),
            max_residual: identity_residual(ops.variant, &scaled(coef), rhs)?,
            quoted_residual: identity_residual(ops.variant, &scaled(quoted), rhs)?,
        });
    }
    Ok(out)
}

/// Shale–Weil operators as quadratic expressions in `X, Y, S`.
pub fn quadratic_relations_check(variant: Variant, pp: PlanckParams) -> Result<Vec<QuadraticResidual>, RepError> {
    match variant {
        Variant::Schrodinger => {
            let o = schrodinger_ops(pp);
            let (x, y, s) = (o.get(Basis::X).clone(), o.get(Basis::Y).clone(), o.get(Basis::S).clone());
            let k = 1.0 / (4.0 * PI * pp.hbar);
            let one = Complex64::new(1.0, 0.0);
            let xy_half_s = vec![(one, vec![x.clone(), y.clone()]), (c(-0.5, 0.0), vec![s.clone()])];
            let sym = vec![(one, vec![x.clone(), y.clone()]), (one, vec![y.clone(), x.clone()])];
            let diff = vec![(one, vec![x.clone(), x.clone()]), (-one, vec![y.clone(), y.clone()])];
            let sum = vec![(one, vec![x.clone(), x.clone()]), (one, vec![y.clone(), y.clone()])];
            quadratic_rows(
                &o,
                vec![
                    ("A=-i/(4 pi hbar)(XY-S/2)", Basis::A, c(0.0, -k), c(0.0, k), xy_half_s),
                    ("A=-i/(8 pi hbar)(XY+YX)", Basis::A, c(0.0, -0.5 * k), c(0.0, 0.5 * k), sym),
                    ("B=i/(8 pi hbar)(X^2-Y^2)", Basis::B, c(0.0, 0.5 * k), c(0.0, 0.5 * k), diff),
                    ("Z=i/(4 pi hbar)(X^2+Y^2)", Basis::Z, c(0.0, k), c(0.0, k), sum),
                ],
            )
        }
        Variant::Double => {
            let o = double_ops(pp);
            let (x, y, s) = (o.get(Basis::X).clone(), o.get(Basis::Y).clone(), o.get(Basis::S).clone());
            let k = 1.0 / pp.h;
            let one = Double::new(1.0, 0.0);
            let j = |t: f64| Double::new(0.0, t);
            let xy_half_s = vec![(one, vec![x.clone(), y.clone()]), (Double::new(-0.5, 0.0), vec![s.clone()])];
            let sym = vec![(one, vec![x.clone(), y.clone()]), (one, vec![y.clone(), x.clone()])];
            let diff = vec![(one, vec![x.clone(), x.clone()]), (-one, vec![y.clone(), y.clone()])];
            let sum = vec![(one, vec![x.clone(), x.clone()]), (one, vec![y.clone(), y.clone()])];
            quadratic_rows(
                &o,
                vec![
                    ("A=j/(2h)(XY-S/2)", Basis::A, j(0.5 * k), j(-0.5 * k), xy_half_s),
                    ("A=j/(4h)(XY+YX)", Basis::A, j(0.25 * k), j(-0.25 * k), sym),
                    ("B=-j/(4h)(X^2-Y^2)", Basis::B, j(-0.25 * k), j(0.25 * k), diff),
                    ("Z=-j/(2h)(X^2+Y^2)", Basis::Z, j(-0.5 * k), j(-0.5 * k), sum),
                ],
            )
        }
        other => Err(RepError::NoDerivedForm(other)),
    }
}

/// Whether a Shale–Weil operator `a d^2 + b q^2 + ...` is an oscillator
/// (`b / a < 0`) or repulsive (`b / a > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadraticType {
    Harmonic,
    Repulsive,
    Degenerate,
}

fn classify_ratio(r: f64) -> QuadraticType {
    if r < 0.0 {
        QuadraticType::Harmonic
    } else if r > 0.0 {
        QuadraticType::Repulsive
    } else {
        QuadraticType::Degenerate
    }
}

pub fn quadratic_type_complex(op: &OperatorExpr<Complex64>) -> QuadraticType {
    let a = op.coeff(m(0, 0, 2, 0));
    let b = op.coeff(m(2, 0, 0, 0));
    if a.norm() == 0.0 {
        return QuadraticType::Degenerate;
    }
    let r = b / a;
    if r.im != 0.0 {
        return QuadraticType::Degenerate;
    }
    classify_ratio(r.re)
}

pub fn quadratic_type_double(op: &OperatorExpr<Double>) -> QuadraticType {
    let a = op.coeff(m(0, 0, 2, 0));
    let b = op.coeff(m(2, 0, 0, 0));
    let n = a.modulus_sq();
    if n == 0.0 {
        return QuadraticType::Degenerate;
    }
    // b / a = b conj(a) / |a|^2
    let r = b * Scalar::conj(a) * (1.0 / n);
    if r.hy != 0.0 {
        return QuadraticType::Degenerate;
    }
    classify_ratio(r.re)
}

/// `H~ f = sum Hhat(x, y) rho_F(0, x, y) f dx dy` with the FSB action.
pub fn weyl_quantize(
    pp: PlanckParams,
    khat: &KernelGrid<Complex64>,
    f: PhaseFn<Complex64>,
) -> Result<PhaseFn<Complex64>, RepError> {
    if (khat.h - pp.h).abs() > 1e-12 * pp.h {
        return Err(RepError::GridMismatch(format!(
            "kernel Planck constant {} vs {}",
            khat.h, pp.h
        )));
    }
    let n = khat.n;
    let dx = khat.step();
    let nodes: Vec<f64> = (0..n).map(|i| khat.node(i)).collect();
    let vals = khat.values.clone();
    let hb = pp.hbar;
    Ok(Arc::new(move |q, p| {
        let ex: Vec<Complex64> = nodes.iter().map(|x| cis(-2.0 * PI * q * x)).collect();
        let ey: Vec<Complex64> = nodes.iter().map(|y| cis(-2.0 * PI * p * y)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                let k = vals[a * n + b];
                if k == Complex64::new(0.0, 0.0) {
                    continue;
                }
                acc += k * ex[a] * ey[b] * f(q - 0.5 * hb * nodes[b], p + 0.5 * hb * nodes[a]);
            }
        }
        acc * (dx * dx)
    }))
}

/// Multiplication by a real polynomial as an operator.
pub fn multiplication<T: Scalar>(poly: &PhasePoly) -> OperatorExpr<T> {
    poly.coeffs
        .iter()
        .fold(OperatorExpr::zero(), |acc, ((j, k), c)| acc.add(&OperatorExpr::term(m(*j, *k, 0, 0), T::from_real(*c))))
}

/// `H + (p h / 2)(H_p d_q - H_q d_p)`.
pub fn classical_operator(hamiltonian: &PhasePoly, pp: PlanckParams) -> OperatorExpr<Dual> {
    let mut op = multiplication::<Dual>(hamiltonian);
    let half = 0.5 * pp.h;
    for ((j, k), c) in &hamiltonian.d_p().coeffs {
        op = op.add(&OperatorExpr::term(m(*j, *k, 1, 0), Dual::new(0.0, half * c)));
    }
    for ((j, k), c) in &hamiltonian.d_q().coeffs {
        op = op.add(&OperatorExpr::term(m(*j, *k, 0, 1), Dual::new(0.0, -half * c)));
    }
    op
}

/// `[H1~, H2~] / (p h)`, returned as an operator with real coefficients;
/// `None` when a coefficient has a real part, so that the division by the
/// zero divisor `p` is not defined.
pub fn classical_commutator_over_ph(h1: &PhasePoly, h2: &PhasePoly, pp: PlanckParams) -> Option<OperatorExpr<f64>> {
    let c = classical_operator(h1, pp).commutator(&classical_operator(h2, pp));
    let mut out = OperatorExpr::zero();
    for (mono, v) in c.terms() {
        if v.re != 0.0 {
            return None;
        }
        out = out.add(&OperatorExpr::term(*mono, v.du / pp.h));
    }
    Some(out)
}

/// Domain of the hyperbolic Fourier transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierDomain {
    pub l: f64,
    pub n: usize,
}

impl Default for FourierDomain {
    fn default() -> Self {
        FourierDomain { l: 12.0, n: 4800 }
    }
}

/// Edge threshold for `|f(x)| e^{|q x|}`.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-8;

/// `k^(q) = int k(x) e^{-j q x} dx = int k cosh(qx) - j int k sinh(qx)`.
pub fn hyperbolic_fourier(
    f: &(dyn Fn(f64) -> f64 + Sync),
    qs: &[f64],
    dom: FourierDomain,
) -> Result<Vec<Double>, RepError> {
    let l = dom.l;
    qs.iter()
        .map(|&q| {
            let edge = f(l).abs().max(f(-l).abs()) * (q.abs() * l).exp();
            if !(edge <= DIVERGENCE_THRESHOLD) {
                return Err(RepError::DivergentIntegrand { q, edge });
            }
            let ch = simpson(|x| f(x) * (q * x).cosh(), -l, l, dom.n);
            let sh = simpson(|x| f(x) * (q * x).sinh(), -l, l, dom.n);
            Ok(Double::new(ch, -sh))
        })
        .collect()
}

/// Checks on the Gaussian vacuum of the Schrödinger model and on the
/// parabolic eigenfunctions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenReport {
    /// `|Z v + (i/2) v| / |Z v|` for `v = e^{-pi q^2 / hbar}`.
    pub vacuum_eigen: f64,
    /// `|L+ v| / |X v|` with `L+ = X - i Y`.
    pub vacuum_annihilated: f64,
    /// Coefficient defect of `[Z, X -+ iY] = +-i (X -+ iY)`.
    pub ladder_commutators: f64,
    /// `|q d_p v - mu v| / |mu v|` for `v = e^{mu p / q} f(q)`, dual `mu`.
    pub parabolic_eigen: f64,
    /// `B + Z/2` built from the phase-space Shale–Weil operators, minus `-q d_p`.
    pub parabolic_hamiltonian_defect: f64,
    /// Defect of `[B + Z/2, X -+ p l Y] = +-p l (X -+ p l Y)` for the dual operators.
    pub parabolic_ladder: f64,
}

impl EigenReport {
    pub fn max(&self) -> f64 {
        [
            self.vacuum_eigen,
            self.vacuum_annihilated,
            self.ladder_commutators,
            self.parabolic_eigen,
            self.parabolic_hamiltonian_defect,
            self.parabolic_ladder,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `e^{mu p / q} f(q)` with `mu = mu0 + p mu1`, `f(q) = e^{-q^2}`.
pub fn parabolic_eigenfunction(mu0: f64, mu1: f64) -> impl Fn(f64, f64) -> Dual + Send + Sync {
    move |q, p| {
        let e = (mu0 * p / q).exp() * (-q * q).exp();
        Dual::new(e, e * mu1 * p / q)
    }
}

pub fn eigen_report(pp: PlanckParams) -> Result<EigenReport, RepError> {
    let o = schrodinger_ops(pp);
    let i = c(0.0, 1.0);
    let v = GaussPoly::monomial(0, 0, PI / pp.hbar, 0.0, c(1.0, 0.0));
    let pts = sample_points(true);
    let zv = o.get(Basis::Z).apply_exact(&v);
    let target = v.scale(c(0.0, -0.5));
    let vacuum_eigen = zv.sub(&target).sup_on(&pts) / zv.sup_on(&pts);
    let lplus = o.get(Basis::X).sub(&o.get(Basis::Y).scale(i));
    let lminus = o.get(Basis::X).add(&o.get(Basis::Y).scale(i));
    let vacuum_annihilated = lplus.apply_exact(&v).sup_on(&pts) / o.get(Basis::X).apply_exact(&v).sup_on(&pts);
    let z = o.get(Basis::Z);
    let d1 = z.commutator(&lplus).dist(&lplus.scale(i)) / lplus.max_coeff();
    let d2 = z.commutator(&lminus).dist(&lminus.scale(-i)) / lminus.max_coeff();

    let (mu0, mu1) = (0.7, -0.4);
    let f = parabolic_eigenfunction(mu0, mu1);
    let qdp = OperatorExpr::term(m(1, 0, 0, 1), Dual::new(1.0, 0.0));
    let mu = Dual::new(mu0, mu1);
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for q in crate::numerics::linspace(0.5, 2.0, 7) {
        for p in crate::numerics::linspace(-1.0, 1.0, 7) {
            let lhs = qdp.apply_fd(&f, q, p)?;
            let rhs = mu * f(q, p);
            num = num.max((lhs - rhs).size());
            den = den.max(rhs.size());
        }
    }
    let parabolic_eigen = num / den;

    let d = dual_ops(pp);
    let hpar = d.get(Basis::B).add(&d.get(Basis::Z).scale_real(0.5));
    let minus_qdp = OperatorExpr::term(m(1, 0, 0, 1), DualComplex::from_real(-1.0));
    let parabolic_hamiltonian_defect = hpar.dist(&minus_qdp);
    let lam1 = 0.8;
    let mut parabolic_ladder: f64 = 0.0;
    for sign in [1.0, -1.0] {
        let pl = DualComplex::p_part(c(sign * lam1, 0.0));
        let l = d.get(Basis::X).sub(&d.get(Basis::Y).scale(pl));
        let defect = hpar.commutator(&l).dist(&l.scale(pl)) / l.max_coeff();
        parabolic_ladder = parabolic_ladder.max(defect);
    }
    Ok(EigenReport {
        vacuum_eigen,
        vacuum_annihilated,
        ladder_commutators: d1.max(d2),
        parabolic_eigen,
        parabolic_hamiltonian_defect,
        parabolic_ladder,
    })
}

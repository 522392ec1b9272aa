//! Covariant and contravariant transforms for the Heisenberg group and for
//! SL(2, R) acting on the real line, dispersions and the uncertainty
//! relation, and analyticity of the transforms.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::heisenberg::HElem;
use crate::numerics::{linspace, simpson};
use crate::reps::{schrodinger_rep, ConfFn, Mono, OperatorExpr, PlanckParams, RepError, StateEval};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CovariantError {
    #[error("integrand does not decay on the quadrature domain ({what}: {value:e})")]
    QuadratureDomain { what: String, value: f64 },
    #[error("the {group:?} transform needs a configuration-space state, got {state}")]
    StateMismatch { group: Group, state: &'static str },
    #[error("grid too small for the stencils: {0}")]
    GridTooSmall(String),
    #[error("state has zero norm on the quadrature domain")]
    ZeroNorm,
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    Heisenberg,
    Sl2,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

#[derive(Clone)]
pub struct MotherWavelet {
    pub eval: ConfFn<Complex64>,
    pub group: Group,
    pub note: &'static str,
}

impl std::fmt::Debug for MotherWavelet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MotherWavelet")
            .field("group", &self.group)
            .field("note", &self.note)
            .finish()
    }
}

impl MotherWavelet {
    /// `e^{-c q^2 / 2}` for the Heisenberg group.
    pub fn gaussian(c: f64) -> Self {
        MotherWavelet {
            eval: Arc::new(move |q| Complex64::new((-0.5 * c * q * q).exp(), 0.0)),
            group: Group::Heisenberg,
            note: "Gaussian, admissible",
        }
    }

    /// `e^{-c q^2 / 2} (1 + eps q^2)`.
    pub fn perturbed_gaussian(c: f64, eps: f64) -> Self {
        MotherWavelet {
            eval: Arc::new(move |q| Complex64::new((-0.5 * c * q * q).exp() * (1.0 + eps * q * q), 0.0)),
            group: Group::Heisenberg,
            note: "perturbed Gaussian, admissible",
        }
    }

    /// `f_+(x) = 1/(x + i)` for SL(2, R).
    pub fn f_plus() -> Self {
        MotherWavelet {
            eval: Arc::new(|x| 1.0 / Complex64::new(x, 1.0)),
            group: Group::Sl2,
            note: "f+ = 1/(x+i), admissible",
        }
    }

    /// `f_-(x) = 1/(x - i)`.
    pub fn f_minus() -> Self {
        MotherWavelet {
            eval: Arc::new(|x| 1.0 / Complex64::new(x, -1.0)),
            group: Group::Sl2,
            note: "f- = 1/(x-i), admissible",
        }
    }

    pub fn from_fn(group: Group, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        MotherWavelet {
            eval: Arc::new(f),
            group,
            note: "user supplied",
        }
    }
}

/// Samples of a transform on a uniform grid of the homogeneous space.
///
/// Heisenberg: points `(x, y)` with the section `(x, y) -> (0, x, y)`.
/// SL(2, R): points `x + i y`, `y > 0`, with the section
/// `x + i y -> [[sqrt y, x / sqrt y], [0, 1 / sqrt y]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformGrid {
    pub group: Group,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `values[i * ys.len() + j]` at `(xs[i], ys[j])`.
    pub values: Vec<Complex64>,
    pub section: &'static str,
}

impl TransformGrid {
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.ys.len() + j]
    }

    pub fn map(&self, f: impl Fn(f64, f64, Complex64) -> Complex64) -> TransformGrid {
        let mut out = self.clone();
        for (i, x) in self.xs.iter().enumerate() {
            for (j, y) in self.ys.iter().enumerate() {
                out.values[i * self.ys.len() + j] = f(*x, *y, self.at(i, j));
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> TransformGrid {
        self.map(|_, _, v| v * s)
    }

    fn step(v: &[f64]) -> f64 {
        (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64
    }
}

/// Quadrature settings for integrals over the line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineQuadrature {
    pub l: f64,
    pub n: usize,
}

impl Default for LineQuadrature {
    fn default() -> Self {
        LineQuadrature { l: 8.0, n: 2000 }
    }
}

/// Relative size of the integrand at the truncation points that is accepted.
pub const EDGE_TOLERANCE: f64 = 1e-10;

fn config_fn(v: &StateEval, group: Group) -> Result<ConfFn<Complex64>, CovariantError> {
    match v {
        StateEval::Config(f) => Ok(f.clone()),
        other => Err(CovariantError::StateMismatch {
            group,
            state: other.type_name(),
        }),
    }
}

/// `<u, w> = int u conj(w)` over `[-l, l]`, rejecting integrands that do not
/// decay at the ends.
fn inner_truncated(
    u: &(dyn Fn(f64) -> Complex64 + Sync),
    w: &(dyn Fn(f64) -> Complex64 + Sync),
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Complex64, CovariantError> {
    let g = |t: f64| u(t) * w(t).conj();
    let edge = g(lo).norm().max(g(hi).norm());
    let mid = g(0.5 * (lo + hi)).norm().max(1e-300);
    let peak = (0..=64).map(|k| g(lo + (hi - lo) * k as f64 / 64.0).norm()).fold(mid, f64::max);
    if edge > EDGE_TOLERANCE * peak {
        return Err(CovariantError::QuadratureDomain {
            what: "truncated inner product".into(),
            value: edge / peak,
        });
    }
    Ok(simpson(g, lo, hi, n))
}

/// `<u, w>` over the whole line through `t = tan(theta)`. The midpoint rule
/// is spectrally accurate when `u conj(w) (1 + t^2)` extends smoothly to the
/// point at infinity, as for rational functions decaying like `1/t`.
pub fn inner_line(u: &(dyn Fn(f64) -> Complex64 + Sync), w: &(dyn Fn(f64) -> Complex64 + Sync), n: usize) -> Complex64 {
    let h = PI / n as f64;
    let mut acc = c0();
    for k in 0..n {
        let t = (-0.5 * PI + (k as f64 + 0.5) * h).tan();
        acc += u(t) * w(t).conj() * (1.0 + t * t);
    }
    acc * h
}

/// `W_f v(s, x, y) = <v, rho(s, x, y) f>` with the Schrödinger representation.
pub fn heisenberg_wavelet(
    pp: PlanckParams,
    v: &ConfFn<Complex64>,
    f: &ConfFn<Complex64>,
    g: HElem,
    quad: LineQuadrature,
) -> Result<Complex64, CovariantError> {
    let moved = schrodinger_rep(pp, g, f.clone());
    let shift = pp.hbar * g.y;
    let (lo, hi) = ((-quad.l).min(shift - quad.l), quad.l.max(shift + quad.l));
    inner_truncated(&|q| v(q), &|q| moved(q), lo, hi, quad.n)
}

/// `[rho(g) f](w) = f((d w - b)/(a - c w)) / (a - c w)` for
/// `g = [[a, b], [c, d]]` in SL(2, R).
pub fn sl2_rep(g: [[f64; 2]; 2], f: ConfFn<Complex64>) -> ConfFn<Complex64> {
    let [[a, b], [c, d]] = g;
    Arc::new(move |w| {
        let den = a - c * w;
        f((d * w - b) / den) / den
    })
}

pub fn sl2_mul(g: [[f64; 2]; 2], h: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
        [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]],
    ]
}

pub fn sl2_inverse(g: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
}

/// Section of the upper half-plane, `s(x + i y) i = x + i y`.
pub fn sl2_section(x: f64, y: f64) -> [[f64; 2]; 2] {
    let r = y.sqrt();
    [[r, x / r], [0.0, 1.0 / r]]
}

/// `W_f v(g) = (1 / 2 pi) <v, rho(g) f>` on SL(2, R).
pub fn sl2_wavelet(v: &ConfFn<Complex64>, f: &ConfFn<Complex64>, g: [[f64; 2]; 2], n: usize) -> Complex64 {
    let moved = sl2_rep(g, f.clone());
    inner_line(&|t| v(t), &|t| moved(t), n) / (2.0 * PI)
}

/// Line quadrature points for the SL(2, R) transform at height `y`; the
/// Cauchy kernel sharpens as `y -> 0`.
fn sl2_points(y: f64) -> usize {
    ((400.0 / y) as usize).clamp(4000, 400_000)
}

/// Transform of `v` on the grid `xs x ys`.
pub fn covariant_transform(
    pp: PlanckParams,
    v: &StateEval,
    f: &MotherWavelet,
    xs: &[f64],
    ys: &[f64],
    quad: LineQuadrature,
) -> Result<TransformGrid, CovariantError> {
    let vf = config_fn(v, f.group)?;
    if f.group == Group::Sl2 && ys.iter().any(|y| !(*y > 0.0)) {
        return Err(CovariantError::GridTooSmall("SL(2,R) grid needs y > 0".into()));
    }
    let pts: Vec<(f64, f64)> = xs.iter().flat_map(|x| ys.iter().map(move |y| (*x, *y))).collect();
    let values = pts
        .par_iter()
        .map(|&(x, y)| match f.group {
            Group::Heisenberg => heisenberg_wavelet(pp, &vf, &f.eval, HElem::new(0.0, x, y), quad),
            Group::Sl2 => Ok(sl2_wavelet(&vf, &f.eval, sl2_section(x, y), sl2_points(y))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TransformGrid {
        group: f.group,
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        values,
        section: match f.group {
            Group::Heisenberg => "(x, y) -> (0, x, y)",
            Group::Sl2 => "x + iy -> [[sqrt y, x/sqrt y], [0, 1/sqrt y]]",
        },
    })
}

/// Closed-form Cauchy integral `(sqrt y / 2 pi) int dt / ((t + i)(t - z)) = i sqrt y / (z + i)`.
pub fn hardy_image_closed_form(x: f64, y: f64) -> Complex64 {
    I * y.sqrt() / Complex64::new(x, y + 1.0)
}

/// Sixth-order central first derivative weights.
const D1_6: [f64; 3] = [3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
/// Points lost at each edge by the stencils.
pub const MARGIN: usize = 3;

fn grid_partials(tg: &TransformGrid, i: usize, j: usize) -> (Complex64, Complex64) {
    let (hx, hy) = (TransformGrid::step(&tg.xs), TransformGrid::step(&tg.ys));
    let mut dx = c0();
    let mut dy = c0();
    for (k, w) in D1_6.iter().enumerate() {
        let k = k + 1;
        dx += (tg.at(i + k, j) - tg.at(i - k, j)) * *w;
        dy += (tg.at(i, j + k) - tg.at(i, j - k)) * *w;
    }
    (dx / hx, dy / hy)
}

fn check_grid(tg: &TransformGrid) -> Result<(), CovariantError> {
    if tg.xs.len() < 2 * MARGIN + 1 || tg.ys.len() < 2 * MARGIN + 1 {
        return Err(CovariantError::GridTooSmall(format!(
            "{} x {} nodes, need at least {} per axis",
            tg.xs.len(),
            tg.ys.len(),
            2 * MARGIN + 1
        )));
    }
    Ok(())
}

/// `||D v|| / (sum of the norms of the three terms of D v)` over the
/// interior nodes, for the operator
/// `D = (hbar c / 2 pi) d_x + i d_y + (hbar / 2)(2 pi x + i hbar c y)`,
/// which annihilates every transform with the mother wavelet `e^{-c q^2/2}`.
pub fn fsb_annihilator_residual(tg: &TransformGrid, pp: PlanckParams, c: f64) -> Result<f64, CovariantError> {
    check_grid(tg)?;
    let hb = pp.hbar;
    let (nx, ny) = (tg.xs.len(), tg.ys.len());
    let (mut res, mut tx, mut ty, mut tm) = (0.0, 0.0, 0.0, 0.0);
    for i in MARGIN..nx - MARGIN {
        for j in MARGIN..ny - MARGIN {
            let (x, y) = (tg.xs[i], tg.ys[j]);
            let (dx, dy) = grid_partials(tg, i, j);
            let a = dx * (hb * c / (2.0 * PI));
            let b = I * dy;
            let m = tg.at(i, j) * Complex64::new(hb * PI * x, 0.5 * hb * hb * c * y);
            res += (a + b + m).norm_sqr();
            tx += a.norm_sqr();
            ty += b.norm_sqr();
            tm += m.norm_sqr();
        }
    }
    let scale = tx.sqrt() + ty.sqrt() + tm.sqrt();
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(res.sqrt() / scale)
}

/// `||(d_x + sign i d_y)(v / sqrt y)|| / (||d_x(v / sqrt y)|| + ||d_y(v / sqrt y)||)`;
/// `sign = 1` tests holomorphy, `sign = -1` anti-holomorphy.
pub fn cauchy_riemann_residual(tg: &TransformGrid, sign: f64) -> Result<f64, CovariantError> {
    check_grid(tg)?;
    let g = tg.map(|_, y, v| v / y.sqrt());
    let (nx, ny) = (g.xs.len(), g.ys.len());
    let (mut res, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for i in MARGIN..nx - MARGIN {
        for j in MARGIN..ny - MARGIN {
            let (dx, dy) = grid_partials(&g, i, j);
            res += (dx + I * dy * sign).norm_sqr();
            sx += dx.norm_sqr();
            sy += dy.norm_sqr();
        }
    }
    let scale = sx.sqrt() + sy.sqrt();
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(res.sqrt() / scale)
}

pub fn hardy_holomorphy_residual(tg: &TransformGrid) -> Result<f64, CovariantError> {
    cauchy_riemann_residual(tg, 1.0)
}

/// `M_psi(k)(q) = hbar int int k(x, y) [rho(0, x, y) psi](q) dx dy` on the
/// given points, Simpson in both variables.
pub fn contravariant_transform(
    pp: PlanckParams,
    k: &TransformGrid,
    psi: &MotherWavelet,
    qs: &[f64],
) -> Result<Vec<Complex64>, CovariantError> {
    if k.group != Group::Heisenberg {
        return Err(CovariantError::StateMismatch {
            group: k.group,
            state: "SL(2,R) grid",
        });
    }
    let (nx, ny) = (k.xs.len(), k.ys.len());
    if nx % 2 == 0 || ny % 2 == 0 || nx < 3 || ny < 3 {
        return Err(CovariantError::GridTooSmall("Simpson needs an odd node count".into()));
    }
    let wx = crate::numerics::simpson_weights(nx);
    let wy = crate::numerics::simpson_weights(ny);
    let (hx, hy) = (TransformGrid::step(&k.xs), TransformGrid::step(&k.ys));
    let hb = pp.hbar;
    Ok(qs
        .par_iter()
        .map(|&q| {
            let mut acc = c0();
            for i in 0..nx {
                let x = k.xs[i];
                for j in 0..ny {
                    let kv = k.at(i, j);
                    if kv == c0() {
                        continue;
                    }
                    let y = k.ys[j];
                    let rho = Complex64::from_polar(1.0, 2.0 * PI * (-0.5 * hb * x * y + x * q)) * (psi.eval)(q - hb * y);
                    acc += kv * rho * (wx[i] * wy[j]);
                }
            }
            acc * (hb * hx * hy)
        })
        .collect())
}

/// Grid used by the reconstruction check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionGrid {
    pub l: f64,
    pub n: usize,
    pub q_l: f64,
    pub q_n: usize,
}

impl Default for ReconstructionGrid {
    fn default() -> Self {
        ReconstructionGrid {
            l: 8.0,
            n: 257,
            q_l: 4.0,
            q_n: 161,
        }
    }
}

/// `||M_psi W_phi v - <psi, phi> v|| / ||v||` on the `q` points.
pub fn reconstruction_check(
    pp: PlanckParams,
    v: &StateEval,
    phi: &MotherWavelet,
    psi: &MotherWavelet,
    grid: ReconstructionGrid,
) -> Result<f64, CovariantError> {
    let vf = config_fn(v, Group::Heisenberg)?;
    let axis = linspace(-grid.l, grid.l, grid.n);
    let quad = LineQuadrature {
        l: grid.l + pp.hbar * grid.l,
        n: 2000,
    };
    let w = covariant_transform(pp, v, phi, &axis, &axis, quad)?;
    let qs = linspace(-grid.q_l, grid.q_l, grid.q_n);
    let back = contravariant_transform(pp, &w, psi, &qs)?;
    let pf = psi.eval.clone();
    let ff = phi.eval.clone();
    let c = inner_truncated(&|q| pf(q), &|q| ff(q), -quad.l, quad.l, 4000)?;
    let (mut err, mut norm) = (0.0, 0.0);
    for (q, b) in qs.iter().zip(&back) {
        let target = vf(*q) * c;
        err += (b - target).norm_sqr();
        norm += (vf(*q) * c).norm_sqr();
    }
    if norm == 0.0 {
        return Err(CovariantError::ZeroNorm);
    }
    Ok((err / norm).sqrt())
}

/// Quadrature of line functions for the dispersion and uncertainty checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LineDomain {
    Truncated(LineQuadrature),
    /// Whole line through `t = tan(theta)` with `n` intervals.
    Compactified(usize),
}

impl LineDomain {
    fn inner(
        &self,
        u: &(dyn Fn(f64) -> Complex64 + Sync),
        w: &(dyn Fn(f64) -> Complex64 + Sync),
    ) -> Result<Complex64, CovariantError> {
        match *self {
            LineDomain::Truncated(q) => inner_truncated(u, w, -q.l, q.l, q.n),
            LineDomain::Compactified(n) => Ok(inner_line(u, w, n)),
        }
    }
}

fn apply_line(op: &OperatorExpr<Complex64>, f: &ConfFn<Complex64>) -> impl Fn(f64) -> Complex64 + Sync {
    let op = op.clone();
    let f = f.clone();
    move |q| {
        op.apply_fd(&|t, _| f(t), q, 0.0)
            .expect("line operators are at most second order")
    }
}

fn normalised(f: &ConfFn<Complex64>, dom: LineDomain) -> Result<ConfFn<Complex64>, CovariantError> {
    let n2 = dom.inner(&|q| f(q), &|q| f(q))?.re;
    if !(n2 > 0.0) {
        return Err(CovariantError::ZeroNorm);
    }
    let s = 1.0 / n2.sqrt();
    let f = f.clone();
    Ok(Arc::new(move |q| f(q) * s))
}

/// `Delta^2 = ||(A - <A phi, phi>) phi||^2` for `phi` scaled to unit norm.
pub fn dispersion(a: &OperatorExpr<Complex64>, phi: &ConfFn<Complex64>, dom: LineDomain) -> Result<f64, CovariantError> {
    let phi = normalised(phi, dom)?;
    dispersion_raw(a, &phi, dom)
}

fn dispersion_raw(a: &OperatorExpr<Complex64>, phi: &ConfFn<Complex64>, dom: LineDomain) -> Result<f64, CovariantError> {
    let ap = apply_line(a, phi);
    let n2 = dom.inner(&|q| phi(q), &|q| phi(q))?.re;
    let mean = dom.inner(&ap, &|q| phi(q))? / n2;
    let p = phi.clone();
    Ok(dom.inner(&|q| ap(q) - p(q) * mean, &|q| ap(q) - p(q) * mean)?.re)
}

/// `(Delta(A) Delta(B), |<[A, B] phi, phi>| / 2)` for `phi` scaled to unit
/// norm.
pub fn uncertainty_check(
    a: &OperatorExpr<Complex64>,
    b: &OperatorExpr<Complex64>,
    phi: &ConfFn<Complex64>,
    dom: LineDomain,
) -> Result<(f64, f64), CovariantError> {
    let phi = normalised(phi, dom)?;
    uncertainty_raw(a, b, &phi, dom)
}

fn uncertainty_raw(
    a: &OperatorExpr<Complex64>,
    b: &OperatorExpr<Complex64>,
    phi: &ConfFn<Complex64>,
    dom: LineDomain,
) -> Result<(f64, f64), CovariantError> {
    let lhs = (dispersion_raw(a, phi, dom)? * dispersion_raw(b, phi, dom)?).sqrt();
    let comm = apply_line(&a.commutator(b), phi);
    let rhs = 0.5 * dom.inner(&comm, &|q| phi(q))?.norm();
    Ok((lhs, rhs))
}

/// Coordinate `M = q`.
pub fn coordinate_op() -> OperatorExpr<Complex64> {
    OperatorExpr::term(Mono::new(1, 0, 0, 0), Complex64::new(1.0, 0.0))
}

/// Momentum `D = -i hbar d/dq`, so that `[M, D] = i hbar`.
pub fn momentum_op(pp: PlanckParams) -> OperatorExpr<Complex64> {
    OperatorExpr::term(Mono::new(0, 0, 1, 0), Complex64::new(0.0, -pp.hbar))
}

/// Derived SL(2, R) operators on the line for `rho(g) f(w) = f(g^{-1} w) / (a - c w)`.
pub fn sl2_line_ops() -> [(char, OperatorExpr<Complex64>); 3] {
    let r = |v: f64| Complex64::new(v, 0.0);
    let a = OperatorExpr::from_terms(&[(Mono::new(1, 0, 1, 0), r(-1.0)), (Mono::ONE, r(-0.5))]);
    let b = OperatorExpr::from_terms(&[
        (Mono::new(2, 0, 1, 0), r(0.5)),
        (Mono::new(0, 0, 1, 0), r(-0.5)),
        (Mono::new(1, 0, 0, 0), r(0.5)),
    ]);
    let z = OperatorExpr::from_terms(&[
        (Mono::new(2, 0, 1, 0), r(-1.0)),
        (Mono::new(0, 0, 1, 0), r(-1.0)),
        (Mono::new(1, 0, 0, 0), r(-1.0)),
    ]);
    [('A', a), ('B', b), ('Z', z)]
}

/// `(Delta(A) Delta(B), |<[A, B] phi, phi>| / 2)` on the line with `phi`
/// scaled so that `|<[A, B] phi, phi>| = 1`.
pub fn sl2_line_uncertainty(phi: &ConfFn<Complex64>, n: usize) -> Result<(f64, f64), CovariantError> {
    let [(_, a), (_, b), _] = sl2_line_ops();
    let dom = LineDomain::Compactified(n);
    let comm = apply_line(&a.commutator(&b), phi);
    let size = dom.inner(&comm, &|q| phi(q))?.norm();
    if !(size > 0.0) {
        return Err(CovariantError::ZeroNorm);
    }
    let s = 1.0 / size.sqrt();
    let p = phi.clone();
    let scaled: ConfFn<Complex64> = Arc::new(move |q| p(q) * s);
    uncertainty_raw(&a, &b, &scaled, dom)
}

/// Largest `|T phi - lambda phi|` over the sample points.
pub fn eigen_residual(op: &OperatorExpr<Complex64>, phi: &ConfFn<Complex64>, lambda: Complex64, pts: &[f64]) -> f64 {
    let tp = apply_line(op, phi);
    pts.iter().fold(0.0, |m, &q| m.max((tp(q) - phi(q) * lambda).norm()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// `(Delta(M) Delta(D) - hbar/2) / (hbar/2)` for the mother wavelet.
    pub equality_gap: f64,
    /// Annihilation residual of the transform of the test vector.
    pub annihilation_residual: f64,
    /// `r` in `((M - a) + i r (D - b)) f = 0`, read off the Gaussian width.
    pub r: f64,
}

/// Both sides of the equivalence between minimal dispersion of the pair
/// coordinate/momentum at the mother wavelet and annihilation of its
/// transforms by `D` built from `r = 1 / (2 c hbar)`.
pub fn uncertainty_analyticity_equivalence(
    pp: PlanckParams,
    c: f64,
    f: &MotherWavelet,
    v: &StateEval,
    grid_l: f64,
    grid_n: usize,
) -> Result<EquivalenceReport, CovariantError> {
    let dom = LineDomain::Truncated(LineQuadrature { l: 12.0, n: 4000 });
    let (lhs, rhs) = uncertainty_check(&coordinate_op(), &momentum_op(pp), &f.eval, dom)?;
    let axis = linspace(-grid_l, grid_l, grid_n + 2 * MARGIN);
    let tg = covariant_transform(pp, v, f, &axis, &axis, LineQuadrature::default())?;
    Ok(EquivalenceReport {
        equality_gap: (lhs - rhs) / rhs,
        annihilation_residual: fsb_annihilator_residual(&tg, pp, c)?,
        r: 1.0 / (2.0 * c * pp.hbar),
    })
}

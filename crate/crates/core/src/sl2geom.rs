//! SL(2,R) matrices, their one-parameter subgroups and Möbius action on the
//! three hypercomplex planes, together with the induced representations on
//! upper half-plane functions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::hypercomplex::{AlgebraError, AlgebraKind, Dual, Hyper, Scalar};
use crate::numerics::simpson_weights;

pub const DET_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("determinant {0} differs from 1")]
    NotUnimodular(f64),
    #[error("denominator c w + d = {0} is not invertible")]
    NonInvertibleDenominator(Hyper),
    #[error("point ({u}, {v}) lies outside the upper half-plane")]
    DomainError { u: f64, v: f64 },
    #[error("subgroup {0} has no section decomposition here")]
    UnsupportedSubgroup(SubgroupId),
    #[error("function values live in the wrong algebra for this representation")]
    ValueAlgebraMismatch,
    #[error("quadrature domain is invalid: {0}")]
    QuadratureDomainError(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A real 2x2 matrix of unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Mat2, GeomError> {
        let m = Mat2 { a, b, c, d };
        let det = m.det();
        if (det - 1.0).abs() < DET_TOL {
            Ok(m)
        } else {
            Err(GeomError::NotUnimodular(det))
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn scale(&self, r: f64) -> Mat2 {
        Mat2 {
            a: r * self.a,
            b: r * self.b,
            c: r * self.c,
            d: r * self.d,
        }
    }

    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        [
            self.a - o.a,
            self.b - o.b,
            self.c - o.c,
            self.d - o.d,
        ]
        .iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// One-parameter subgroups of SL(2,R).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubgroupId {
    A,
    N,
    K,
    Nprime,
    Aprime,
}

impl SubgroupId {
    pub const ALL: [SubgroupId; 5] = [
        SubgroupId::A,
        SubgroupId::N,
        SubgroupId::K,
        SubgroupId::Nprime,
        SubgroupId::Aprime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupId::A => "A",
            SubgroupId::N => "N",
            SubgroupId::K => "K",
            SubgroupId::Nprime => "Nprime",
            SubgroupId::Aprime => "Aprime",
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SubgroupId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(SubgroupId::A),
            "N" | "n" => Ok(SubgroupId::N),
            "K" | "k" => Ok(SubgroupId::K),
            "Nprime" | "N'" | "nprime" => Ok(SubgroupId::Nprime),
            "Aprime" | "A'" | "aprime" => Ok(SubgroupId::Aprime),
            other => Err(format!("unknown subgroup `{other}`")),
        }
    }
}

/// Closed-form element of a one-parameter subgroup.
///
/// `K` is periodic; its parameter is conventionally taken in `(-pi, pi]`.
pub fn subgroup_element(id: SubgroupId, t: f64) -> Mat2 {
    match id {
        SubgroupId::A => Mat2 {
            a: (-t / 2.0).exp(),
            b: 0.0,
            c: 0.0,
            d: (t / 2.0).exp(),
        },
        SubgroupId::N => Mat2 {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        },
        SubgroupId::K => {
            let (s, c) = t.sin_cos();
            Mat2 { a: c, b: s, c: -s, d: c }
        }
        SubgroupId::Nprime => Mat2 {
            a: 1.0,
            b: 0.0,
            c: t,
            d: 1.0,
        },
        SubgroupId::Aprime => Mat2 {
            a: t.cosh(),
            b: t.sinh(),
            c: t.sinh(),
            d: t.cosh(),
        },
    }
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(t: f64) -> f64 {
    let mut r = (t + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r += 2.0 * PI;
    }
    r
}

/// Möbius action `w -> (a w + b) / (c w + d)` in the algebra of `w`.
pub fn moebius(g: &Mat2, w: &Hyper) -> Result<Hyper, GeomError> {
    let k = w.kind;
    let num = w.scale(g.a).add(&Hyper::real(g.b, k))?;
    let den = w.scale(g.c).add(&Hyper::real(g.d, k))?;
    let inv = den
        .invert()
        .map_err(|_| GeomError::NonInvertibleDenominator(den))?;
    Ok(num.mul(&inv)?)
}

/// The same action written in real components.
pub fn moebius_components(g: &Mat2, u: f64, v: f64, sigma: f64) -> Result<(f64, f64), GeomError> {
    let cu_d = g.c * u + g.d;
    let den = cu_d * cu_d - sigma * (g.c * v) * (g.c * v);
    if den == 0.0 {
        let kind = AlgebraKind::from_sigma(sigma as i32).unwrap_or(AlgebraKind::Elliptic);
        return Err(GeomError::NonInvertibleDenominator(Hyper::new(
            cu_d,
            g.c * v,
            kind,
        )));
    }
    let u2 = ((g.a * u + g.b) * cu_d - sigma * g.c * g.a * v * v) / den;
    Ok((u2, v / den))
}

/// Sample the orbit of `w0` under a subgroup.
pub fn orbit(id: SubgroupId, w0: &Hyper, ts: &[f64]) -> Result<Vec<Hyper>, OrbitError> {
    ts.iter()
        .map(|&t| {
            moebius(&subgroup_element(id, t), w0).map_err(|source| OrbitError { t, source })
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("orbit undefined at t = {t}: {source}")]
pub struct OrbitError {
    pub t: f64,
    pub source: GeomError,
}

/// `(u^2 - sigma v^2 + 1) / (2 v)`, constant along `K`-orbits.
///
/// Level sets are circles, parabolas and equilateral hyperbolas.
pub fn k_orbit_invariant(w: &Hyper) -> f64 {
    (w.u * w.u - w.sigma() * w.v * w.v + 1.0) / (2.0 * w.v)
}

/// Factorisation `g = gA gN gK`.
pub fn iwasawa(g: &Mat2) -> (Mat2, Mat2, Mat2) {
    let r2 = g.c * g.c + g.d * g.d;
    let theta = (-g.c).atan2(g.d);
    let x = g.a * g.c + g.b * g.d;
    (
        subgroup_element(SubgroupId::A, r2.ln()),
        subgroup_element(SubgroupId::N, x),
        subgroup_element(SubgroupId::K, theta),
    )
}

/// Section `s(u, v) = v^{-1/2} [[v, u], [0, 1]]`.
pub fn section_s(u: f64, v: f64) -> Result<Mat2, GeomError> {
    if !(v > 0.0) {
        return Err(GeomError::DomainError { u, v });
    }
    let r = v.sqrt();
    Ok(Mat2 {
        a: r,
        b: u / r,
        c: 0.0,
        d: 1.0 / r,
    })
}

/// Projection `p(g) = g . iota` onto the homogeneous space `SL2 / H`.
pub fn project(g: &Mat2, id: SubgroupId) -> Result<(f64, f64), GeomError> {
    let kind = isotropy_kind(id)?;
    let w = moebius(g, &Hyper::unit(kind))?;
    Ok((w.u, w.v))
}

fn isotropy_kind(id: SubgroupId) -> Result<AlgebraKind, GeomError> {
    match id {
        SubgroupId::K => Ok(AlgebraKind::Elliptic),
        SubgroupId::Nprime => Ok(AlgebraKind::Parabolic),
        SubgroupId::Aprime => Ok(AlgebraKind::Hyperbolic),
        other => Err(GeomError::UnsupportedSubgroup(other)),
    }
}

/// `r(g) = s(p(g))^{-1} g`, the component of `g` in the isotropy subgroup.
///
/// For `N'` and `A'` the factor carries the sign of `d`, so for `d < 0` it
/// lies in `-N'` (resp. `-A'`); both signs act identically on the plane.
pub fn map_r(g: &Mat2, id: SubgroupId) -> Result<Mat2, GeomError> {
    match id {
        SubgroupId::K => {
            let r = (g.c * g.c + g.d * g.d).sqrt();
            Ok(Mat2 {
                a: g.d / r,
                b: -g.c / r,
                c: g.c / r,
                d: g.d / r,
            })
        }
        SubgroupId::Nprime => {
            if g.d == 0.0 {
                return Err(GeomError::NonInvertibleDenominator(Hyper::new(
                    g.d,
                    g.c,
                    AlgebraKind::Parabolic,
                )));
            }
            Ok(subgroup_element(SubgroupId::Nprime, g.c / g.d).scale(g.d.signum()))
        }
        SubgroupId::Aprime => {
            if g.c.abs() >= g.d.abs() {
                return Err(GeomError::NonInvertibleDenominator(Hyper::new(
                    g.d,
                    g.c,
                    AlgebraKind::Hyperbolic,
                )));
            }
            Ok(subgroup_element(SubgroupId::Aprime, (g.c / g.d).atanh()).scale(g.d.signum()))
        }
        other => Err(GeomError::UnsupportedSubgroup(other)),
    }
}

/// Values admissible for functions on the upper half-plane.
pub trait Sl2Value: Scalar {
    fn character_factor(rep: &Sl2Rep, ginv: &Mat2, u: f64, v: f64) -> Result<Self, GeomError>;
}

/// The induced representations written out explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Sl2Rep {
    /// Discrete-series form on the complex half-plane. With
    /// `strip_modulus` the factor `|cw+d|^k` is dropped, leaving `(cw+d)^{-k}`.
    DiscreteK { k: i32, strip_modulus: bool },
    /// Complex character of `N'` acting on the dual half-plane.
    ComplexN { tau: f64 },
    /// Dual character of `N'` acting on dual-valued functions.
    DualN { tau: f64 },
}

impl Sl2Rep {
    pub fn domain_kind(&self) -> AlgebraKind {
        match self {
            Sl2Rep::DiscreteK { .. } => AlgebraKind::Elliptic,
            Sl2Rep::ComplexN { .. } | Sl2Rep::DualN { .. } => AlgebraKind::Parabolic,
        }
    }
}

fn n_phase(ginv: &Mat2, u: f64, v: f64) -> Result<f64, GeomError> {
    let den = ginv.c * u + ginv.d;
    if den == 0.0 {
        return Err(GeomError::NonInvertibleDenominator(Hyper::new(
            den,
            ginv.c * v,
            AlgebraKind::Parabolic,
        )));
    }
    Ok(ginv.c * v / den)
}

impl Sl2Value for Complex64 {
    fn character_factor(rep: &Sl2Rep, ginv: &Mat2, u: f64, v: f64) -> Result<Self, GeomError> {
        match *rep {
            Sl2Rep::DiscreteK { k, strip_modulus } => {
                let j = Complex64::new(ginv.c * u + ginv.d, ginv.c * v);
                if j.norm_sqr() == 0.0 {
                    return Err(GeomError::NonInvertibleDenominator(Hyper::new(
                        j.re,
                        j.im,
                        AlgebraKind::Elliptic,
                    )));
                }
                let mut f = j.powi(-k);
                if !strip_modulus {
                    f *= j.norm().powi(k);
                }
                Ok(f)
            }
            Sl2Rep::ComplexN { tau } => {
                let t = tau * n_phase(ginv, u, v)?;
                Ok(Complex64::new(t.cos(), t.sin()))
            }
            Sl2Rep::DualN { .. } => Err(GeomError::ValueAlgebraMismatch),
        }
    }
}

impl Sl2Value for Dual {
    fn character_factor(rep: &Sl2Rep, ginv: &Mat2, u: f64, v: f64) -> Result<Self, GeomError> {
        match *rep {
            Sl2Rep::DualN { tau } => Ok(Dual::new(1.0, tau * n_phase(ginv, u, v)?)),
            _ => Err(GeomError::ValueAlgebraMismatch),
        }
    }
}

type UhpEval<T> = dyn Fn(f64, f64) -> Result<T, GeomError> + Send + Sync;

/// A function on the upper half-plane `{u + iota v : v > 0}`.
#[derive(Clone)]
pub struct UhpFunction<T> {
    pub kind: AlgebraKind,
    f: Arc<UhpEval<T>>,
}

impl<T: Sl2Value> UhpFunction<T> {
    pub fn new(kind: AlgebraKind, f: impl Fn(f64, f64) -> T + Send + Sync + 'static) -> Self {
        UhpFunction {
            kind,
            f: Arc::new(move |u, v| Ok(f(u, v))),
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<T, GeomError> {
        if !(v > 0.0) {
            return Err(GeomError::DomainError { u, v });
        }
        (self.f)(u, v)
    }
}

/// `[rho(g) f](w) = factor(g^{-1}, w) f(g^{-1} . w)`.
pub fn sl2_rep_action<T: Sl2Value>(
    rep: Sl2Rep,
    g: &Mat2,
    f: &UhpFunction<T>,
) -> Result<UhpFunction<T>, GeomError> {
    if f.kind != rep.domain_kind() {
        return Err(GeomError::ValueAlgebraMismatch);
    }
    let ginv = g.inverse();
    let kind = f.kind;
    let sigma = kind.sigma() as f64;
    let inner = f.clone();
    Ok(UhpFunction {
        kind,
        f: Arc::new(move |u, v| {
            let factor = T::character_factor(&rep, &ginv, u, v)?;
            let (u2, v2) = moebius_components(&ginv, u, v, sigma)?;
            Ok(factor * inner.eval(u2, v2)?)
        }),
    })
}

/// Truncated half-plane box `[-l, l] x [eps, l]` with `n x n` Simpson cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UhpGrid {
    pub l: f64,
    pub eps: f64,
    pub n: usize,
}

impl Default for UhpGrid {
    fn default() -> Self {
        UhpGrid {
            l: 8.0,
            eps: 1e-2,
            n: 256,
        }
    }
}

/// `<f1, f2> = \int f1 conj(f2) du dv / v^2` by composite Simpson.
pub fn uhp_inner_product<T: Sl2Value>(
    f1: &UhpFunction<T>,
    f2: &UhpFunction<T>,
    grid: &UhpGrid,
) -> Result<T, GeomError> {
    if grid.n == 0 || grid.n % 2 == 1 || !(grid.eps > 0.0) || !(grid.l > grid.eps) {
        return Err(GeomError::QuadratureDomainError(format!("{grid:?}")));
    }
    let n = grid.n;
    let hu = 2.0 * grid.l / n as f64;
    let hv = (grid.l - grid.eps) / n as f64;
    let w = simpson_weights(n + 1);
    let mut acc = T::zero();
    for (j, wj) in w.iter().enumerate() {
        let v = grid.eps + j as f64 * hv;
        let mut row = T::zero();
        for (i, wi) in w.iter().enumerate() {
            let u = -grid.l + i as f64 * hu;
            row += (f1.eval(u, v)? * f2.eval(u, v)?.conj()).scale(*wi);
        }
        acc += row.scale(wj / (v * v));
    }
    Ok(acc.scale(hu * hv))
}

/// The unitary `k = 1` representation on the real line:
/// `[rho(g) f](x) = f((a x + b) / (c x + d)) / (c x + d)` with `g^{-1} = [[a, b], [c, d]]`.
pub fn line_rep_k1(g: &Mat2, f: impl Fn(f64) -> Complex64) -> impl Fn(f64) -> Complex64 {
    let m = g.inverse();
    move |x| {
        let den = m.c * x + m.d;
        f((m.a * x + m.b) / den) / den
    }
}

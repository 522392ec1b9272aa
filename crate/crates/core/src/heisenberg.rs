//! The Heisenberg group: group law, symplectic automorphisms, invariant
//! vector fields and the character-reduced composition and commutator of
//! kernels.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hypercomplex::{AlgebraKind, Double, Dual, Scalar};
use crate::numerics::d1;
use crate::sl2geom::Mat2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeisenbergError {
    #[error("kernel grids differ: {0}")]
    GridMismatch(String),
    #[error("Planck constant must be positive, got {0}")]
    NonPositivePlanck(f64),
    #[error("grid needs an even number of nodes, got {0}")]
    OddGrid(usize),
}

/// Element `(s, x, y)` of the Heisenberg group.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct HElem {
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

impl HElem {
    pub const IDENTITY: HElem = HElem {
        s: 0.0,
        x: 0.0,
        y: 0.0,
    };

    pub const fn new(s: f64, x: f64, y: f64) -> Self {
        HElem { s, x, y }
    }

    pub fn inverse(&self) -> HElem {
        HElem::new(-self.s, -self.x, -self.y)
    }

    pub fn max_abs_diff(&self, o: &HElem) -> f64 {
        (self.s - o.s)
            .abs()
            .max((self.x - o.x).abs())
            .max((self.y - o.y).abs())
    }
}

/// Symplectic form `xy' - x'y`.
pub fn omega(x: f64, y: f64, x1: f64, y1: f64) -> f64 {
    x * y1 - x1 * y
}

pub fn h_mul(g1: &HElem, g2: &HElem) -> HElem {
    HElem::new(
        g1.s + g2.s + 0.5 * omega(g1.x, g1.y, g2.x, g2.y),
        g1.x + g2.x,
        g1.y + g2.y,
    )
}

/// `(s, x, y) -> (s, x', y')` with `(x', y') = g (x, y)`.
pub fn sp_action(g: &Mat2, h: &HElem) -> HElem {
    HElem::new(h.s, g.a * h.x + g.b * h.y, g.c * h.x + g.d * h.y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    S,
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Step used for invariant fields applied once.
pub const FIELD_STEP: f64 = 1e-5;

/// A function on the group.
pub type GroupFn<T> = Arc<dyn Fn(HElem) -> T + Send + Sync>;

/// `S = +-d_s`, `X = +-d_x - y/2 d_s`, `Y = +-d_y + x/2 d_s` (upper sign for
/// left-invariant fields), by fourth-order central differences with step `h`.
pub fn invariant_field_step<T: Scalar>(
    which: Field,
    side: Side,
    f: &dyn Fn(HElem) -> T,
    at: HElem,
    h: f64,
) -> T {
    let sign = match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    };
    let ds = || d1(|t| f(HElem::new(at.s + t, at.x, at.y)), 0.0, h);
    match which {
        Field::S => ds().scale(sign),
        Field::X => {
            let dx = d1(|t| f(HElem::new(at.s, at.x + t, at.y)), 0.0, h);
            dx.scale(sign) - ds().scale(0.5 * at.y)
        }
        Field::Y => {
            let dy = d1(|t| f(HElem::new(at.s, at.x, at.y + t)), 0.0, h);
            dy.scale(sign) + ds().scale(0.5 * at.x)
        }
    }
}

pub fn invariant_field<T: Scalar>(
    which: Field,
    side: Side,
    f: &dyn Fn(HElem) -> T,
    at: HElem,
) -> T {
    invariant_field_step(which, side, f, at, FIELD_STEP)
}

/// `([U, V] - W) f` at a point, with both fields applied by finite
/// differences of step `h`.
pub fn field_commutator_residual<T: Scalar>(
    u: Field,
    v: Field,
    w: Option<Field>,
    side: Side,
    f: GroupFn<T>,
    at: HElem,
    h: f64,
) -> T {
    let fv = {
        let f = f.clone();
        move |g: HElem| invariant_field_step(v, side, &*f, g, h)
    };
    let fu = {
        let f = f.clone();
        move |g: HElem| invariant_field_step(u, side, &*f, g, h)
    };
    let uv = invariant_field_step(u, side, &fv, at, h);
    let vu = invariant_field_step(v, side, &fu, at, h);
    let rhs = match w {
        Some(w) => invariant_field_step(w, side, &*f, at, h),
        None => T::zero(),
    };
    uv - vu - rhs
}

/// Values of a character-reduced kernel with its composition rule.
pub trait KernelScalar: Scalar {
    const KIND: AlgebraKind;
    /// Phase factor of the twisted convolution at symplectic area `theta`.
    fn composition_phase(h: f64, theta: f64) -> Self;
    /// `phase(theta) - phase(-theta)`.
    fn commutator_factor(h: f64, theta: f64) -> Self;
    /// Leading coefficient of the commutator factor in `h theta` after the
    /// unit is stripped; used to compare the cases.
    fn unit_part(self) -> f64;
}

/// `e^{i h theta / 2}`.
impl KernelScalar for Complex64 {
    const KIND: AlgebraKind = AlgebraKind::Elliptic;
    fn composition_phase(h: f64, theta: f64) -> Self {
        Complex64::from_polar(1.0, 0.5 * h * theta)
    }
    fn commutator_factor(h: f64, theta: f64) -> Self {
        Complex64::new(0.0, 2.0 * (0.5 * h * theta).sin())
    }
    fn unit_part(self) -> f64 {
        self.im
    }
}

/// `e^{j h theta}`.
impl KernelScalar for Double {
    const KIND: AlgebraKind = AlgebraKind::Hyperbolic;
    fn composition_phase(h: f64, theta: f64) -> Self {
        Double::exp_h(h * theta)
    }
    fn commutator_factor(h: f64, theta: f64) -> Self {
        Double::new(0.0, 2.0 * (h * theta).sinh())
    }
    fn unit_part(self) -> f64 {
        self.hy
    }
}

/// `e^{p h theta / 2} = 1 + p h theta / 2`.
impl KernelScalar for Dual {
    const KIND: AlgebraKind = AlgebraKind::Parabolic;
    fn composition_phase(h: f64, theta: f64) -> Self {
        Dual::new(1.0, 0.5 * h * theta)
    }
    fn commutator_factor(h: f64, theta: f64) -> Self {
        Dual::new(0.0, h * theta)
    }
    fn unit_part(self) -> f64 {
        self.du
    }
}

/// Samples of `k(x, y)` on the nodes `-l + i dx`, `i = 0..n` (`n` even, so
/// the origin is a node and differences of nodes are nodes).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelGrid<T> {
    pub l: f64,
    pub n: usize,
    /// Planck constant of the character.
    pub h: f64,
    /// Row-major values, `values[i * n + j] = k(x_i, y_j)`.
    pub values: Vec<T>,
}

impl<T: KernelScalar> KernelGrid<T> {
    pub const DEFAULT_L: f64 = 4.0;
    pub const DEFAULT_N: usize = 64;

    pub fn from_fn(
        l: f64,
        n: usize,
        h: f64,
        f: impl Fn(f64, f64) -> T,
    ) -> Result<Self, HeisenbergError> {
        if n % 2 == 1 || n == 0 {
            return Err(HeisenbergError::OddGrid(n));
        }
        if h <= 0.0 || !h.is_finite() {
            return Err(HeisenbergError::NonPositivePlanck(h));
        }
        let dx = 2.0 * l / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(-l + i as f64 * dx, -l + j as f64 * dx));
            }
        }
        Ok(KernelGrid { l, n, h, values })
    }

    pub fn kind(&self) -> AlgebraKind {
        T::KIND
    }

    pub fn step(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.l + i as f64 * self.step()
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[i * self.n + j]
    }

    /// Discrete delta at the origin (unit of the convolution).
    pub fn delta(l: f64, n: usize, h: f64) -> Result<Self, HeisenbergError> {
        let mut k = KernelGrid::from_fn(l, n, h, |_, _| T::zero())?;
        let dx = k.step();
        let c = n / 2;
        k.values[c * n + c] = T::from_real(1.0 / (dx * dx));
        Ok(k)
    }

    pub fn add(&self, o: &Self) -> Result<Self, HeisenbergError> {
        self.check(o)?;
        let values = self
            .values
            .iter()
            .zip(o.values.iter())
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(KernelGrid { values, ..*self })
    }

    pub fn scale(&self, r: f64) -> Self {
        KernelGrid {
            values: self.values.iter().map(|v| v.scale(r)).collect(),
            ..*self
        }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.values
            .iter()
            .zip(o.values.iter())
            .fold(0.0, |m, (a, b)| m.max((*a - *b).size()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, a| m.max(a.size()))
    }

    fn check(&self, o: &Self) -> Result<(), HeisenbergError> {
        if self.n != o.n || self.l != o.l {
            return Err(HeisenbergError::GridMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.n, self.l, o.n, o.l
            )));
        }
        if self.h != o.h {
            return Err(HeisenbergError::GridMismatch(format!(
                "Planck constants {} vs {}",
                self.h, o.h
            )));
        }
        Ok(())
    }

    /// `out(x, y) = sum_{x', y'} factor(x y' - y x') k1(x', y') k2(x - x', y - y') dx^2`
    /// over nodes with `x - x'` inside the grid; values outside are zero.
    fn twisted(&self, o: &Self, factor: impl Fn(f64) -> T + Sync) -> Result<Self, HeisenbergError> {
        self.check(o)?;
        let n = self.n;
        let dx = self.step();
        let w = dx * dx;
        let half = (n / 2) as isize;
        let nodes: Vec<f64> = (0..n).map(|i| self.node(i)).collect();
        let values: Vec<T> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let (x, y) = (nodes[i], nodes[j]);
                let mut acc = T::zero();
                for a in 0..n {
                    // x - x_a = x_{i - a + n/2}
                    let ia = i as isize - a as isize + half;
                    if ia < 0 || ia >= n as isize {
                        continue;
                    }
                    for b in 0..n {
                        let jb = j as isize - b as isize + half;
                        if jb < 0 || jb >= n as isize {
                            continue;
                        }
                        let k1 = self.values[a * n + b];
                        if k1.is_zero() {
                            continue;
                        }
                        let k2 = o.values[ia as usize * n + jb as usize];
                        let theta = x * nodes[b] - y * nodes[a];
                        acc += factor(theta) * k1 * k2;
                    }
                }
                acc.scale(w)
            })
            .collect();
        Ok(KernelGrid { values, ..*self })
    }
}

/// Twisted convolution `k1 * k2` of character-reduced kernels.
pub fn reduced_composition<T: KernelScalar>(
    k1: &KernelGrid<T>,
    k2: &KernelGrid<T>,
) -> Result<KernelGrid<T>, HeisenbergError> {
    let h = k1.h;
    k1.twisted(k2, move |theta| T::composition_phase(h, theta))
}

/// `k1 * k2 - k2 * k1` in closed form: elliptic `2i sin(h theta / 2)`,
/// hyperbolic `2j sinh(h theta)`, parabolic `p h theta`.
pub fn reduced_commutator<T: KernelScalar>(
    k1: &KernelGrid<T>,
    k2: &KernelGrid<T>,
) -> Result<KernelGrid<T>, HeisenbergError> {
    let h = k1.h;
    let a = k1.twisted(k2, move |theta| T::commutator_factor(h, theta))?;
    let b = k2.twisted(k1, move |theta| T::commutator_factor(h, theta))?;
    // the two sums agree up to sign; averaging makes antisymmetry exact
    let values = a
        .values
        .iter()
        .zip(b.values.iter())
        .map(|(u, v)| (*u - *v).scale(0.5))
        .collect();
    Ok(KernelGrid { values, ..a })
}

/// Relative deviation between the elliptic commutator divided by `i h` and
/// the parabolic one divided by `p h`, for real kernels `f1`, `f2`.
pub fn elliptic_parabolic_deviation(
    l: f64,
    n: usize,
    h: f64,
    f1: &(dyn Fn(f64, f64) -> f64 + Sync),
    f2: &(dyn Fn(f64, f64) -> f64 + Sync),
) -> Result<f64, HeisenbergError> {
    let e1 = KernelGrid::from_fn(l, n, h, |x, y| Complex64::new(f1(x, y), 0.0))?;
    let e2 = KernelGrid::from_fn(l, n, h, |x, y| Complex64::new(f2(x, y), 0.0))?;
    let p1 = KernelGrid::from_fn(l, n, h, |x, y| Dual::new(f1(x, y), 0.0))?;
    let p2 = KernelGrid::from_fn(l, n, h, |x, y| Dual::new(f2(x, y), 0.0))?;
    let ce = reduced_commutator(&e1, &e2)?;
    let cp = reduced_commutator(&p1, &p2)?;
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for (a, b) in ce.values.iter().zip(cp.values.iter()) {
        num = num.max((a.unit_part() - b.unit_part()).abs());
        den = den.max(b.unit_part().abs());
    }
    Ok(num / den)
}

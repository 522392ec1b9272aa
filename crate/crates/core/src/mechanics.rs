//! Harmonic and cubic oscillators in the three characters: right-hand sides
//! of the phase-space equations on uniform grids, an RK4 stepper, the
//! character-reduced equations on the Heisenberg group and the analytic
//! harmonic flow.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::heisenberg::{KernelGrid, KernelScalar};
use crate::hypercomplex::Scalar;
use crate::reps::{PhasePoly, PlanckParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MechError {
    #[error("state carries relative mass {mass:e} within {band} cells of the boundary")]
    BoundaryUnderflowViolation { mass: f64, band: usize },
    #[error("time step {dt} exceeds the stability limit {limit}")]
    StabilityViolation { dt: f64, limit: f64 },
    #[error("mass and frequency must be positive, got m = {m}, k = {k}")]
    InvalidHamiltonian { m: f64, k: f64 },
    #[error("grid must have at least {min} points per side, got {n}")]
    GridTooSmall { n: usize, min: usize },
    #[error("grids differ: {0}")]
    GridMismatch(String),
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Quantum,
    Hyperbolic,
    Classical,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Quantum, Mode::Hyperbolic, Mode::Classical];

    /// Coefficient of the third-order term of the deformed bracket, in units of `hbar^2`.
    fn third_order(self) -> f64 {
        match self {
            Mode::Quantum => -1.0 / 24.0,
            Mode::Hyperbolic => 1.0 / 24.0,
            Mode::Classical => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Quantum => "quantum",
            Mode::Hyperbolic => "hyperbolic",
            Mode::Classical => "classical",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = MechError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "quantum" | "elliptic" => Ok(Mode::Quantum),
            "hyperbolic" => Ok(Mode::Hyperbolic),
            "classical" | "parabolic" => Ok(Mode::Classical),
            other => Err(MechError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Hamiltonian {
    /// `(m k^2 q^2 + p^2 / m) / 2`.
    Harmonic { m: f64, k: f64 },
    /// `m k^2 q^2 / 2 + lambda q^3 / 6 + p^2 / (2m)`.
    Unharmonic { m: f64, k: f64, lambda: f64 },
}

impl Default for Hamiltonian {
    fn default() -> Self {
        Hamiltonian::Harmonic { m: 1.0, k: 1.0 }
    }
}

impl Hamiltonian {
    pub fn mass_freq(&self) -> (f64, f64) {
        match *self {
            Hamiltonian::Harmonic { m, k } | Hamiltonian::Unharmonic { m, k, .. } => (m, k),
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            Hamiltonian::Harmonic { .. } => 0.0,
            Hamiltonian::Unharmonic { lambda, .. } => lambda,
        }
    }

    pub fn validate(&self) -> Result<(), MechError> {
        let (m, k) = self.mass_freq();
        if m > 0.0 && k > 0.0 && m.is_finite() && k.is_finite() && self.lambda().is_finite() {
            Ok(())
        } else {
            Err(MechError::InvalidHamiltonian { m, k })
        }
    }

    pub fn poly(&self) -> PhasePoly {
        let (m, k) = self.mass_freq();
        PhasePoly::new(&[
            ((2, 0), 0.5 * m * k * k),
            ((0, 2), 0.5 / m),
            ((3, 0), self.lambda() / 6.0),
        ])
    }

    /// `2 pi / k`.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.mass_freq().1
    }
}

/// Samples on the nodes `-l + i dx`, `dx = 2l / n`, row index `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid<T> {
    pub l: f64,
    pub n: usize,
    pub pp: PlanckParams,
    pub values: Vec<T>,
}

/// Cells next to the boundary left out of every stencil.
pub const MARGIN: usize = 3;

/// Tolerated fraction of the L2 mass inside the boundary band.
pub const BOUNDARY_MASS: f64 = 1e-6;

impl<T: Scalar> PhaseGrid<T> {
    pub const DEFAULT_L: f64 = 6.0;
    pub const DEFAULT_N: usize = 128;

    pub fn from_fn(l: f64, n: usize, pp: PlanckParams, f: impl Fn(f64, f64) -> T + Sync) -> Result<Self, MechError> {
        if n < 2 * MARGIN + 2 {
            return Err(MechError::GridTooSmall { n, min: 2 * MARGIN + 2 });
        }
        let dx = 2.0 * l / n as f64;
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f(-l + (idx / n) as f64 * dx, -l + (idx % n) as f64 * dx))
            .collect();
        Ok(PhaseGrid { l, n, pp, values })
    }

    pub fn zeros_like(&self) -> Self {
        PhaseGrid {
            values: vec![T::zero(); self.n * self.n],
            ..*self
        }
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

    fn check(&self, o: &Self) -> Result<(), MechError> {
        if self.n != o.n || self.l != o.l {
            return Err(MechError::GridMismatch(format!("({}, {}) vs ({}, {})", self.n, self.l, o.n, o.l)));
        }
        Ok(())
    }

    pub fn axpy(&self, a: f64, o: &Self) -> Result<Self, MechError> {
        self.check(o)?;
        let values = self.values.iter().zip(&o.values).map(|(u, v)| *u + v.scale(a)).collect();
        Ok(PhaseGrid { values, ..*self })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, MechError> {
        self.axpy(-1.0, o)
    }

    pub fn scale(&self, a: f64) -> Self {
        PhaseGrid {
            values: self.values.iter().map(|v| v.scale(a)).collect(),
            ..*self
        }
    }

    /// `(sum |f|^2 dx^2)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let dx = self.step();
        (self.values.iter().map(|v| v.size().powi(2)).sum::<f64>() * dx * dx).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.size()))
    }

    pub fn rel_l2_error(&self, reference: &Self) -> Result<f64, MechError> {
        Ok(self.sub(reference)?.l2_norm() / reference.l2_norm())
    }

    /// Fraction of the squared L2 mass on cells within `band` of the boundary.
    pub fn boundary_mass(&self, band: usize) -> f64 {
        let n = self.n;
        let mut edge = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let w = self.at(i, j).size().powi(2);
                total += w;
                if i < band || j < band || i >= n - band || j >= n - band {
                    edge += w;
                }
            }
        }
        if total == 0.0 {
            0.0
        } else {
            edge / total
        }
    }

    pub fn check_boundary(&self) -> Result<(), MechError> {
        let mass = self.boundary_mass(MARGIN);
        if mass > BOUNDARY_MASS {
            return Err(MechError::BoundaryUnderflowViolation { mass, band: MARGIN });
        }
        Ok(())
    }

    /// Directional derivative of order 1..=3 along `q` (`axis = 0`) or `p`
    /// at an interior node, fourth-order central stencils.
    fn d_axis(&self, i: usize, j: usize, axis: usize, order: u32) -> T {
        let n = self.n as isize;
        let (i, j) = (i as isize, j as isize);
        let f = |k: isize| -> T {
            let (a, b) = if axis == 0 { (i + k, j) } else { (i, j + k) };
            debug_assert!(a >= 0 && a < n && b >= 0 && b < n);
            self.values[(a * n + b) as usize]
        };
        let h = self.step();
        match order {
            1 => (f(-2) - f(2) + (f(1) - f(-1)).scale(8.0)).scale(1.0 / (12.0 * h)),
            2 => (-f(2) - f(-2) + (f(1) + f(-1)).scale(16.0) - f(0).scale(30.0)).scale(1.0 / (12.0 * h * h)),
            3 => (f(-3) - f(3) + (f(2) - f(-2)).scale(8.0) + (f(-1) - f(1)).scale(13.0)).scale(1.0 / (8.0 * h * h * h)),
            _ => unreachable!("stencil order {order}"),
        }
    }

    /// `d_q^a d_p^b f`, `a + b <= 3`, by composing the one-dimensional
    /// stencils.
    fn partial(&self, i: usize, j: usize, a: u32, b: u32) -> T {
        match (a, b) {
            (0, 0) => self.at(i, j),
            (a, 0) => self.d_axis(i, j, 0, a),
            (0, b) => self.d_axis(i, j, 1, b),
            _ => {
                // inner derivative along p on the q-stencil nodes
                let h = self.step();
                let g = |k: isize| self.partial((i as isize + k) as usize, j, 0, b);
                match a {
                    1 => (g(-2) - g(2) + (g(1) - g(-1)).scale(8.0)).scale(1.0 / (12.0 * h)),
                    2 => (-g(2) - g(-2) + (g(1) + g(-1)).scale(16.0) - g(0).scale(30.0)).scale(1.0 / (12.0 * h * h)),
                    _ => unreachable!(),
                }
            }
        }
    }
}

/// Nodes from the boundary that the stencils of `mode` reach for `h`.
pub fn stencil_reach(mode: Mode, h: &Hamiltonian) -> usize {
    let third = h.poly().degree() >= 3 && mode != Mode::Classical;
    if third {
        3
    } else {
        2
    }
}

/// `df/dt` for the deformed bracket of `mode`:
/// `H_q f_p - H_p f_q + c hbar^2 (H_qqq f_ppp - 3 H_qqp f_qpp + 3 H_qpp f_qqp - H_ppp f_qqq)`
/// with `c = -1/24` (quantum), `+1/24` (hyperbolic), `0` (classical).
pub fn rhs<T: Scalar>(mode: Mode, h: &Hamiltonian, f: &PhaseGrid<T>) -> Result<PhaseGrid<T>, MechError> {
    h.validate()?;
    f.check_boundary()?;
    Ok(rhs_unchecked(mode, &h.poly(), f))
}

fn rhs_unchecked<T: Scalar>(mode: Mode, hp: &PhasePoly, f: &PhaseGrid<T>) -> PhaseGrid<T> {
    let n = f.n;
    let (hq, hpd) = (hp.d_q(), hp.d_p());
    let c3 = mode.third_order() * f.pp.hbar * f.pp.hbar;
    let thirds: Vec<(PhasePoly, u32, u32, f64)> = if c3 == 0.0 {
        Vec::new()
    } else {
        [
            (3u32, 0u32, 0u32, 3u32, 1.0),
            (2, 1, 1, 2, -3.0),
            (1, 2, 2, 1, 3.0),
            (0, 3, 3, 0, -1.0),
        ]
        .iter()
        .filter_map(|&(a, b, fa, fb, w)| {
            let mut d = hp.clone();
            for _ in 0..a {
                d = d.d_q();
            }
            for _ in 0..b {
                d = d.d_p();
            }
            (!d.coeffs.is_empty()).then_some((d, fa, fb, w * c3))
        })
        .collect()
    };
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i < MARGIN || j < MARGIN || i >= n - MARGIN || j >= n - MARGIN {
                return T::zero();
            }
            let (q, p) = (f.node(i), f.node(j));
            let mut acc = f.partial(i, j, 0, 1).scale(hq.eval(q, p)) - f.partial(i, j, 1, 0).scale(hpd.eval(q, p));
            for (d, a, b, w) in &thirds {
                acc += f.partial(i, j, *a, *b).scale(w * d.eval(q, p));
            }
            acc
        })
        .collect();
    PhaseGrid { values, ..*f }
}

/// The phase-space equations written out term by term, used as an independent
/// check of [`rhs`]: harmonic `m k^2 q d_p - p d_q / m`, cubic
/// `(lambda/6)(3 q^2 d_p -+ (hbar^2/4) d_p^3)` (quantum `-`, hyperbolic `+`)
/// and the classical `((m k^2 q + lambda q^2/2) d_p - p d_q / m)`.
pub fn rhs_explicit<T: Scalar>(mode: Mode, h: &Hamiltonian, f: &PhaseGrid<T>) -> Result<PhaseGrid<T>, MechError> {
    h.validate()?;
    f.check_boundary()?;
    let (m, k) = h.mass_freq();
    let lam = h.lambda();
    let hb2 = f.pp.hbar * f.pp.hbar;
    let n = f.n;
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i < MARGIN || j < MARGIN || i >= n - MARGIN || j >= n - MARGIN {
                return T::zero();
            }
            let (q, p) = (f.node(i), f.node(j));
            let fp = f.d_axis(i, j, 1, 1);
            let fq = f.d_axis(i, j, 0, 1);
            match mode {
                Mode::Classical => fp.scale(m * k * k * q + 0.5 * lam * q * q) - fq.scale(p / m),
                Mode::Quantum | Mode::Hyperbolic => {
                    let sign = if mode == Mode::Quantum { -1.0 } else { 1.0 };
                    let mut acc = fp.scale(m * k * k * q) - fq.scale(p / m);
                    if lam != 0.0 {
                        acc += (fp.scale(3.0 * q * q) + f.d_axis(i, j, 1, 3).scale(sign * hb2 / 4.0)).scale(lam / 6.0);
                    }
                    acc
                }
            }
        })
        .collect();
    Ok(PhaseGrid { values, ..*f })
}

/// `d_p^3` on the interior, zero on the margin.
pub fn third_p_derivative<T: Scalar>(f: &PhaseGrid<T>) -> PhaseGrid<T> {
    let n = f.n;
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i < MARGIN || j < MARGIN || i >= n - MARGIN || j >= n - MARGIN {
                T::zero()
            } else {
                f.d_axis(i, j, 1, 3)
            }
        })
        .collect();
    PhaseGrid { values, ..*f }
}

/// Largest time step accepted by [`evolve`]: transport CFL
/// `dt max(|H_q|, |H_p|) < dx / 2`, and for the dispersive term
/// `dt |c hbar^2 H_qqq| 8 / dx^3 < 1`.
pub fn stable_dt<T: Scalar>(mode: Mode, h: &Hamiltonian, f: &PhaseGrid<T>) -> f64 {
    let hp = h.poly();
    let (hq, hpd) = (hp.d_q(), hp.d_p());
    let mut speed: f64 = 0.0;
    for i in 0..f.n {
        for j in 0..f.n {
            let (q, p) = (f.node(i), f.node(j));
            speed = speed.max(hq.eval(q, p).abs()).max(hpd.eval(q, p).abs());
        }
    }
    let dx = f.step();
    let mut limit = if speed > 0.0 { 0.5 * dx / speed } else { f64::INFINITY };
    let c3 = (mode.third_order() * f.pp.hbar * f.pp.hbar * h.lambda()).abs();
    if c3 > 0.0 {
        limit = limit.min(dx.powi(3) / (8.0 * c3));
    }
    limit
}

/// Fixed-step RK4; `observe` sees the state after every step.
pub fn evolve_observed<T: Scalar>(
    mode: Mode,
    h: &Hamiltonian,
    f0: &PhaseGrid<T>,
    dt: f64,
    steps: usize,
    mut observe: impl FnMut(usize, &PhaseGrid<T>),
) -> Result<PhaseGrid<T>, MechError> {
    h.validate()?;
    f0.check_boundary()?;
    let limit = stable_dt(mode, h, f0);
    if !(dt.abs() < limit) {
        return Err(MechError::StabilityViolation { dt, limit });
    }
    let hp = h.poly();
    let mut f = f0.clone();
    for s in 0..steps {
        let k1 = rhs_unchecked(mode, &hp, &f);
        let k2 = rhs_unchecked(mode, &hp, &f.axpy(0.5 * dt, &k1)?);
        let k3 = rhs_unchecked(mode, &hp, &f.axpy(0.5 * dt, &k2)?);
        let k4 = rhs_unchecked(mode, &hp, &f.axpy(dt, &k3)?);
        let values = (0..f.values.len())
            .into_par_iter()
            .map(|i| f.values[i] + (k1.values[i] + (k2.values[i] + k3.values[i]).scale(2.0) + k4.values[i]).scale(dt / 6.0))
            .collect();
        f = PhaseGrid { values, ..f };
        observe(s + 1, &f);
    }
    Ok(f)
}

pub fn evolve<T: Scalar>(
    mode: Mode,
    h: &Hamiltonian,
    f0: &PhaseGrid<T>,
    dt: f64,
    steps: usize,
) -> Result<PhaseGrid<T>, MechError> {
    evolve_observed(mode, h, f0, dt, steps, |_, _| {})
}

/// Pullback of `f0` under the harmonic flow on the phase space:
/// `f0(q cos kt - p sin(kt) / (mk), p cos kt + m k q sin kt)`.
pub fn harmonic_analytic<T>(
    m: f64,
    k: f64,
    f0: impl Fn(f64, f64) -> T + Send + Sync,
    t: f64,
) -> impl Fn(f64, f64) -> T + Send + Sync {
    let (c, s) = ((k * t).cos(), (k * t).sin());
    move |q, p| f0(q * c - p * s / (m * k), p * c + m * k * q * s)
}

/// The same flow on the Heisenberg group:
/// `f0(s, x cos kt + m k y sin kt, -x sin(kt) / (mk) + y cos kt)`.
pub fn harmonic_analytic_kernel<T>(
    m: f64,
    k: f64,
    f0: impl Fn(f64, f64, f64) -> T + Send + Sync,
    t: f64,
) -> impl Fn(f64, f64, f64) -> T + Send + Sync {
    let (c, sn) = ((k * t).cos(), (k * t).sin());
    move |s, x, y| f0(s, x * c + m * k * y * sn, -x * sn / (m * k) + y * c)
}

/// Character-reduced dynamics on the group, `d/ds` replaced by `chi`:
/// `m k^2 y d_x - x d_y / m + (lambda/6)(3 y d_x^2 + y^3 chi^2 / 4)`.
pub fn p_dynamic_rhs<T: KernelScalar>(h: &Hamiltonian, f: &KernelGrid<T>, chi: T) -> Result<KernelGrid<T>, MechError> {
    h.validate()?;
    let (m, k) = h.mass_freq();
    let lam = h.lambda();
    let n = f.n;
    if n < 2 * MARGIN + 2 {
        return Err(MechError::GridTooSmall { n, min: 2 * MARGIN + 2 });
    }
    let dx = f.step();
    let chi2 = chi * chi;
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i < 2 || j < 2 || i >= n - 2 || j >= n - 2 {
                return T::zero();
            }
            let (x, y) = (f.node(i), f.node(j));
            let v = |a: usize, b: usize| f.at(a, b);
            let fx = (v(i - 2, j) - v(i + 2, j) + (v(i + 1, j) - v(i - 1, j)).scale(8.0)).scale(1.0 / (12.0 * dx));
            let fy = (v(i, j - 2) - v(i, j + 2) + (v(i, j + 1) - v(i, j - 1)).scale(8.0)).scale(1.0 / (12.0 * dx));
            let mut acc = fx.scale(m * k * k * y) - fy.scale(x / m);
            if lam != 0.0 {
                let fxx = (-v(i + 2, j) - v(i - 2, j) + (v(i + 1, j) + v(i - 1, j)).scale(16.0) - v(i, j).scale(30.0))
                    .scale(1.0 / (12.0 * dx * dx));
                acc += (fxx.scale(3.0 * y) + chi2 * v(i, j).scale(0.25 * y * y * y)).scale(lam / 6.0);
            }
            acc
        })
        .collect();
    Ok(KernelGrid { values, ..f.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> PhaseGrid<f64> {
        PhaseGrid::from_fn(6.0, 64, PlanckParams::default(), |q, p| (-(q * q + p * p)).exp()).unwrap()
    }

    #[test]
    fn constant_is_stationary() {
        let mut g = grid();
        // constant in the interior, zero on the band
        g.values.iter_mut().for_each(|v| *v = 0.0);
        let n = g.n;
        for i in 8..n - 8 {
            for j in 8..n - 8 {
                g.values[i * n + j] = 1.0;
            }
        }
        let r = rhs(Mode::Quantum, &Hamiltonian::default(), &g).unwrap();
        for i in 11..n - 11 {
            for j in 11..n - 11 {
                assert_eq!(r.at(i, j), 0.0);
            }
        }
    }

    #[test]
    fn boundary_guard() {
        let g = PhaseGrid::from_fn(2.0, 32, PlanckParams::default(), |_, _| 1.0).unwrap();
        assert!(matches!(
            rhs(Mode::Classical, &Hamiltonian::default(), &g),
            Err(MechError::BoundaryUnderflowViolation { .. })
        ));
    }

    #[test]
    fn mode_parse() {
        assert_eq!("Hyperbolic".parse::<Mode>().unwrap(), Mode::Hyperbolic);
        assert!("x".parse::<Mode>().is_err());
    }
}

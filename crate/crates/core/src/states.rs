//! Phase-space states, their kernels on the Heisenberg group and the
//! probabilities of registering a particle at a point.
//!
//! All states are normalised to unit `L^2` norm on the phase space and are
//! products `Q(q - a) P(p - b)` of a coordinate and a momentum profile. The
//! momentum profile enters the measurements through its Fourier transform
//! `P^(xi) = int P(p) e^{-2 pi i p xi} dp`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::heisenberg::HElem;
use crate::hypercomplex::DualComplex;
use crate::mechanics::Mode;
use crate::numerics::simpson;
use crate::reps::{dual_rep, fsb_rep, DualJet, DualState, PhaseFn, PlanckParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatesError {
    #[error("integrand does not decay on the quadrature domain ({what}: edge/peak = {ratio:e})")]
    QuadratureDomain { what: String, ratio: f64 },
    #[error("A = {a} is outside the {mode:?} range")]
    PhaseDomain { a: f64, mode: Mode },
    #[error("invalid state: {0}")]
    InvalidState(String),
}

/// Relative size of the integrand at the edge of the domain that is still
/// accepted.
pub const EDGE_TOLERANCE: f64 = 1e-9;

/// `exp(-(2 pi k m / hbar)(q - a)^2 - (2 pi / (hbar k m))(p - b)^2)`, scaled to
/// unit norm (the unscaled function has squared norm `hbar / 4`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianState {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub k: f64,
    pub pp: PlanckParams,
}

/// `hbar^2 / (((q - a)^2 + hbar/(k m)) ((p - b)^2 + hbar k m))`, scaled to unit
/// norm (the unscaled function has squared norm `pi^2 hbar / 4`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RationalState {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub k: f64,
    pub pp: PlanckParams,
}

/// Compactly supported `C^2` bump `(1 - (q-a)^2/r^2)^3 (1 - (p-b)^2/r^2)^3`
/// scaled to unit norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BumpState {
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub pp: PlanckParams,
}

fn check_mk(m: f64, k: f64) -> Result<(), StatesError> {
    if m > 0.0 && k > 0.0 && m.is_finite() && k.is_finite() {
        Ok(())
    } else {
        Err(StatesError::InvalidState(format!("m = {m}, k = {k} must be positive")))
    }
}

impl GaussianState {
    pub fn new(a: f64, b: f64, m: f64, k: f64, pp: PlanckParams) -> Result<Self, StatesError> {
        check_mk(m, k)?;
        Ok(GaussianState { a, b, m, k, pp })
    }

    fn beta_q(&self) -> f64 {
        2.0 * PI * self.k * self.m / self.pp.hbar
    }

    fn beta_p(&self) -> f64 {
        2.0 * PI / (self.pp.hbar * self.k * self.m)
    }

    /// The unscaled Gaussian.
    pub fn raw(&self, q: f64, p: f64) -> f64 {
        (-self.beta_q() * (q - self.a).powi(2) - self.beta_p() * (p - self.b).powi(2)).exp()
    }

    /// Closed-form peak of the position distribution, `sqrt(2km/hbar)`.
    pub fn position_density(&self, c: f64) -> f64 {
        (2.0 * self.k * self.m / self.pp.hbar).sqrt() * (-self.beta_q() * (c - self.a).powi(2)).exp()
    }
}

impl RationalState {
    pub fn new(a: f64, b: f64, m: f64, k: f64, pp: PlanckParams) -> Result<Self, StatesError> {
        check_mk(m, k)?;
        Ok(RationalState { a, b, m, k, pp })
    }

    fn alpha(&self) -> f64 {
        self.pp.hbar / (self.k * self.m)
    }

    fn beta(&self) -> f64 {
        self.pp.hbar * self.k * self.m
    }

    /// The unscaled rational function.
    pub fn raw(&self, q: f64, p: f64) -> f64 {
        let h = self.pp.hbar;
        h * h / (((q - self.a).powi(2) + self.alpha()) * ((p - self.b).powi(2) + self.beta()))
    }
}

impl BumpState {
    pub fn new(a: f64, b: f64, r: f64, pp: PlanckParams) -> Result<Self, StatesError> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(StatesError::InvalidState(format!("bump radius {r}")));
        }
        Ok(BumpState { a, b, r, pp })
    }

    // int (1 - t^2)^6 dt over [-1, 1]
    const PROFILE_SQ: f64 = 2.0 * 46080.0 / 135135.0;

    fn norm(&self) -> f64 {
        1.0 / (Self::PROFILE_SQ * self.r)
    }
}

/// (value, first derivative) of `(1 - t^2/r^2)^3`.
fn bump(t: f64, r: f64) -> (f64, f64) {
    let u = t / r;
    if u.abs() >= 1.0 {
        return (0.0, 0.0);
    }
    let w = 1.0 - u * u;
    (w * w * w, -6.0 * u * w * w / r)
}

/// A phase-space state of one of the supported families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum State {
    Gaussian(GaussianState),
    Rational(RationalState),
    Bump(BumpState),
}

impl State {
    pub fn family(&self) -> &'static str {
        match self {
            State::Gaussian(_) => "gaussian",
            State::Rational(_) => "rational",
            State::Bump(_) => "bump",
        }
    }

    pub fn pp(&self) -> PlanckParams {
        match self {
            State::Gaussian(s) => s.pp,
            State::Rational(s) => s.pp,
            State::Bump(s) => s.pp,
        }
    }

    pub fn centre(&self) -> (f64, f64) {
        match self {
            State::Gaussian(s) => (s.a, s.b),
            State::Rational(s) => (s.a, s.b),
            State::Bump(s) => (s.a, s.b),
        }
    }

    /// True for the families whose tails need the wider quadrature domain.
    pub fn slow_decay(&self) -> bool {
        matches!(self, State::Rational(_))
    }

    /// Centred coordinate profile, carrying the normalisation.
    pub fn q_profile(&self, t: f64) -> f64 {
        match self {
            State::Gaussian(s) => 2.0 / s.pp.hbar.sqrt() * (-s.beta_q() * t * t).exp(),
            State::Rational(s) => 2.0 / (PI * s.pp.hbar.sqrt()) * s.pp.hbar / (t * t + s.alpha()),
            State::Bump(s) => s.norm() * bump(t, s.r).0,
        }
    }

    /// Centred momentum profile.
    pub fn p_profile(&self, t: f64) -> f64 {
        match self {
            State::Gaussian(s) => (-s.beta_p() * t * t).exp(),
            State::Rational(s) => s.pp.hbar / (t * t + s.beta()),
            State::Bump(s) => bump(t, s.r).0,
        }
    }

    /// Fourier transform of the centred momentum profile; closed forms for
    /// the Gaussian and rational families.
    pub fn p_hat(&self, xi: f64) -> f64 {
        match self {
            State::Gaussian(s) => {
                let bp = s.beta_p();
                (PI / bp).sqrt() * (-PI * PI * xi * xi / bp).exp()
            }
            State::Rational(s) => {
                let sb = s.beta().sqrt();
                s.pp.hbar * PI / sb * (-2.0 * PI * sb * xi.abs()).exp()
            }
            State::Bump(s) => {
                let r = s.r;
                simpson(|p| bump(p, r).0 * (2.0 * PI * p * xi).cos(), -r, r, 2000)
            }
        }
    }

    /// `ln |P^(xi)|`, finite far beyond the underflow of `P^`.
    pub fn ln_abs_p_hat(&self, xi: f64) -> f64 {
        match self {
            State::Gaussian(s) => {
                let bp = s.beta_p();
                0.5 * (PI / bp).ln() - PI * PI * xi * xi / bp
            }
            State::Rational(s) => {
                let sb = s.beta().sqrt();
                (s.pp.hbar * PI / sb).ln() - 2.0 * PI * sb * xi.abs()
            }
            State::Bump(_) => self.p_hat(xi).abs().ln(),
        }
    }

    /// Scale of the variable `xi` over which `P^` decays.
    fn xi_width(&self) -> f64 {
        match self {
            State::Gaussian(s) => s.beta_p().sqrt() / PI,
            State::Rational(s) => 1.0 / (2.0 * PI * s.beta().sqrt()),
            State::Bump(s) => 1.0 / s.r,
        }
    }

    pub fn eval(&self, q: f64, p: f64) -> f64 {
        let (a, b) = self.centre();
        self.q_profile(q - a) * self.p_profile(p - b)
    }

    /// Half-width of the coordinate region carrying the mass of `Q^2`.
    fn q_extent(&self) -> f64 {
        match self {
            State::Gaussian(s) => (40.0 / s.beta_q()).sqrt(),
            State::Rational(s) => 400.0 * s.alpha().sqrt(),
            State::Bump(s) => s.r,
        }
    }

    fn p_extent(&self) -> f64 {
        match self {
            State::Gaussian(s) => (40.0 / s.beta_p()).sqrt(),
            State::Rational(s) => 400.0 * s.beta().sqrt(),
            State::Bump(s) => s.r,
        }
    }

    pub fn as_phase_fn(&self) -> PhaseFn<Complex64> {
        let st = *self;
        Arc::new(move |q, p| Complex64::new(st.eval(q, p), 0.0))
    }

    /// The state together with its first derivatives, for the dual
    /// representation.
    pub fn as_dual_state(&self) -> DualState {
        let st = *self;
        let (a, b) = st.centre();
        let h = 1e-5;
        Arc::new(move |q, p| {
            let (vq, dq, vp, dp) = match st {
                State::Bump(s) => {
                    let (vq, dq) = bump(q - a, s.r);
                    let (vp, dp) = bump(p - b, s.r);
                    (s.norm() * vq, s.norm() * dq, vp, dp)
                }
                _ => {
                    let qf = |t: f64| st.q_profile(t);
                    let pf = |t: f64| st.p_profile(t);
                    (
                        qf(q - a),
                        (qf(q - a + h) - qf(q - a - h)) / (2.0 * h),
                        pf(p - b),
                        (pf(p - b + h) - pf(p - b - h)) / (2.0 * h),
                    )
                }
            };
            DualJet {
                val: DualComplex::from_complex(Complex64::new(vq * vp, 0.0)),
                zq: Complex64::new(dq * vp, 0.0),
                zp: Complex64::new(vq * dp, 0.0),
            }
        })
    }
}

/// `int Q^2 dq int P^2 dp`, by quadrature.
pub fn norm_sq(st: &State) -> f64 {
    let (eq, ep) = (st.q_extent(), st.p_extent());
    let n = if st.slow_decay() { 200_000 } else { 4000 };
    let qn = simpson(|t| st.q_profile(t).powi(2), -eq, eq, n);
    let pn = simpson(|t| st.p_profile(t).powi(2), -ep, ep, n);
    qn * pn
}

/// Quadrature settings for the partial Fourier transform `p -> xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialFourierDomain {
    pub l: f64,
    pub n: usize,
}

impl Default for PartialFourierDomain {
    fn default() -> Self {
        PartialFourierDomain { l: 40.0, n: 4096 }
    }
}

/// `int_{-l}^{l} P(p) e^{-2 pi i p xi} dp` by Simpson on `n` and `n/2`
/// intervals with Richardson extrapolation; returns the value and the
/// estimated discretisation error.
pub fn partial_fourier_quadrature(st: &State, xi: f64, dom: PartialFourierDomain) -> (f64, f64) {
    let f = |p: f64| st.p_profile(p) * (2.0 * PI * p * xi).cos();
    let fine = simpson(f, -dom.l, dom.l, dom.n);
    let coarse = simpson(f, -dom.l, dom.l, dom.n / 2);
    let rich = fine + (fine - coarse) / 15.0;
    (rich, (rich - coarse).abs())
}

/// Kernel `l(s, x, y) = <v_1, rho(s, x, y) v_2>` of a pair of states.
#[derive(Clone)]
pub struct StateKernel {
    pub mode: Mode,
    /// Interval of `x` outside which the slice `l(0, x, 0)` is negligible.
    pub x_range: (f64, f64),
    eval: Arc<dyn Fn(HElem) -> Complex64 + Send + Sync>,
}

impl std::fmt::Debug for StateKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StateKernel")
            .field("mode", &self.mode)
            .field("x_range", &self.x_range)
            .finish()
    }
}

impl StateKernel {
    pub fn new(
        mode: Mode,
        x_range: (f64, f64),
        eval: impl Fn(HElem) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        StateKernel {
            mode,
            x_range,
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, g: HElem) -> Complex64 {
        (self.eval)(g)
    }

    pub fn at_identity(&self) -> Complex64 {
        self.at(HElem::IDENTITY)
    }
}

/// `int e^{2 pi i x f} e^{-beta((t-u)^2 + (t-w)^2)} dt`.
fn gauss_pair(beta: f64, u: f64, w: f64, f: f64) -> Complex64 {
    let mid = 0.5 * (u + w);
    let amp = (PI / (2.0 * beta)).sqrt() * (-0.5 * beta * (u - w).powi(2) - PI * PI * f * f / (2.0 * beta)).exp();
    Complex64::from_polar(amp, 2.0 * PI * f * mid)
}

/// Closed-form `<v_1, rho(s, x, y) v_2>` for two Gaussian states of the same
/// shape, with `rho` the Fock–Segal–Bargmann representation.
pub fn gauss_cross_kernel(st1: &GaussianState, st2: &GaussianState) -> Result<StateKernel, StatesError> {
    if st1.m != st2.m || st1.k != st2.k || st1.pp != st2.pp {
        return Err(StatesError::InvalidState(
            "cross kernels need Gaussians of the same shape".into(),
        ));
    }
    let (s1, s2) = (*st1, *st2);
    let hb = s1.pp.hbar;
    let (bq, bp) = (s1.beta_q(), s1.beta_p());
    let shift = 2.0 * (s1.b - s2.b) / hb;
    let reach = (60.0 / (PI * hb / (2.0 * s1.k * s1.m))).sqrt();
    let x_range = (-shift.abs() - reach, shift.abs() + reach);
    Ok(StateKernel::new(Mode::Quantum, x_range, move |g: HElem| {
        let qpart = gauss_pair(bq, s1.a, s2.a + 0.5 * hb * g.y, g.x);
        let ppart = gauss_pair(bp, s1.b, s2.b - 0.5 * hb * g.x, g.y);
        Complex64::from_polar(4.0 / hb, 2.0 * PI * hb * g.s) * qpart * ppart
    }))
}

/// Closed-form kernel of a single Gaussian state:
/// `exp(2 pi i (s hbar + x a + y b) - (pi hbar / 2km) x^2 - (pi km hbar / 2) y^2)`.
pub fn gauss_kernel(st: &GaussianState) -> StateKernel {
    gauss_cross_kernel(st, st).expect("same shape")
}

/// `<v_1, rho(g) v_2>` by two-dimensional quadrature of the defining inner
/// product.
pub fn kernel_quadrature(st1: &State, st2: &State, g: HElem, n: usize) -> Complex64 {
    let pp = st1.pp();
    let moved = fsb_rep(pp, g, st2.as_phase_fn());
    let (a1, b1) = st1.centre();
    let (eq, ep) = (st1.q_extent(), st1.p_extent());
    simpson(
        |q| simpson(|p| moved(q, p).conj() * st1.eval(q, p), b1 - ep, b1 + ep, n),
        a1 - eq,
        a1 + eq,
        n,
    )
}

/// Edge of `f` relative to its peak on the sampled interval.
fn edge_ratio(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let peak = (0..=200)
        .map(|i| f(lo + (hi - lo) * i as f64 / 200.0).abs())
        .fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    f(lo).abs().max(f(hi).abs()) / peak
}

/// `<X_c, l> = int e^{2 pi i x c} conj(l(0, x, 0)) dx`, the real part of the
/// pairing with the observable `X_c = e^{2 pi i (s hbar + x c)} delta(y)`.
pub fn measure_position(c: f64, l: &StateKernel) -> Result<f64, StatesError> {
    let (lo, hi) = l.x_range;
    let slice = |x: f64| l.at(HElem::new(0.0, x, 0.0));
    let ratio = edge_ratio(&|x| slice(x).norm(), lo, hi);
    if !(ratio <= EDGE_TOLERANCE) {
        return Err(StatesError::QuadratureDomain {
            what: "kernel slice".into(),
            ratio,
        });
    }
    let n = (((hi - lo) * (c.abs() + 1.0) * 40.0) as usize).max(4000);
    let v = simpson(|x| Complex64::from_polar(1.0, 2.0 * PI * x * c) * slice(x).conj(), lo, hi, n);
    Ok(v.re)
}

/// Quantum superposition via the four Gaussian cross kernels.
pub fn gauss_superposition_by_kernels(st1: &GaussianState, st2: &GaussianState, c: f64) -> Result<f64, StatesError> {
    let pairs = [(st1, st1), (st1, st2), (st2, st1), (st2, st2)];
    let mut acc = 0.0;
    for (u, v) in pairs {
        acc += measure_position(c, &gauss_cross_kernel(u, v)?)?;
    }
    Ok(acc)
}

/// Closed-form quantum measurement on `v_(0, b) + v_(0, -b)` where `b` is
/// taken from `st`.
pub fn gauss_superposition_closed_form(st: &GaussianState, c: f64) -> f64 {
    let (k, m, hb, b) = (st.k, st.m, st.pp.hbar, st.b);
    2.0 * (2.0 * k * m / hb).sqrt()
        * (-2.0 * PI * k * m * c * c / hb).exp()
        * (1.0 + (-2.0 * PI * b * b / (k * m * hb)).exp() * (4.0 * PI * c * b / hb).cos())
}

/// Classical kernel `<v_1, rho(g) v_2>` with the dual representation, as a
/// dual-complex number. It vanishes identically when the supports of the
/// states are disjoint.
pub fn classical_cross_kernel(st1: &State, st2: &State, g: HElem, n: usize) -> DualComplex {
    let moved = dual_rep(st1.pp(), g, st2.as_dual_state());
    let (a1, b1) = st1.centre();
    let (eq, ep) = (st1.q_extent(), st1.p_extent());
    let z = simpson(
        |q| simpson(|p| moved(q, p).val.z.conj() * st1.eval(q, p), b1 - ep, b1 + ep, n),
        a1 - eq,
        a1 + eq,
        n,
    );
    let w = simpson(
        |q| simpson(|p| moved(q, p).val.w.conj() * st1.eval(q, p), b1 - ep, b1 + ep, n),
        a1 - eq,
        a1 + eq,
        n,
    );
    DualComplex::new(z, w)
}

/// Contribution `<X_c, <v_i, rho(.) v_j>>` of one ordered pair of states.
///
/// Quantum and hyperbolic modes use the partial Fourier transforms in the
/// momentum, `(2/hbar) int conj(u_i^)(q, xi) u_j^(q, xi) dq` with
/// `xi = 2(q - c)/hbar`. The relative momentum phase `e^{2 pi i (b_i - b_j) xi}`
/// is elliptic in the quantum mode and hyperbolic, `e^{2 pi j (b_i - b_j) xi}`,
/// in the hyperbolic mode; only its scalar part survives the symmetric sum.
/// The classical mode localises the dual kernel at `q = c`.
pub fn pair_measurement(si: &State, sj: &State, c: f64, mode: Mode) -> Result<f64, StatesError> {
    let pp = si.pp();
    if pp != sj.pp() {
        return Err(StatesError::InvalidState("states with different hbar".into()));
    }
    let hb = pp.hbar;
    let (ai, bi) = si.centre();
    let (aj, bj) = sj.centre();
    if mode == Mode::Classical {
        let (lo, hi) = (
            (bi - si.p_extent()).min(bj - sj.p_extent()),
            (bi + si.p_extent()).max(bj + sj.p_extent()),
        );
        let n = if si.slow_decay() || sj.slow_decay() { 200_000 } else { 8000 };
        let kernel_i = si.as_dual_state();
        let kernel_j = dual_rep(pp, HElem::IDENTITY, sj.as_dual_state());
        return Ok(simpson(
            |p| (kernel_i(c, p).val.z * kernel_j(c, p).val.z.conj()).re,
            lo,
            hi,
            n,
        ));
    }
    let db = bi - bj;
    // |r| cosh(t) = (e^{ln|r| + t} + e^{ln|r| - t}) / 2 keeps the hyperbolic
    // weight finite where the transforms underflow
    let integrand = |q: f64| {
        let xi = 2.0 * (q - c) / hb;
        let qq = si.q_profile(q - ai) * sj.q_profile(q - aj);
        let t = 2.0 * PI * db * xi;
        match mode {
            Mode::Hyperbolic => {
                if qq == 0.0 {
                    return 0.0;
                }
                let sign = qq.signum() * si.p_hat(xi).signum() * sj.p_hat(xi).signum();
                let lr = qq.abs().ln() + si.ln_abs_p_hat(xi) + sj.ln_abs_p_hat(xi);
                sign * 0.5 * ((lr + t).exp() + (lr - t).exp())
            }
            _ => qq * si.p_hat(xi) * sj.p_hat(xi) * t.cos(),
        }
    };
    let lo = (ai - si.q_extent()).min(aj - sj.q_extent()).min(c - 1.0);
    let hi = (ai + si.q_extent()).max(aj + sj.q_extent()).max(c + 1.0);
    let ratio = edge_ratio(&integrand, lo, hi);
    if !(ratio <= EDGE_TOLERANCE) {
        return Err(StatesError::QuadratureDomain {
            what: format!("{:?} pair measurement at c = {c}", mode),
            ratio,
        });
    }
    // the transforms are sharply peaked (and for the rational family kinked)
    // at q = c, so the neighbourhood of c gets its own panels
    let w = 30.0 * 0.5 * hb * si.xi_width().max(sj.xi_width());
    let mut cuts = [lo, c - w, c, c + w, hi];
    cuts.iter_mut().for_each(|x| *x = x.clamp(lo, hi));
    let n = if si.slow_decay() || sj.slow_decay() { 20_000 } else { 2000 };
    let total: f64 = cuts
        .windows(2)
        .map(|ab| if ab[1] > ab[0] { simpson(integrand, ab[0], ab[1], n) } else { 0.0 })
        .sum();
    if !total.is_finite() {
        return Err(StatesError::QuadratureDomain {
            what: format!("{:?} pair measurement at c = {c}", mode),
            ratio: f64::INFINITY,
        });
    }
    Ok(2.0 / hb * total)
}

/// Probability of registering a single state at `c`.
pub fn measure_state(st: &State, c: f64, mode: Mode) -> Result<f64, StatesError> {
    pair_measurement(st, st, c, mode)
}

/// Measurement of `X_c` on the kernel of `v_1 + v_2`.
pub fn superposition_measurement(st1: &State, st2: &State, c: f64, mode: Mode) -> Result<f64, StatesError> {
    let d1 = pair_measurement(st1, st1, c, mode)?;
    let d2 = pair_measurement(st2, st2, c, mode)?;
    let x12 = pair_measurement(st1, st2, c, mode)?;
    let x21 = pair_measurement(st2, st1, c, mode)?;
    Ok(d1 + d2 + x12 + x21)
}

/// `l_1 + l_2 + 2 A sqrt(l_1 l_2)`; elliptic `|A| <= 1`, hyperbolic `|A| >= 1`.
pub fn probability_addition(l1: f64, l2: f64, a: f64, mode: Mode) -> Result<f64, StatesError> {
    if !(l1 >= 0.0 && l2 >= 0.0) {
        return Err(StatesError::InvalidState(format!("negative probabilities {l1}, {l2}")));
    }
    let ok = match mode {
        Mode::Quantum => a.abs() <= 1.0,
        Mode::Hyperbolic => a.abs() >= 1.0,
        Mode::Classical => a.is_finite(),
    };
    if !ok {
        return Err(StatesError::PhaseDomain { a, mode });
    }
    Ok(l1 + l2 + 2.0 * a * (l1 * l2).sqrt())
}

/// Solves `l_12 = l_1 + l_2 + 2 A sqrt(l_1 l_2)` for `A`.
pub fn addition_coefficient(l1: f64, l2: f64, l12: f64) -> f64 {
    (l12 - l1 - l2) / (2.0 * (l1 * l2).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub c: f64,
    /// `l_1 + l_2`, the addition without interaction.
    pub sum: f64,
    /// The measurement on the superposition.
    pub interference: f64,
}

pub fn interference_curve(st1: &State, st2: &State, cs: &[f64], mode: Mode) -> Result<Vec<CurveRow>, StatesError> {
    cs.par_iter()
        .map(|&c| {
            let d1 = pair_measurement(st1, st1, c, mode)?;
            let d2 = pair_measurement(st2, st2, c, mode)?;
            let x12 = pair_measurement(st1, st2, c, mode)?;
            let x21 = pair_measurement(st2, st1, c, mode)?;
            Ok(CurveRow {
                c,
                sum: d1 + d2,
                interference: d1 + d2 + x12 + x21,
            })
        })
        .collect()
}

/// Number of interior local extrema of a sampled curve; changes smaller than
/// `tol` times the range of the values are ignored.
pub fn count_extrema(values: &[f64], tol: f64) -> usize {
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let eps = tol * (max - min);
    let mut count = 0;
    let mut dir = 0i8;
    let mut anchor = values.first().copied().unwrap_or(0.0);
    for &v in values.iter().skip(1) {
        let d = v - anchor;
        if d.abs() <= eps {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if dir != 0 && s != dir {
            count += 1;
        }
        dir = s;
        anchor = v;
    }
    count
}

/// The pair `v_(a, b)`, `v_(a, -b)` of a family with the given parameters.
pub fn symmetric_pair(family: &str, a: f64, b: f64, m: f64, k: f64, pp: PlanckParams) -> Result<(State, State), StatesError> {
    match family {
        "gaussian" => Ok((
            State::Gaussian(GaussianState::new(a, b, m, k, pp)?),
            State::Gaussian(GaussianState::new(a, -b, m, k, pp)?),
        )),
        "rational" => Ok((
            State::Rational(RationalState::new(a, b, m, k, pp)?),
            State::Rational(RationalState::new(a, -b, m, k, pp)?),
        )),
        "bump" => {
            let r = 0.9 * b.abs();
            Ok((
                State::Bump(BumpState::new(a, b, r, pp)?),
                State::Bump(BumpState::new(a, -b, r, pp)?),
            ))
        }
        other => Err(StatesError::InvalidState(format!("unknown state family `{other}`"))),
    }
}

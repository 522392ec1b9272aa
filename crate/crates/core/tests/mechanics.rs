use std::f64::consts::PI;

use hypermech::heisenberg::KernelGrid;
use hypermech::hypercomplex::{Double, Dual, Scalar};
use hypermech::mechanics::*;
use hypermech::numerics::derivative;
use hypermech::reps::PlanckParams;
use num_complex::Complex64;

fn pp() -> PlanckParams {
    PlanckParams::default()
}

fn blob(q: f64, p: f64) -> f64 {
    (1.0 + 0.3 * q - 0.2 * p) * (-((q - 1.5) * (q - 1.5) + 0.8 * p * p)).exp()
}

fn grid(n: usize) -> PhaseGrid<f64> {
    PhaseGrid::from_fn(6.0, n, pp(), blob).unwrap()
}

fn max_rel(a: &PhaseGrid<f64>, b: &PhaseGrid<f64>) -> f64 {
    a.sub(b).unwrap().max_abs() / a.max_abs().max(b.max_abs())
}

const UNH: Hamiltonian = Hamiltonian::Unharmonic { m: 1.0, k: 1.0, lambda: 0.7 };

#[test]
fn harmonic_rhs_identical_across_modes() {
    let f = grid(128);
    let h = Hamiltonian::Harmonic { m: 1.3, k: 0.8 };
    let q = rhs(Mode::Quantum, &h, &f).unwrap();
    let c = rhs(Mode::Classical, &h, &f).unwrap();
    let y = rhs(Mode::Hyperbolic, &h, &f).unwrap();
    assert!(max_rel(&q, &c) < 1e-12);
    assert!(max_rel(&q, &y) < 1e-12);
}

#[test]
fn rhs_matches_explicit_equations() {
    let f = grid(96);
    for h in [Hamiltonian::Harmonic { m: 0.7, k: 1.4 }, UNH] {
        for mode in Mode::ALL {
            let a = rhs(mode, &h, &f).unwrap();
            let b = rhs_explicit(mode, &h, &f).unwrap();
            assert!(max_rel(&a, &b) < 1e-12, "{mode} {h:?}");
        }
    }
}

#[test]
fn unharmonic_difference_is_the_third_derivative() {
    let f = grid(128);
    let q = rhs(Mode::Quantum, &UNH, &f).unwrap();
    let y = rhs(Mode::Hyperbolic, &UNH, &f).unwrap();
    let hb2 = pp().hbar * pp().hbar;
    let want = third_p_derivative(&f).scale(-2.0 * (hb2 / 4.0) * (0.7 / 6.0));
    let diff = q.sub(&y).unwrap();
    assert!(diff.sub(&want).unwrap().max_abs() < 1e-12 * want.max_abs());
    assert!(want.max_abs() > 0.0);
}

#[test]
fn rhs_against_analytic_time_derivative() {
    // d/dt at t = 0 of the exact harmonic flow; fourth-order convergence
    let (m, k) = (1.2, 0.9);
    let h = Hamiltonian::Harmonic { m, k };
    let dt = 1e-4;
    let plus = harmonic_analytic(m, k, blob, dt);
    let minus = harmonic_analytic(m, k, blob, -dt);
    let err = |n: usize| {
        let f = PhaseGrid::from_fn(6.0, n, pp(), blob).unwrap();
        let r = rhs(Mode::Quantum, &h, &f).unwrap();
        let want = PhaseGrid::from_fn(6.0, n, pp(), |q, p| (plus(q, p) - minus(q, p)) / (2.0 * dt)).unwrap();
        max_rel(&r, &want)
    };
    let (e1, e2) = (err(128), err(256));
    assert!(e1 < 1e-4, "{e1}");
    assert!(e1 / e2 > 12.0, "{e1} {e2}");
}

#[test]
fn classical_rhs_is_free_of_planck() {
    let a = PhaseGrid::from_fn(6.0, 64, PlanckParams::new(0.1).unwrap(), blob).unwrap();
    let b = PhaseGrid::from_fn(6.0, 64, PlanckParams::new(2.0).unwrap(), blob).unwrap();
    assert_eq!(rhs(Mode::Classical, &UNH, &a).unwrap().values, rhs(Mode::Classical, &UNH, &b).unwrap().values);
    assert_ne!(rhs(Mode::Quantum, &UNH, &a).unwrap().values, rhs(Mode::Quantum, &UNH, &b).unwrap().values);
}

#[test]
fn stencil_footprints() {
    let base = grid(64);
    let (i0, j0) = (30, 33);
    let mut bumped = base.clone();
    bumped.values[i0 * 64 + j0] += 1e-3;
    for (mode, reach) in [(Mode::Classical, 2), (Mode::Quantum, 3), (Mode::Hyperbolic, 3)] {
        assert_eq!(stencil_reach(mode, &UNH), reach);
        let d = rhs(mode, &UNH, &bumped).unwrap().sub(&rhs(mode, &UNH, &base).unwrap()).unwrap();
        let mut far_p = 0usize;
        for i in 0..64 {
            for j in 0..64 {
                if d.at(i, j) != 0.0 {
                    let (di, dj) = ((i as isize - i0 as isize).abs(), (j as isize - j0 as isize).abs());
                    assert!(di as usize <= reach && dj as usize <= reach, "{mode} {di} {dj}");
                    far_p = far_p.max(dj as usize);
                }
            }
        }
        assert_eq!(far_p, reach, "{mode}");
    }
    assert_eq!(stencil_reach(Mode::Quantum, &Hamiltonian::default()), 2);
}

#[test]
fn rhs_is_linear() {
    let f = grid(64);
    let g = PhaseGrid::from_fn(6.0, 64, pp(), |q, p| (-(q * q + (p - 1.0).powi(2))).exp()).unwrap();
    for mode in Mode::ALL {
        let lhs = rhs(mode, &UNH, &f.axpy(-2.5, &g).unwrap()).unwrap();
        let rhs_ = rhs(mode, &UNH, &f).unwrap().axpy(-2.5, &rhs(mode, &UNH, &g).unwrap()).unwrap();
        assert!(max_rel(&lhs, &rhs_) < 1e-13);
    }
}

#[test]
fn one_period_returns_to_start() {
    let h = Hamiltonian::default();
    let f0 = grid(PhaseGrid::<f64>::DEFAULT_N);
    let limit = stable_dt(Mode::Quantum, &h, &f0);
    let steps = (h.period() / (0.9 * limit)).ceil() as usize;
    let dt = h.period() / steps as f64;
    let m0 = f0.l2_norm();
    let mut drift: f64 = 0.0;
    let quarter = steps / 4;
    let mut at_quarter = None;
    let f1 = evolve_observed(Mode::Quantum, &h, &f0, dt, steps, |s, g| {
        drift = drift.max((g.l2_norm() - m0).abs() / m0);
        if s == quarter {
            at_quarter = Some(g.clone());
        }
    })
    .unwrap();
    let err = f1.rel_l2_error(&f0).unwrap();
    assert!(err < 1e-3, "period error {err}");
    assert!(drift < 1e-4, "mass drift {drift}");
    let t = quarter as f64 * dt;
    let exact = PhaseGrid::from_fn(6.0, f0.n, pp(), harmonic_analytic(1.0, 1.0, blob, t)).unwrap();
    let err = at_quarter.unwrap().rel_l2_error(&exact).unwrap();
    assert!(err < 1e-3, "quarter error {err}");
}

#[test]
fn evolve_guards() {
    let f0 = grid(64);
    let h = Hamiltonian::default();
    assert_eq!(evolve(Mode::Classical, &h, &f0, 1e-3, 0).unwrap(), f0);
    assert!(matches!(
        evolve(Mode::Classical, &h, &f0, 1.0, 1),
        Err(MechError::StabilityViolation { .. })
    ));
    assert!(matches!(
        rhs(Mode::Quantum, &Hamiltonian::Harmonic { m: -1.0, k: 1.0 }, &f0),
        Err(MechError::InvalidHamiltonian { .. })
    ));
}

#[test]
fn analytic_flow_is_periodic() {
    let f = harmonic_analytic(1.7, 0.6, blob, 2.0 * PI / 0.6);
    let g = harmonic_analytic(1.7, 0.6, blob, 0.0);
    for (q, p) in [(0.1, 0.2), (-1.0, 0.7), (2.0, -1.5)] {
        assert!((f(q, p) - blob(q, p)).abs() < 1e-12);
        assert_eq!(g(q, p), blob(q, p));
    }
    let k = harmonic_analytic_kernel(1.7, 0.6, |s: f64, x: f64, y: f64| s + x * x - y, 2.0 * PI / 0.6);
    assert!((k(0.3, 1.1, -0.4) - (0.3 + 1.21 + 0.4)).abs() < 1e-12);
}

fn kernel_gauss(x: f64, y: f64) -> f64 {
    (-((x - 0.5).powi(2) + (y + 0.3).powi(2)) / 2.0).exp()
}

#[test]
fn kernel_equation_generates_the_analytic_flow() {
    let (m, k) = (1.1, 0.8);
    let h = Hamiltonian::Harmonic { m, k };
    let grid = KernelGrid::from_fn(8.0, 128, 1.0, |x, y| Complex64::new(kernel_gauss(x, y), 0.0)).unwrap();
    let r = p_dynamic_rhs(&h, &grid, Complex64::new(0.0, 1.0)).unwrap();
    let dt = 1e-5;
    let plus = harmonic_analytic_kernel(m, k, |_, x, y| kernel_gauss(x, y), dt);
    let minus = harmonic_analytic_kernel(m, k, |_, x, y| kernel_gauss(x, y), -dt);
    let mut worst: f64 = 0.0;
    for i in (4..124).step_by(5) {
        for j in (4..124).step_by(5) {
            let (x, y) = (grid.node(i), grid.node(j));
            let want = (plus(0.0, x, y) - minus(0.0, x, y)) / (2.0 * dt);
            worst = worst.max((r.at(i, j).re - want).abs());
        }
    }
    assert!(worst < 1e-4, "{worst}");
}

/// `sum k(x, y) e^{-i (q x + p y)} dx dy` over the grid.
fn fourier(k: &KernelGrid<Complex64>, q: f64, p: f64) -> Complex64 {
    let dx = k.step();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..k.n {
        for j in 0..k.n {
            acc += k.at(i, j) * Complex64::from_polar(1.0, -(q * k.node(i) + p * k.node(j)));
        }
    }
    acc * dx * dx
}

/// Closed-form transform of `kernel_gauss`.
fn fourier_gauss(q: f64, p: f64) -> Complex64 {
    Complex64::from_polar(2.0 * PI * (-(q * q + p * p) / 2.0).exp(), -(0.5 * q - 0.3 * p))
}

#[test]
fn fourier_route_harmonic() {
    // the group equation evolves observables, the phase-space one states:
    // the transform intertwines them up to the sign of time
    let (m, k) = (1.1, 0.8);
    let h = Hamiltonian::Harmonic { m, k };
    let grid = KernelGrid::from_fn(8.0, 128, 1.0, |x, y| Complex64::new(kernel_gauss(x, y), 0.0)).unwrap();
    let r = p_dynamic_rhs(&h, &grid, Complex64::new(0.0, 1.0)).unwrap();
    let ft = |q: f64, p: f64| fourier_gauss(q, p);
    for (q, p) in [(0.0, 0.0), (0.7, -0.4), (-1.2, 0.9), (0.3, 1.5)] {
        let lhs = fourier(&r, q, p);
        let fq = derivative(&|t| ft(t, p), q, 1, 1e-4);
        let fp = derivative(&|t| ft(q, t), p, 1, 1e-4);
        let phase_rhs = fp * (m * k * k * q) - fq * (p / m);
        assert!((lhs + phase_rhs).norm() < 1e-4 * (1.0 + lhs.norm()), "{lhs} {phase_rhs}");
    }
}

#[test]
fn fourier_route_cubic_term() {
    // with d/ds acting as i hbar the cubic group term maps to the Wigner
    // cubic term times -i
    let hbar = 0.4;
    let lam = 0.9;
    let grid = KernelGrid::from_fn(8.0, 128, 1.0, |x, y| Complex64::new(kernel_gauss(x, y), 0.0)).unwrap();
    let chi = Complex64::new(0.0, hbar);
    let full = p_dynamic_rhs(&Hamiltonian::Unharmonic { m: 1.0, k: 1.0, lambda: lam }, &grid, chi).unwrap();
    let harm = p_dynamic_rhs(&Hamiltonian::Harmonic { m: 1.0, k: 1.0 }, &grid, chi).unwrap();
    let cubic = KernelGrid { values: full.values.iter().zip(&harm.values).map(|(a, b)| a - b).collect(), ..full.clone() };
    for (q, p) in [(0.0, 0.0), (0.7, -0.4), (-1.2, 0.9)] {
        let lhs = fourier(&cubic, q, p);
        let fp = derivative(&|t| fourier_gauss(q, t), p, 1, 1e-4);
        let fppp = derivative(&|t| fourier_gauss(q, t), p, 3, 2e-3);
        let wigner = (fp * (3.0 * q * q) - fppp * (hbar * hbar / 4.0)) * (lam / 6.0);
        let want = wigner * Complex64::new(0.0, -1.0);
        assert!((lhs - want).norm() < 1e-4 * (1.0 + want.norm()), "{lhs} {want}");
    }
}

#[test]
fn parabolic_cubic_term_vanishes() {
    let grid = KernelGrid::from_fn(6.0, 64, 1.0, |x, y| Dual::new(kernel_gauss(x, y), 0.3 * x * kernel_gauss(x, y))).unwrap();
    let with = p_dynamic_rhs(&UNH, &grid, Dual::new(0.0, pp().hbar)).unwrap();
    let without = p_dynamic_rhs(&UNH, &grid, Dual::new(0.0, 0.0)).unwrap();
    assert_eq!(with.values, without.values);
    let zero = KernelGrid::from_fn(6.0, 64, 1.0, |_, _| Dual::new(0.0, 0.0)).unwrap();
    assert!(p_dynamic_rhs(&UNH, &zero, Dual::new(0.0, 1.0)).unwrap().values.iter().all(|v| v.is_zero()));
}

#[test]
fn hyperbolic_cubic_term_flips_sign() {
    let hb = pp().hbar;
    let grid_d = KernelGrid::from_fn(6.0, 64, 1.0, |x, y| Double::new(kernel_gauss(x, y), 0.0)).unwrap();
    let grid_c = KernelGrid::from_fn(6.0, 64, 1.0, |x, y| Complex64::new(kernel_gauss(x, y), 0.0)).unwrap();
    let d = p_dynamic_rhs(&UNH, &grid_d, Double::new(0.0, hb)).unwrap();
    let d0 = p_dynamic_rhs(&UNH, &grid_d, Double::new(0.0, 0.0)).unwrap();
    let c = p_dynamic_rhs(&UNH, &grid_c, Complex64::new(0.0, hb)).unwrap();
    let c0 = p_dynamic_rhs(&UNH, &grid_c, Complex64::new(0.0, 0.0)).unwrap();
    for idx in 0..64 * 64 {
        let yd = d.values[idx].re - d0.values[idx].re;
        let yc = c.values[idx].re - c0.values[idx].re;
        assert!((yd + yc).abs() < 1e-15);
    }
}

use std::f64::consts::PI;
use std::sync::Arc;

use hypermech::covariant::*;
use hypermech::heisenberg::{h_mul, HElem};
use hypermech::numerics::linspace;
use hypermech::reps::{schrodinger_rep, ConfFn, PlanckParams, StateEval};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C: f64 = 2.0 * PI;

fn pp(hbar: f64) -> PlanckParams {
    PlanckParams { hbar, h: 2.0 * PI * hbar }
}

fn gauss(a: f64, q0: f64) -> ConfFn<Complex64> {
    Arc::new(move |q| Complex64::new((-0.5 * a * (q - q0) * (q - q0)).exp(), 0.0))
}

// Gaussian integral done by hand for v = e^{-a q^2/2}.
fn fsb_gauss_closed_form(hbar: f64, c: f64, a: f64, x: f64, y: f64) -> Complex64 {
    let s = a + c;
    let lin = Complex64::new(c * hbar * y, -2.0 * PI * x);
    let e = lin * lin / (2.0 * s) - 0.5 * c * hbar * hbar * y * y + Complex64::new(0.0, PI * hbar * x * y);
    e.exp() * (2.0 * PI / s).sqrt()
}

fn grid(l: f64, interior: usize) -> Vec<f64> {
    linspace(-l, l, interior + 2 * MARGIN)
}

#[test]
fn fsb_transform_matches_gaussian_integral() {
    for hbar in [1.0, 0.5] {
        let p = pp(hbar);
        let v = StateEval::Config(gauss(1.3, 0.0));
        let xs = linspace(-1.5, 1.5, 7);
        let tg = covariant_transform(p, &v, &MotherWavelet::gaussian(C), &xs, &xs, LineQuadrature::default()).unwrap();
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in xs.iter().enumerate() {
                let want = fsb_gauss_closed_form(hbar, C, 1.3, *x, *y);
                assert!((tg.at(i, j) - want).norm() < 1e-10, "{x} {y}");
            }
        }
    }
}

#[test]
fn fsb_image_is_annihilated() {
    let p = pp(1.0);
    let axis = grid(1.0, 64);
    let f = MotherWavelet::gaussian(C);
    for v in [gauss(1.0, 0.3), Arc::new(|q: f64| Complex64::new(q, 0.5 * q * q) * (-q * q).exp()) as ConfFn<Complex64>] {
        let tg = covariant_transform(p, &StateEval::Config(v), &f, &axis, &axis, LineQuadrature::default()).unwrap();
        let r = fsb_annihilator_residual(&tg, p, C).unwrap();
        assert!(r < 1e-4, "{r}");
    }
    // other widths and Planck constants
    for (hbar, c) in [(0.5, 3.0), (2.0, 1.0)] {
        let p = pp(hbar);
        let tg = covariant_transform(p, &StateEval::Config(gauss(1.0, 0.0)), &MotherWavelet::gaussian(c), &axis, &axis, LineQuadrature::default()).unwrap();
        assert!(fsb_annihilator_residual(&tg, p, c).unwrap() < 1e-4);
    }
}

#[test]
fn annihilator_negative_controls() {
    let p = pp(1.0);
    let axis = grid(1.0, 64);
    let v = StateEval::Config(gauss(1.0, 0.3));
    let perturbed = covariant_transform(p, &v, &MotherWavelet::perturbed_gaussian(C, 0.5), &axis, &axis, LineQuadrature::default()).unwrap();
    assert!(fsb_annihilator_residual(&perturbed, p, C).unwrap() > 1e-2);
    let good = covariant_transform(p, &v, &MotherWavelet::gaussian(C), &axis, &axis, LineQuadrature::default()).unwrap();
    let conj = good.map(|_, _, z| z.conj());
    assert!(fsb_annihilator_residual(&conj, p, C).unwrap() > 1e-2);
    let small = TransformGrid { xs: vec![0.0; 3], ys: vec![0.0; 3], values: vec![Complex64::new(0.0, 0.0); 9], ..good };
    assert!(matches!(fsb_annihilator_residual(&small, p, C), Err(CovariantError::GridTooSmall(_))));
}

#[test]
fn heisenberg_intertwining_and_right_shift() {
    let p = pp(1.0);
    let v = gauss(1.0, 0.2);
    let f = MotherWavelet::gaussian(C).eval;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = LineQuadrature { l: 10.0, n: 4000 };
    for _ in 0..16 {
        let g = HElem::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let h = HElem::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        // W(rho(g) v)(h) = W v(g^{-1} h)
        let lhs = heisenberg_wavelet(p, &schrodinger_rep(p, g, v.clone()), &f, h, q).unwrap();
        let rhs = heisenberg_wavelet(p, &v, &f, h_mul(&g.inverse(), &h), q).unwrap();
        assert!((lhs - rhs).norm() < 1e-4);
        // W_f v(h g) = W_{rho(g) f} v(h)
        let lhs = heisenberg_wavelet(p, &v, &f, h_mul(&h, &g), q).unwrap();
        let rhs = heisenberg_wavelet(p, &v, &schrodinger_rep(p, g, f.clone()), h, q).unwrap();
        assert!((lhs - rhs).norm() < 1e-4);
    }
}

#[test]
fn transform_rejects_wrong_state_and_slow_decay() {
    let p = pp(1.0);
    let xs = [0.0];
    let phase = StateEval::Phase(Arc::new(|_, _| Complex64::new(1.0, 0.0)));
    assert!(matches!(
        covariant_transform(p, &phase, &MotherWavelet::gaussian(C), &xs, &xs, LineQuadrature::default()),
        Err(CovariantError::StateMismatch { .. })
    ));
    let flat = StateEval::Config(Arc::new(|_| Complex64::new(1.0, 0.0)));
    let wide = MotherWavelet::gaussian(1e-3);
    assert!(matches!(
        covariant_transform(p, &flat, &wide, &xs, &xs, LineQuadrature::default()),
        Err(CovariantError::QuadratureDomain { .. })
    ));
}

#[test]
fn sl2_rep_is_a_unitary_homomorphism() {
    let f: ConfFn<Complex64> = Arc::new(|t| Complex64::new(1.0, 0.3 * t) / (1.0 + t * t));
    let g: [[f64; 2]; 2] = [[1.2, 0.4], [-0.5, 0.8 / 1.2]];
    let h: [[f64; 2]; 2] = [[0.7, -0.3], [0.2, (1.0 - 0.3 * 0.2) / 0.7]];
    for m in [g, h] {
        assert!((m[0][0] * m[1][1] - m[0][1] * m[1][0] - 1.0).abs() < 1e-12);
    }
    let a = sl2_rep(g, sl2_rep(h, f.clone()));
    let b = sl2_rep(sl2_mul(g, h), f.clone());
    for t in linspace(-5.0, 5.0, 21) {
        assert!((a(t) - b(t)).norm() < 1e-12);
    }
    let gf = sl2_rep(g, f.clone());
    let n0 = inner_line(&|t| f(t), &|t| f(t), 20000).re;
    let n1 = inner_line(&|t| gf(t), &|t| gf(t), 20000).re;
    assert!((n0 - n1).abs() < 1e-6 * n0);
    let e = sl2_mul(g, sl2_inverse(g));
    assert!((e[0][0] - 1.0).abs() < 1e-12 && e[0][1].abs() < 1e-12 && e[1][0].abs() < 1e-12);
}

#[test]
fn hardy_transform_closed_form_and_holomorphy() {
    let p = pp(1.0);
    let v = StateEval::Config(Arc::new(|t| 1.0 / Complex64::new(t, 1.0)));
    let xs = linspace(-1.0, 1.0, 64 + 2 * MARGIN);
    let ys = linspace(0.5, 2.5, 64 + 2 * MARGIN);
    let tg = covariant_transform(p, &v, &MotherWavelet::f_plus(), &xs, &ys, LineQuadrature::default()).unwrap();
    let mut worst: f64 = 0.0;
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            worst = worst.max((tg.at(i, j) - hardy_image_closed_form(*x, *y)).norm());
        }
    }
    assert!(worst < 1e-6, "{worst}");
    assert!(hardy_holomorphy_residual(&tg).unwrap() < 1e-4);
    assert!(cauchy_riemann_residual(&tg, -1.0).unwrap() > 1e-2);

    let tm = covariant_transform(p, &v, &MotherWavelet::f_minus(), &xs, &ys, LineQuadrature::default()).unwrap();
    let other = StateEval::Config(Arc::new(|t| 1.0 / Complex64::new(t, -2.0)));
    let tm2 = covariant_transform(p, &other, &MotherWavelet::f_minus(), &xs, &ys, LineQuadrature::default()).unwrap();
    // opposite Hardy spaces are orthogonal
    assert!(tm.values.iter().all(|z| z.norm() < 1e-10));
    let anti = cauchy_riemann_residual(&tm2, -1.0).unwrap();
    assert!(anti < 1e-4, "{anti}");
    assert!(hardy_holomorphy_residual(&tm2).unwrap() > 1e-2);
    let tp2 = covariant_transform(p, &other, &MotherWavelet::f_plus(), &xs, &ys, LineQuadrature::default()).unwrap();
    assert!(tp2.values.iter().all(|z| z.norm() < 1e-10));

    // a grid that is constant in x but not holomorphic
    let fake = tg.map(|_, y, _| Complex64::new(y.sqrt() * y, 0.0));
    assert!(hardy_holomorphy_residual(&fake).unwrap() > 1e-2);
}

#[test]
fn sl2_intertwining() {
    let v: ConfFn<Complex64> = Arc::new(|t| Complex64::new(1.0, t) / (1.0 + t * t));
    let f = MotherWavelet::f_plus().eval;
    let g = [[1.1, 0.3], [0.4, (1.0 + 0.3 * 0.4) / 1.1]];
    for (x, y) in [(0.0, 1.0), (0.5, 0.7), (-1.0, 2.0)] {
        let h = sl2_section(x, y);
        let lhs = sl2_wavelet(&sl2_rep(g, v.clone()), &f, h, 20000);
        let rhs = sl2_wavelet(&v, &f, sl2_mul(sl2_inverse(g), h), 20000);
        assert!((lhs - rhs).norm() < 1e-6);
    }
}

#[test]
fn heisenberg_kennard_gaussian_saturates() {
    for (hbar, c) in [(1.0f64, 1.0f64), (0.5, 3.0), (2.0, 0.25)] {
        let p = pp(hbar);
        let dom = LineDomain::Truncated(LineQuadrature { l: 12.0 / c.sqrt(), n: 4000 });
        let (lhs, rhs) = uncertainty_check(&coordinate_op(), &momentum_op(p), &gauss(2.0 * c, 0.0), dom).unwrap();
        assert!((rhs - hbar / 2.0).abs() < 1e-6);
        assert!((lhs - rhs).abs() < 1e-6, "{lhs} {rhs}");
        let dm = dispersion(&coordinate_op(), &gauss(2.0 * c, 0.0), dom).unwrap();
        assert!((dm - 1.0 / (4.0 * c)).abs() < 1e-8);
    }
    let p = pp(1.0);
    let dom = LineDomain::Truncated(LineQuadrature { l: 12.0, n: 4000 });
    let perturbed: ConfFn<Complex64> = Arc::new(|q| Complex64::new((-q * q).exp() * (1.0 + 0.5 * q * q), 0.0));
    let (lhs, rhs) = uncertainty_check(&coordinate_op(), &momentum_op(p), &perturbed, dom).unwrap();
    assert!(lhs > rhs * (1.0 + 1e-3));
    assert!(matches!(
        dispersion(&coordinate_op(), &(Arc::new(|_| Complex64::new(0.0, 0.0)) as ConfFn<Complex64>), dom),
        Err(CovariantError::ZeroNorm)
    ));
}

#[test]
fn sl2_line_f_plus_is_minimal() {
    let fp = MotherWavelet::f_plus().eval;
    let (prod, bound) = sl2_line_uncertainty(&fp, 20000).unwrap();
    assert!((prod - 0.5).abs() < 1e-5, "{prod}");
    assert!((bound - 0.5).abs() < 1e-5, "{bound}");
    let [(_, a), (_, b), (_, z)] = sl2_line_ops();
    let pts = linspace(-4.0, 4.0, 17);
    assert!(eigen_residual(&z, &fp, Complex64::new(0.0, -1.0), &pts) < 1e-6);
    let lowering = b.add(&a.scale(Complex64::new(0.0, -1.0)));
    assert!(eigen_residual(&lowering, &fp, Complex64::new(0.0, 0.0), &pts) < 1e-6);
    let generic: ConfFn<Complex64> = Arc::new(|t| 1.0 / Complex64::new(t - 0.5, 2.0) + 0.3 / Complex64::new(t, 1.0).powi(2));
    let (prod, bound) = sl2_line_uncertainty(&generic, 20000).unwrap();
    assert!(prod > bound * (1.0 + 1e-3));
}

#[test]
fn reconstruction_recovers_the_state() {
    let p = pp(1.0);
    let phi = MotherWavelet::gaussian(C);
    let states: [ConfFn<Complex64>; 3] = [
        gauss(2.0, 0.5),
        Arc::new(|q| Complex64::new(q, 0.0) * (-q * q).exp()),
        phi.eval.clone(),
    ];
    for v in states {
        let err = reconstruction_check(p, &StateEval::Config(v), &phi, &phi, ReconstructionGrid::default()).unwrap();
        assert!(err < 1e-3, "{err}");
    }
}

#[test]
fn equivalence_of_minimality_and_annihilation() {
    let p = pp(1.0);
    let v = StateEval::Config(gauss(1.0, 0.3));
    let good = uncertainty_analyticity_equivalence(p, C, &MotherWavelet::gaussian(C), &v, 1.0, 64).unwrap();
    assert!(good.equality_gap.abs() < 1e-6 && good.annihilation_residual < 1e-4);
    assert!((good.r - 1.0 / (2.0 * C)).abs() < 1e-15);
    let bad = uncertainty_analyticity_equivalence(p, C, &MotherWavelet::perturbed_gaussian(C, 8.0), &v, 1.0, 64).unwrap();
    assert!(bad.equality_gap > 1e-2 && bad.annihilation_residual > 1e-2, "{bad:?}");
}

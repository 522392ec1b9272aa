use std::f64::consts::PI;
use std::sync::Arc;

use hypermech::heisenberg::{h_mul, reduced_commutator, reduced_composition, HElem, KernelGrid};
use hypermech::hypercomplex::{Double, Dual, DualComplex, Scalar};
use hypermech::ladder::Basis;
use hypermech::numerics::{linspace, simpson};
use hypermech::reps::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn conf_gauss() -> ConfFn<Complex64> {
    Arc::new(|q| c(1.0 + 0.3 * q, -0.2 * q * q) * (-(q - 0.4) * (q - 0.4)).exp())
}

fn phase_gauss() -> PhaseFn<Complex64> {
    Arc::new(|q, p| c(1.0 + 0.5 * q * p, 0.3 * p - 0.1 * q) * (-(q * q + 0.7 * p * p) / 2.0).exp())
}

fn double_gauss() -> PhaseFn<Double> {
    Arc::new(|q, p| Double::new(1.0 + 0.2 * q, 0.4 * p - 0.3 * q * p) * (-(q * q + p * p) / 2.0).exp())
}

fn dual_state() -> DualState {
    // z = (1 + q p / 2) e^{-(q^2 + p^2)/2}, w = (q - p) e^{-q^2}
    Arc::new(|q, p| {
        let g = (-(q * q + p * p) / 2.0).exp();
        let z = (1.0 + 0.5 * q * p) * g;
        let zq = (0.5 * p - q * (1.0 + 0.5 * q * p)) * g;
        let zp = (0.5 * q - p * (1.0 + 0.5 * q * p)) * g;
        DualJet {
            val: DualComplex::new(c(z, 0.3 * z), c((q - p) * (-q * q).exp(), 0.0)),
            zq: c(zq, 0.3 * zq),
            zp: c(zp, 0.3 * zp),
        }
    })
}

fn elem() -> impl Strategy<Value = HElem> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(s, x, y)| HElem::new(s, x, y))
}

fn pp() -> PlanckParams {
    PlanckParams::new(0.37).unwrap()
}

const PTS: [(f64, f64); 5] = [(0.0, 0.0), (0.3, -0.7), (-1.1, 0.4), (0.8, 0.9), (-0.5, -1.3)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schrodinger_homomorphism(g1 in elem(), g2 in elem()) {
        let f = conf_gauss();
        let lhs = schrodinger_rep(pp(), g1, schrodinger_rep(pp(), g2, f.clone()));
        let rhs = schrodinger_rep(pp(), h_mul(&g1, &g2), f);
        for (q, _) in PTS {
            prop_assert!((lhs(q) - rhs(q)).norm() < 1e-10);
        }
    }

    #[test]
    fn fsb_homomorphism(g1 in elem(), g2 in elem()) {
        let f = phase_gauss();
        let lhs = fsb_rep(pp(), g1, fsb_rep(pp(), g2, f.clone()));
        let rhs = fsb_rep(pp(), h_mul(&g1, &g2), f);
        for (q, p) in PTS {
            prop_assert!((lhs(q, p) - rhs(q, p)).norm() < 1e-9);
        }
    }

    #[test]
    fn double_homomorphism(g1 in elem(), g2 in elem()) {
        let f = double_gauss();
        let lhs = double_rep(pp(), g1, double_rep(pp(), g2, f.clone()));
        let rhs = double_rep(pp(), h_mul(&g1, &g2), f);
        for (q, p) in PTS {
            let d = lhs(q, p) - rhs(q, p);
            prop_assert!(d.size() < 1e-9 * (1.0 + rhs(q, p).size()));
        }
    }

    #[test]
    fn dual_homomorphism(g1 in elem(), g2 in elem()) {
        let f = dual_state();
        let lhs = dual_rep(pp(), g1, dual_rep(pp(), g2, f.clone()));
        let rhs = dual_rep(pp(), h_mul(&g1, &g2), f);
        for (q, p) in PTS {
            let (a, b) = (lhs(q, p), rhs(q, p));
            prop_assert!((a.val - b.val).size() < 1e-12);
            prop_assert!((a.zq - b.zq).norm() < 1e-12);
            prop_assert!((a.zp - b.zp).norm() < 1e-12);
        }
    }

    #[test]
    fn commutative_keeps_modulus(g in elem(), q in -2.0..2.0f64, p in -2.0..2.0f64) {
        let f = phase_gauss();
        let out = commutative_rep(g, f.clone());
        prop_assert!((out(q, p).norm() - f(q, p).norm()).abs() < 1e-14);
    }
}

#[test]
fn identity_acts_trivially() {
    let e = HElem::IDENTITY;
    let (f, g, d, k) = (conf_gauss(), phase_gauss(), double_gauss(), dual_state());
    let (f1, g1, d1, k1) = (
        schrodinger_rep(pp(), e, f.clone()),
        fsb_rep(pp(), e, g.clone()),
        double_rep(pp(), e, d.clone()),
        dual_rep(pp(), e, k.clone()),
    );
    for (q, p) in PTS {
        assert_eq!(f1(q), f(q));
        assert_eq!(g1(q, p), g(q, p));
        assert_eq!(d1(q, p), d(q, p));
        assert_eq!(k1(q, p), k(q, p));
    }
}

#[test]
fn schrodinger_centre_is_a_phase() {
    let s = 0.81;
    let f = conf_gauss();
    let out = schrodinger_rep(pp(), HElem::new(s, 0.0, 0.0), f.clone());
    for q in linspace(-2.0, 2.0, 9) {
        let want = Complex64::from_polar(1.0, 2.0 * PI * pp().hbar * s) * f(q);
        assert!((out(q) - want).norm() < 1e-14);
    }
}

#[test]
fn schrodinger_is_unitary() {
    let f = conf_gauss();
    let norm = |g: &ConfFn<Complex64>| simpson(|q| g(q).norm_sqr(), -12.0, 12.0, 4000).sqrt();
    let n0 = norm(&f);
    for g in [HElem::new(0.3, 1.2, -0.8), HElem::new(-2.0, -0.4, 2.5)] {
        let n1 = norm(&schrodinger_rep(pp(), g, f.clone()));
        assert!((n1 - n0).abs() / n0 < 1e-6);
    }
}

#[test]
fn dual_keeps_support() {
    // z and w vanish for q < 0
    let f: DualState = Arc::new(|q, p| {
        if q < 0.0 {
            return DualJet::default();
        }
        let z = q * q * (-q - p * p).exp();
        DualJet {
            val: DualComplex::new(c(z, 0.0), c(q * z, 0.0)),
            zq: c((2.0 * q - q * q) * (-q - p * p).exp(), 0.0),
            zp: c(-2.0 * p * z, 0.0),
        }
    });
    let g = dual_rep(pp(), HElem::new(0.4, 1.3, -2.1), f);
    for q in linspace(-3.0, -0.01, 30) {
        for p in linspace(-2.0, 2.0, 9) {
            assert_eq!(g(q, p).val, DualComplex::default());
        }
    }
    assert!(g(0.5, 0.2).val.size() > 0.0);
}

#[test]
fn act_rejects_wrong_algebra() {
    let err = act(Variant::Fsb, pp(), HElem::IDENTITY, &StateEval::Config(conf_gauss()));
    assert!(matches!(err, Err(RepError::ValueAlgebraMismatch { .. })));
    let err = act(Variant::Dual, pp(), HElem::IDENTITY, &StateEval::Phase(phase_gauss()));
    assert!(matches!(err, Err(RepError::ValueAlgebraMismatch { .. })));
    assert!(act(Variant::Double, pp(), HElem::IDENTITY, &StateEval::Double(double_gauss())).is_ok());
    assert!(matches!(derived_ops(Variant::Commutative, pp()), Err(RepError::NoDerivedForm(_))));
}

#[test]
fn derived_operators_match_group_action() {
    // d/dt rho(exp t e) f at t = 0, by central differences, against the
    // symbolic operators
    let pp = pp();
    let h = 1e-5;
    let sch = schrodinger_ops(pp);
    let tag = GaussPoly::monomial(0, 0, 1.0, 0.0, c(1.0, 0.0));
    let ft: ConfFn<Complex64> = Arc::new(move |q| tag.eval(q, 0.0));
    for (b, g) in [
        (Basis::S, HElem::new(h, 0.0, 0.0)),
        (Basis::X, HElem::new(0.0, h, 0.0)),
        (Basis::Y, HElem::new(0.0, 0.0, h)),
    ] {
        let gm = g.inverse();
        let (fp, fm) = (schrodinger_rep(pp, g, ft.clone()), schrodinger_rep(pp, gm, ft.clone()));
        for q in [-0.7, 0.2, 1.1] {
            let num = (fp(q) - fm(q)) / (2.0 * h);
            let want = sch.get(b).apply_fd(&|x, _| ft(x), q, 0.0).unwrap();
            assert!((num - want).norm() < 1e-6 * (1.0 + want.norm()), "{b}");
        }
    }

    let fsb = fsb_ops(pp);
    let g = phase_gauss();
    for (b, e) in [
        (Basis::S, HElem::new(h, 0.0, 0.0)),
        (Basis::X, HElem::new(0.0, h, 0.0)),
        (Basis::Y, HElem::new(0.0, 0.0, h)),
    ] {
        let (fp, fm) = (fsb_rep(pp, e, g.clone()), fsb_rep(pp, e.inverse(), g.clone()));
        for (q, p) in PTS {
            let num = (fp(q, p) - fm(q, p)) / (2.0 * h);
            let want = fsb.get(b).apply_fd(&|x, y| g(x, y), q, p).unwrap();
            assert!((num - want).norm() < 1e-6 * (1.0 + want.norm()), "{b}");
        }
    }

    // one-parameter groups of the configuration-space double model
    let dbl = double_ops(pp);
    let d: ConfFn<Double> = Arc::new(|q| Double::new((-q * q).exp(), q * (-q * q).exp()));
    for b in [Basis::S, Basis::X, Basis::Y] {
        let op = dbl.get(b);
        for q in [-0.7, 0.2, 1.1] {
            let flow = |t: f64| -> Double {
                match b {
                    Basis::S => Double::exp_h(pp.h * t) * d(q),
                    Basis::X => Double::exp_h(q * t) * d(q),
                    _ => d(q - pp.h * t),
                }
            };
            let num = (flow(h) - flow(-h)).scale(0.5 / h);
            let want = op.apply_fd(&|x, _| d(x), q, 0.0).unwrap();
            assert!((num - want).size() < 1e-6 * (1.0 + want.size()), "{b}");
        }
    }

    let dual = dual_ops(pp);
    let k = dual_state();
    for (b, e) in [
        (Basis::S, HElem::new(h, 0.0, 0.0)),
        (Basis::X, HElem::new(0.0, h, 0.0)),
        (Basis::Y, HElem::new(0.0, 0.0, h)),
    ] {
        let (fp, fm) = (dual_rep(pp, e, k.clone()), dual_rep(pp, e.inverse(), k.clone()));
        for (q, p) in PTS {
            let num = (fp(q, p).val - fm(q, p).val).scale(0.5 / h);
            let want = dual.get(b).apply_fd(&|x, y| k(x, y).val, q, p).unwrap();
            assert!((num - want).size() < 1e-6 * (1.0 + want.size()), "{b}");
        }
    }
}

#[test]
fn realizations() {
    let pp = pp();
    assert!(find_realization(&schrodinger_ops(pp)).unwrap().is_identity());
    assert!(find_realization(&double_ops(pp)).unwrap().is_identity());
    let f = find_realization(&fsb_ops(pp)).unwrap();
    let d = find_realization(&dual_ops(pp)).unwrap();
    assert_eq!(f, d);
    assert!(!f.is_identity());
}

#[test]
fn commutator_tables_hold() {
    for hbar in [0.37, 0.74] {
        let pp = PlanckParams::new(hbar).unwrap();
        for v in Variant::DERIVED {
            let rep = commutator_report(v, pp).unwrap();
            assert!(rep.realization.is_some(), "{v}");
            assert_eq!(rep.relations.len(), 15);
            for r in &rep.relations {
                assert!(r.max_residual < 1e-6, "{v} {} {}", r.relation, r.max_residual);
                assert!(r.symbolic_residual < 1e-12, "{v} {} {}", r.relation, r.symbolic_residual);
            }
        }
    }
}

#[test]
fn heisenberg_commutators() {
    let pp = pp();
    let s = schrodinger_ops(pp);
    assert_eq!(
        s.get(Basis::X).commutator(s.get(Basis::Y)),
        OperatorExpr::constant(c(0.0, 2.0 * PI * pp.hbar))
    );
    let d = dual_ops(pp);
    assert_eq!(
        d.get(Basis::X).commutator(d.get(Basis::Y)),
        OperatorExpr::constant(DualComplex::p_part(c(pp.h, 0.0)))
    );
    // exactly p h on the closed-form test set
    let x = d.get(Basis::X);
    let y = d.get(Basis::Y);
    for f in phase_test_set::<DualComplex>() {
        let lhs = x.apply_exact(&y.apply_exact(&f)).sub(&y.apply_exact(&x.apply_exact(&f)));
        let rhs = f.scale(DualComplex::p_part(c(pp.h, 0.0)));
        assert_eq!(lhs.coeffs.keys().collect::<Vec<_>>(), rhs.coeffs.keys().collect::<Vec<_>>());
        for (k, v) in &lhs.coeffs {
            assert_eq!(v.z, c(0.0, 0.0));
            assert!((v.w - rhs.coeffs[k].w).norm() < 1e-14 * pp.h);
        }
    }
}

#[test]
fn dual_nilpotency() {
    let d = dual_ops(pp());
    let pblock = |b: Basis| -> OperatorExpr<DualComplex> {
        let mut out = OperatorExpr::zero();
        for (m, v) in d.get(b).terms() {
            if v.z == c(0.0, 0.0) {
                out = out.add(&OperatorExpr::term(*m, *v));
            }
        }
        out
    };
    let blocks = [pblock(Basis::X), pblock(Basis::Y), pblock(Basis::S)];
    for u in &blocks {
        assert!(!u.is_zero());
        for v in &blocks {
            assert!(u.compose(v).is_zero());
        }
    }
}

#[test]
fn quadratic_relations() {
    for hbar in [0.37, 0.74] {
        let pp = PlanckParams::new(hbar).unwrap();
        for v in [Variant::Schrodinger, Variant::Double] {
            let rows = quadratic_relations_check(v, pp).unwrap();
            assert_eq!(rows.len(), 4);
            for r in &rows {
                assert!(r.max_residual < 1e-5, "{v} {} {}", r.relation, r.max_residual);
            }
        }
    }
    assert!(quadratic_relations_check(Variant::Fsb, pp()).is_err());
}

#[test]
fn quoted_quadratic_coefficients() {
    // sign-flipped A (and double B) fail, Z agrees
    let rows = quadratic_relations_check(Variant::Schrodinger, pp()).unwrap();
    for r in &rows {
        if r.relation.starts_with('A') {
            assert!(r.quoted_residual > 0.5, "{}", r.relation);
        } else {
            assert!(r.quoted_residual < 1e-5, "{}", r.relation);
        }
    }
    let rows = quadratic_relations_check(Variant::Double, pp()).unwrap();
    for r in &rows {
        if r.relation.starts_with('Z') {
            assert!(r.quoted_residual < 1e-5);
        } else {
            assert!(r.quoted_residual > 0.5, "{}", r.relation);
        }
    }
}

#[test]
fn oscillator_types() {
    let pp = pp();
    assert_eq!(quadratic_type_complex(schrodinger_ops(pp).get(Basis::B)), QuadraticType::Repulsive);
    assert_eq!(quadratic_type_double(double_ops(pp).get(Basis::B)), QuadraticType::Harmonic);
    assert_eq!(quadratic_type_complex(schrodinger_ops(pp).get(Basis::Z)), QuadraticType::Harmonic);
}

#[test]
fn eigenvector_facts() {
    let r = eigen_report(pp()).unwrap();
    assert!(r.vacuum_eigen < 1e-12, "{r:?}");
    assert!(r.vacuum_annihilated < 1e-12, "{r:?}");
    assert!(r.ladder_commutators < 1e-12, "{r:?}");
    assert!(r.parabolic_eigen < 1e-6, "{r:?}");
    assert_eq!(r.parabolic_hamiltonian_defect, 0.0);
    assert!(r.parabolic_ladder < 1e-12, "{r:?}");
}

#[test]
fn fd_and_exact_application_agree() {
    let o = schrodinger_ops(pp());
    let f = GaussPoly::monomial(2, 0, 0.5, 0.0, c(1.0, 0.0));
    for b in Basis::ALL {
        let exact = o.get(b).apply_exact(&f);
        for q in linspace(-2.0, 2.0, 9) {
            let fd = o.get(b).apply_fd(&|x, p| f.eval(x, p), q, 0.0).unwrap();
            assert!((fd - exact.eval(q, 0.0)).norm() < 1e-7);
        }
    }
    let fourth = OperatorExpr::term(Mono::new(0, 0, 4, 0), c(1.0, 0.0));
    assert_eq!(fourth.apply_fd(&|x, p| f.eval(x, p), 0.0, 0.0), Err(RepError::OrderTooHigh(4)));
}

fn gauss_kernel(pp: PlanckParams, x0: f64, y0: f64, w: f64) -> KernelGrid<Complex64> {
    KernelGrid::from_fn(3.0, 32, pp.h, move |x, y| {
        c(1.0, 0.2 * x) * (-((x - x0).powi(2) + (y - y0).powi(2)) / w).exp()
    })
    .unwrap()
}

#[test]
fn weyl_delta_and_linearity() {
    let pp = pp();
    let f = phase_gauss();
    let d = KernelGrid::<Complex64>::delta(3.0, 32, pp.h).unwrap();
    let out = weyl_quantize(pp, &d, f.clone()).unwrap();
    for (q, p) in PTS {
        assert!((out(q, p) - f(q, p)).norm() < 1e-12);
    }
    // delta at a node (x0, y0)
    let mut k = KernelGrid::<Complex64>::from_fn(3.0, 32, pp.h, |_, _| c(0.0, 0.0)).unwrap();
    let (i, j) = (20, 9);
    let dx = k.step();
    k.values[i * 32 + j] = c(1.0 / (dx * dx), 0.0);
    let out = weyl_quantize(pp, &k, f.clone()).unwrap();
    let g = fsb_rep(pp, HElem::new(0.0, k.node(i), k.node(j)), f.clone());
    for (q, p) in PTS {
        assert!((out(q, p) - g(q, p)).norm() < 1e-12);
    }
    let (k1, k2) = (gauss_kernel(pp, 0.0, 0.0, 1.0), gauss_kernel(pp, 0.5, -0.3, 0.5));
    let sum = weyl_quantize(pp, &k1.add(&k2).unwrap().scale(2.0), f.clone()).unwrap();
    let (a, b) = (weyl_quantize(pp, &k1, f.clone()).unwrap(), weyl_quantize(pp, &k2, f.clone()).unwrap());
    for (q, p) in PTS {
        assert!((sum(q, p) - (a(q, p) + b(q, p)) * 2.0).norm() < 1e-12 * (1.0 + sum(q, p).norm()));
    }
    let wrong = KernelGrid::<Complex64>::delta(3.0, 32, 2.0 * pp.h).unwrap();
    assert!(matches!(weyl_quantize(pp, &wrong, f), Err(RepError::GridMismatch(_))));
}

#[test]
fn weyl_composition_and_commutator_two_paths() {
    let pp = PlanckParams::new(1.0).unwrap();
    let f = phase_gauss();
    let (k1, k2) = (gauss_kernel(pp, 0.0, 0.0, 0.6), gauss_kernel(pp, 0.8, -0.7, 0.4));
    let q1 = weyl_quantize(pp, &k1, f.clone()).unwrap();
    let q2 = weyl_quantize(pp, &k2, f.clone()).unwrap();
    let q12 = weyl_quantize(pp, &k1, q2.clone()).unwrap();
    let q21 = weyl_quantize(pp, &k2, q1.clone()).unwrap();
    let comp = weyl_quantize(pp, &reduced_composition(&k1, &k2).unwrap(), f.clone()).unwrap();
    let comm = weyl_quantize(pp, &reduced_commutator(&k1, &k2).unwrap(), f.clone()).unwrap();
    let pts = [(0.0, 0.0), (0.4, -0.6), (-0.9, 0.3), (0.7, 0.5)];
    let vals: Vec<_> = pts.iter().map(|(q, p)| (q12(*q, *p), q21(*q, *p), comp(*q, *p), comm(*q, *p))).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.0.norm()).max(v.1.norm()));
    let (mut e_comp, mut e_comm, mut size_comm) = (0.0f64, 0.0f64, 0.0f64);
    for (a, b, k12, kc) in vals {
        e_comp = e_comp.max((a - k12).norm());
        e_comm = e_comm.max((a - b - kc).norm());
        size_comm = size_comm.max((a - b).norm());
    }
    assert!(size_comm > 0.1 * scale, "{size_comm} {scale}");
    assert!(e_comp < 1e-3 * scale, "{e_comp} {scale}");
    assert!(e_comm < 1e-3 * scale, "{e_comm} {scale}");
}

#[test]
fn classical_operator_shape() {
    let pp = pp();
    let hq = PhasePoly::new(&[((1, 0), 1.0)]);
    let op = classical_operator(&hq, pp);
    assert_eq!(op.coeff(Mono::new(1, 0, 0, 0)), Dual::new(1.0, 0.0));
    assert_eq!(op.coeff(Mono::new(0, 0, 0, 1)), Dual::new(0.0, -pp.h / 2.0));
    assert_eq!(op.order(), 1);
    let k = PhasePoly::new(&[((0, 0), 3.0)]);
    let any = PhasePoly::new(&[((2, 1), 1.0), ((0, 3), -2.0)]);
    assert!(classical_operator(&k, pp).commutator(&classical_operator(&any, pp)).is_zero());
}

#[test]
fn classical_commutator_is_poisson() {
    let pp = pp();
    let polys = [
        PhasePoly::new(&[((2, 0), 0.5), ((0, 2), 0.5)]),
        PhasePoly::new(&[((1, 0), 1.0)]),
        PhasePoly::new(&[((0, 1), 1.0)]),
        PhasePoly::new(&[((4, 0), 0.25), ((0, 2), 0.5), ((1, 1), -0.3)]),
        PhasePoly::new(&[((3, 1), 1.0), ((0, 3), 2.0)]),
    ];
    let pts = sample_points(false);
    for h1 in &polys {
        for h2 in &polys {
            let over = classical_commutator_over_ph(h1, h2, pp).expect("commutator lies in the p block");
            let bracket = PhasePoly::hamilton_bracket(h1, h2);
            // compare on the test set as multiplication by the bracket
            for f in phase_test_set::<f64>() {
                for (q, p) in &pts {
                    let lhs = over.apply_fd(&|x, y| f.eval(x, y), *q, *p).unwrap();
                    let rhs = bracket.eval(*q, *p) * f.eval(*q, *p);
                    assert!((lhs - rhs).abs() < 1e-8 * (1.0 + rhs.abs()), "{lhs} {rhs}");
                }
            }
            // and symbolically it is a multiplication operator
            assert!(over.order() == 0);
        }
    }
}

#[test]
fn hyperbolic_fourier_gaussian() {
    let qs = [0.0, 1.0, -1.0];
    let out = hyperbolic_fourier(&|x: f64| (-x * x / 2.0).exp(), &qs, FourierDomain::default()).unwrap();
    for (q, v) in qs.iter().zip(out) {
        let want = (2.0 * PI).sqrt() * (q * q / 2.0).exp();
        assert!((v.re - want).abs() / want < 1e-6);
        assert!(v.hy.abs() < 1e-12);
    }
}

#[test]
fn hyperbolic_fourier_parity_and_divergence() {
    let odd = |x: f64| x * (-x * x).exp();
    let out = hyperbolic_fourier(&odd, &[0.5, 1.5], FourierDomain::default()).unwrap();
    for v in out {
        assert!(v.re.abs() < 1e-12);
        assert!(v.hy.abs() > 1e-3);
    }
    // int x e^{-x^2} sinh(qx) dx = (q sqrt(pi) / 2) e^{q^2/4}
    let v = hyperbolic_fourier(&odd, &[1.0], FourierDomain::default()).unwrap()[0];
    assert!((v.hy + 0.5 * PI.sqrt() * 0.25f64.exp()).abs() < 1e-8);
    let err = hyperbolic_fourier(&|x: f64| (x * x / 2.0).exp(), &[0.0], FourierDomain::default());
    assert!(matches!(err, Err(RepError::DivergentIntegrand { .. })));
    // decays, but not against e^{|q| x} with |q| large
    let err = hyperbolic_fourier(&|x: f64| (-x.abs()).exp(), &[2.0], FourierDomain::default());
    assert!(matches!(err, Err(RepError::DivergentIntegrand { .. })));
}

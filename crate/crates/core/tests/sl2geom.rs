use std::f64::consts::PI;

use hypermech::hypercomplex::{AlgebraKind, Hyper};
use hypermech::sl2geom::*;
use num_complex::Complex64;
use AlgebraKind::*;

fn j() -> Mat2 {
    Mat2::new(0.0, -1.0, 1.0, 0.0).unwrap()
}

#[test]
fn subgroup_closed_forms() {
    let k = subgroup_element(SubgroupId::K, PI / 2.0);
    assert!(k.max_abs_diff(&Mat2::new(0.0, 1.0, -1.0, 0.0).unwrap()) < 1e-15);
    assert_eq!(subgroup_element(SubgroupId::A, 0.0), Mat2::IDENTITY);
    for id in SubgroupId::ALL {
        let g = subgroup_element(id, 0.7);
        assert!((g.det() - 1.0).abs() < 1e-14);
        let prod = subgroup_element(id, 0.3).mul(&subgroup_element(id, 0.4));
        assert!(prod.max_abs_diff(&g) < 1e-14, "{id}");
    }
}

#[test]
fn nprime_is_conjugate_of_n() {
    // J N(-nu) J^{-1} with J = [[0,-1],[1,0]].
    for nu in [-1.3, 0.2, 2.5] {
        let conj = j()
            .mul(&subgroup_element(SubgroupId::N, -nu))
            .mul(&j().inverse());
        assert!(conj.max_abs_diff(&subgroup_element(SubgroupId::Nprime, nu)) < 1e-15);
    }
}

#[test]
fn rejects_non_unimodular() {
    assert!(matches!(
        Mat2::new(2.0, 0.0, 0.0, 1.0),
        Err(GeomError::NotUnimodular(_))
    ));
}

#[test]
fn a_dilates_n_shifts() {
    let w0 = Hyper::new(0.5, 1.5, Parabolic);
    let ts = [-1.0, 0.0, 0.7];
    for (t, w) in ts.iter().zip(orbit(SubgroupId::A, &w0, &ts).unwrap()) {
        assert!(w.dist(&w0.scale((-t).exp())) < 1e-14);
    }
    for (t, w) in ts.iter().zip(orbit(SubgroupId::N, &w0, &ts).unwrap()) {
        assert!(w.dist(&Hyper::new(w0.u + t, w0.v, Parabolic)) < 1e-14);
    }
}

#[test]
fn isotropy_points() {
    let i = Hyper::unit(Elliptic);
    for t in [-3.0, -0.5, 1.1, PI] {
        let w = moebius(&subgroup_element(SubgroupId::K, t), &i).unwrap();
        assert!(w.dist(&i) < 1e-14);
    }
    let pv = Hyper::new(0.0, 2.3, Parabolic);
    let w = moebius(&subgroup_element(SubgroupId::Nprime, 1.7), &pv).unwrap();
    assert!(w.dist(&pv) < 1e-15);
    let h = Hyper::unit(Hyperbolic);
    let w = moebius(&subgroup_element(SubgroupId::Aprime, 0.9), &h).unwrap();
    assert!(w.dist(&h) < 1e-14);
}

#[test]
fn zero_divisor_denominator() {
    // c w + d = 1 + h is a zero divisor.
    let g = Mat2::new(1.0, 0.0, 1.0, 1.0).unwrap();
    assert!(matches!(
        moebius(&g, &Hyper::unit(Hyperbolic)),
        Err(GeomError::NonInvertibleDenominator(_))
    ));
    let err = orbit(SubgroupId::Nprime, &Hyper::new(-1.0, 1.0, Parabolic), &[0.0, 1.0]);
    assert_eq!(err.unwrap_err().t, 1.0);
}

#[test]
fn k_orbits_are_conics() {
    for kind in AlgebraKind::ALL {
        let w0 = Hyper::new(0.3, 0.6, kind);
        let inv0 = k_orbit_invariant(&w0);
        let ts: Vec<f64> = (0..20).map(|j| -0.9 + 0.09 * j as f64).collect();
        for w in orbit(SubgroupId::K, &w0, &ts).unwrap() {
            assert!((k_orbit_invariant(&w) - inv0).abs() < 1e-10, "{kind}");
        }
    }
}

#[test]
fn iwasawa_identity_and_k() {
    let (a, n, k) = iwasawa(&Mat2::IDENTITY);
    assert!(a.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
    assert!(n.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
    assert!(k.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
    let g = subgroup_element(SubgroupId::K, 2.0);
    let (a, n, k) = iwasawa(&g);
    assert!(a.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
    assert!(n.max_abs_diff(&Mat2::IDENTITY) < 1e-15);
    assert!(k.max_abs_diff(&g) < 1e-15);
}

#[test]
fn section_and_r_map() {
    assert_eq!(section_s(0.0, 1.0).unwrap(), Mat2::IDENTITY);
    assert!(section_s(0.0, 0.0).is_err());
    let g = Mat2::new(2.0, 1.0, 1.0, 1.0).unwrap();
    let r = map_r(&g, SubgroupId::K).unwrap();
    let s = 0.5f64.sqrt();
    assert!(r.max_abs_diff(&Mat2::new(s, -s, s, s).unwrap()) < 1e-15);
    let g = Mat2::new(1.0, 1.0, 0.5, 1.5).unwrap();
    for id in [SubgroupId::K, SubgroupId::Nprime, SubgroupId::Aprime] {
        let (u, v) = project(&g, id).unwrap();
        let back = section_s(u, v).unwrap().mul(&map_r(&g, id).unwrap());
        assert!(back.max_abs_diff(&g) < 1e-12, "{id}");
    }
}

#[test]
fn line_rep_is_unitary_sample() {
    let g = Mat2::new(1.0, 0.5, 0.0, 1.0).unwrap();
    let f = |x: f64| Complex64::new(1.0, 0.0) / Complex64::new(x, 1.0);
    let rf = line_rep_k1(&g, f);
    assert!((rf(0.5) - f(0.0)).norm() < 1e-15);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn mat() -> impl Strategy<Value = Mat2> {
        (0.3..2.0f64, -1.5..1.5f64, -1.5..1.5f64, any::<bool>()).prop_map(|(a, b, c, neg)| {
            let a = if neg { -a } else { a };
            Mat2::new(a, b, c, (1.0 + b * c) / a).unwrap()
        })
    }

    fn point(k: AlgebraKind) -> impl Strategy<Value = Hyper> {
        (-2.0..2.0f64, 0.1..2.0f64).prop_map(move |(u, v)| Hyper::new(u, v, k))
    }

    fn kind() -> impl Strategy<Value = AlgebraKind> {
        prop_oneof![Just(AlgebraKind::Elliptic), Just(AlgebraKind::Parabolic), Just(AlgebraKind::Hyperbolic)]
    }

    proptest! {
        #[test]
        fn moebius_is_a_left_action(g1 in mat(), g2 in mat(), w in kind().prop_flat_map(point)) {
            if let (Ok(inner), Ok(direct)) = (moebius(&g2, &w), moebius(&g1.mul(&g2), &w)) {
                if let Ok(outer) = moebius(&g1, &inner) {
                    let scale = 1.0 + direct.u.abs() + direct.v.abs();
                    prop_assert!(outer.dist(&direct) < 1e-10 * scale * scale);
                }
            }
        }

        #[test]
        fn components_agree_with_quotient(g in mat(), w in kind().prop_flat_map(point)) {
            let sigma = w.sigma();
            match (moebius(&g, &w), moebius_components(&g, w.u, w.v, sigma)) {
                (Ok(q), Ok((u, v))) => {
                    let scale = 1.0 + q.u.abs() + q.v.abs();
                    prop_assert!((q.u - u).abs() < 1e-10 * scale && (q.v - v).abs() < 1e-10 * scale);
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
            }
        }

        #[test]
        fn iwasawa_reconstructs(g in mat()) {
            let (a, n, k) = iwasawa(&g);
            prop_assert!(a.mul(&n).mul(&k).max_abs_diff(&g) < 1e-10);
            prop_assert!(a.b.abs() < 1e-15 && a.c.abs() < 1e-15);
            prop_assert!(n.c.abs() < 1e-15 && (n.a - 1.0).abs() < 1e-15);
            prop_assert!((k.a * k.a + k.c * k.c - 1.0).abs() < 1e-12);
        }

        #[test]
        fn isotropy_subgroups(t in -3.0..3.0f64, v in 0.1..3.0f64) {
            let i = Hyper::unit(AlgebraKind::Elliptic);
            prop_assert!(moebius(&subgroup_element(SubgroupId::K, t), &i).unwrap().dist(&i) < 1e-10);
            let pv = Hyper::new(0.0, v, AlgebraKind::Parabolic);
            prop_assert!(moebius(&subgroup_element(SubgroupId::Nprime, t), &pv).unwrap().dist(&pv) < 1e-10);
            let h = Hyper::unit(AlgebraKind::Hyperbolic);
            prop_assert!(moebius(&subgroup_element(SubgroupId::Aprime, t), &h).unwrap().dist(&h) < 1e-10);
        }
    }
}

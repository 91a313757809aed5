//! Gauge group action and its irreducible representations.

use dualfield::cavity::{q_mode, q_ode_residual, Cavity};
use dualfield::constants::PhysicalConstants;
use dualfield::gauge::*;
use dualfield::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn seq() -> Vec<Complex64> {
    (0..7)
        .map(|i| Complex64::new(i as f64 - 3.0, 0.5 * i as f64))
        .collect()
}

#[test]
fn identity_and_sign_flip() {
    let u = seq();
    assert_eq!(gauge_transform(&u, &GaugeElement::IDENTITY).unwrap(), u);
    let flipped = gauge_transform(&u, &GaugeElement::new(0.0, -1.0).unwrap()).unwrap();
    assert!(flipped.iter().zip(&u).all(|(a, b)| *a == -b));
    assert!(gauge_transform(
        &u,
        &GaugeElement {
            alpha: 0.0,
            beta: 0.0
        }
    )
    .is_err());
}

#[test]
fn conjugate_transform_uses_negated_phase() {
    let u = seq();
    let g = GaugeElement::new(0.4, 1.5).unwrap();
    let a = gauge_transform_conjugate(&u, &g).unwrap();
    let conj: Vec<_> = u.iter().map(|z| z.conj()).collect();
    let b = gauge_transform(&conj, &g).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y.conj()).norm() < 1e-14);
    }
}

#[test]
fn transformed_mode_still_solves_its_equation() {
    let cav = Cavity::new(PhysicalConstants::UNIT, 1.0, 1.0)
        .unwrap()
        .with_mode(3, 1.0, Complex64::new(0.4, -0.2), Complex64::new(0.1, 0.3))
        .unwrap();
    let m = cav.modes[0];
    let g = GaugeElement::new(0.7, 2.3).unwrap();
    let f = g.factor();
    let tm = cav.make_mode(m.alpha, m.mass, m.c1 * f, m.c2 * f).unwrap();
    let ts: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
    for &t in &ts {
        assert!(q_ode_residual(t, &tm).norm() < 1e-10);
        assert!((q_mode(t, &tm) - q_mode(t, &m) * f).norm() < 1e-13);
    }
    // sampled residual scales by |beta|
    let dt = 1e-3;
    let u: Vec<Complex64> = (0..400).map(|i| q_mode(i as f64 * dt, &m)).collect();
    let r0 = mode_ode_residual(&u, dt, m.omega).unwrap();
    let r1 = mode_ode_residual(&gauge_transform(&u, &g).unwrap(), dt, m.omega).unwrap();
    assert!(r1 <= 2.3 * r0 * (1.0 + 1e-9));
    assert!(mode_ode_residual(&u[..2], dt, m.omega).is_err());
}

#[test]
fn irrep_examples() {
    for k in -3..=3 {
        assert_eq!(irrep_r(1.0, k).unwrap(), 1.0);
        assert_eq!(irrep_r(-1.7, k).unwrap(), -irrep_r(1.7, k).unwrap());
        for m in -2..=2 {
            assert_eq!(
                irrep_gamma(&GaugeElement::IDENTITY, IrrepLabel { m, k }).unwrap(),
                Complex64::new(1.0, 0.0)
            );
        }
    }
    assert_eq!(irrep_r(2.0, 1).unwrap(), 8.0);
    let g = GaugeElement::new(PI, 1.0).unwrap();
    let v = irrep_gamma(&g, IrrepLabel { m: 1, k: 0 }).unwrap();
    assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
}

fn element() -> impl Strategy<Value = GaugeElement> {
    (-7.0f64..7.0, prop_oneof![-3.0f64..-0.2, 0.2f64..3.0])
        .prop_map(|(a, b)| GaugeElement::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn action_is_a_group_action(g1 in element(), g2 in element()) {
        let u = seq();
        let two = gauge_transform(&gauge_transform(&u, &g1).unwrap(), &g2).unwrap();
        let one = gauge_transform(&u, &g1.compose(&g2)).unwrap();
        for (a, b) in two.iter().zip(&one) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
        let back = gauge_transform(&gauge_transform(&u, &g1).unwrap(), &g1.inverse()).unwrap();
        for (a, b) in back.iter().zip(&u) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn gamma_is_homomorphism(g1 in element(), g2 in element(), m in -3i32..=3, k in -2i32..=2) {
        let l = IrrepLabel { m, k };
        let lhs = irrep_gamma(&g1.compose(&g2), l).unwrap();
        let rhs = irrep_gamma(&g1, l).unwrap() * irrep_gamma(&g2, l).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn irrep_r_multiplicative(b in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], c in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], k in -3i32..=3) {
        let lhs = irrep_r(b * c, k).unwrap();
        let rhs = irrep_r(b, k).unwrap() * irrep_r(c, k).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }
}

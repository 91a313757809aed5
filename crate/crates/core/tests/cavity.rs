//! Cavity solutions: boundary values, closed-form identities, residual
//! convergence, energy and the time-reversal companion.

use dualfield::cavity::*;
use dualfield::constants::PhysicalConstants;
use dualfield::grid::{Grid, SampledField, UniformAxis};
use dualfield::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

const PC: PhysicalConstants = PhysicalConstants::UNIT;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cosine_cavity() -> Cavity {
    Cavity::new(PC, 1.0, 1.0)
        .unwrap()
        .with_mode(1, 1.0, c(0.5, 0.0), c(0.5, 0.0))
        .unwrap()
}

fn multi() -> Cavity {
    Cavity::new(PC, 1.0, 2.0)
        .unwrap()
        .with_real_mode(1, 1.0, 1.0, 0.2)
        .unwrap()
        .with_real_mode(2, 0.7, 0.4, -1.1)
        .unwrap()
        .with_real_mode(3, 1.3, 0.25, 2.0)
        .unwrap()
}

fn zt(nz: usize, nt: usize, t0: f64, t1: f64) -> Grid {
    Grid::zt(
        UniformAxis::linspace(0.0, 1.0, nz).unwrap(),
        UniformAxis::linspace(t0, t1, nt).unwrap(),
    )
}

#[test]
fn mode_derived_quantities() {
    let pc = PhysicalConstants::CODATA;
    let cav = Cavity::new(pc, 0.3, 0.02)
        .unwrap()
        .with_real_mode(4, 1.0, 1.0, 0.0)
        .unwrap();
    let m = cav.modes[0];
    assert_eq!(m.omega, pc.c * m.k);
    let a_e = (2.0 * m.omega * m.omega * m.mass / (cav.volume * pc.eps0)).sqrt();
    assert!((m.a_e - a_e).abs() <= 1e-14 * a_e);
    assert!(m.is_real());
    assert!(Cavity::new(pc, -1.0, 1.0).is_err());
    assert!(cav.make_mode(0, 1.0, c(1.0, 0.0), c(1.0, 0.0)).is_err());
}

#[test]
fn boundary_values_are_exact() {
    let cav = multi();
    for branch in [Branch::First, Branch::Second, Branch::SecondLiteral] {
        for i in 0..50 {
            let t = 0.037 * i as f64;
            assert_eq!(cav.field_e(0.0, t, branch).unwrap()[0], c(0.0, 0.0));
            assert_eq!(cav.field_e(1.0, t, branch).unwrap()[0], c(0.0, 0.0));
        }
    }
    assert!(cav.field_e(1.0001, 0.0, Branch::First).is_err());
    assert!(cav.field_h(-0.1, 0.0, Branch::First).is_err());
}

#[test]
fn closed_form_identities() {
    let cav = cosine_cavity();
    let m = &cav.modes[0];
    for i in 0..40 {
        let t = 0.113 * i as f64;
        let wt = m.omega * t;
        assert_eq!(q_ode_residual(t, m), c(0.0, 0.0));
        assert!((q_mode(t, m) - c(wt.cos(), 0.0)).norm() < 1e-15);
        assert!((q_prime(t, m) - c(wt.sin(), 0.0)).norm() < 1e-14);
        assert!((q_dprime(t, m) - c(1.0 - wt.cos(), 0.0)).norm() < 1e-14);
        assert!((q_dprime_harmonic(t, m) + q_mode(t, m)).norm() == 0.0);
        assert!((q_ddot(t, m) + q_mode(t, m) * m.omega * m.omega).norm() < 1e-12);
    }
}

#[test]
fn field_examples() {
    let cav = cosine_cavity();
    let m = cav.modes[0];
    let e = cav.field_e(0.5, 0.0, Branch::First).unwrap();
    assert!((e[0] - c(m.a_e, 0.0)).norm() < 1e-14);
    assert_eq!(
        cav.field_h(0.3, 0.0, Branch::First).unwrap()[1],
        c(0.0, 0.0)
    );
    // literal second branch: (1 - cos) profile, i.e. minus the first plus a static offset
    for t in [0.1, 0.7, 1.9] {
        for z in [0.2, 0.5, 0.8] {
            let e1 = cav.field_e(z, t, Branch::First).unwrap()[0];
            let e2 = cav.field_e(z, t, Branch::SecondLiteral).unwrap()[0];
            let offset = m.a_e * (PI * z).sin();
            assert!((e2 - (-e1 + offset)).norm() < 1e-13);
            assert!((cav.field_e(z, t, Branch::Second).unwrap()[0] + e1).norm() < 1e-14);
        }
        let h = cav.field_h(0.0, t, Branch::SecondLiteral).unwrap()[1];
        assert!((h - c(-m.a_h * (m.omega * t).sin(), 0.0)).norm() < 1e-13);
    }
}

fn ratio(cav: &Cavity, branch: Branch) -> (f64, f64) {
    // ht = hz / 2: with ht = hz / c the stencil errors cancel exactly
    let g = zt(33, 33, 0.0, 0.5);
    let (a1, a2) = cav.maxwell_residual(branch, &g).unwrap();
    let (b1, b2) = cav.maxwell_residual(branch, &g.refined()).unwrap();
    (a1 / b1, a2 / b2)
}

#[test]
fn residuals_converge_at_second_order() {
    let cav = multi();
    for branch in [Branch::First, Branch::Second] {
        let (r1, r2) = ratio(&cav, branch);
        assert!((3.5..=4.5).contains(&r1), "{branch:?} r1 ratio {r1}");
        assert!((3.5..=4.5).contains(&r2), "{branch:?} r2 ratio {r2}");
    }
}

#[test]
fn literal_second_branch_is_not_a_solution() {
    let cav = multi();
    let g = zt(33, 33, 0.0, 1.0);
    let (a1, a2) = cav.maxwell_residual(Branch::SecondLiteral, &g).unwrap();
    let (b1, b2) = cav
        .maxwell_residual(Branch::SecondLiteral, &g.refined())
        .unwrap();
    assert!(a1.max(a2) > 1.0 && b1.max(b2) > 1.0);
}

#[test]
fn zero_field_and_degenerate_grid() {
    let cav = Cavity::new(PC, 1.0, 1.0).unwrap();
    assert_eq!(
        cav.maxwell_residual(Branch::First, &zt(5, 5, 0.0, 1.0))
            .unwrap(),
        (0.0, 0.0)
    );
    assert!(cav
        .maxwell_residual(Branch::First, &zt(2, 5, 0.0, 1.0))
        .is_err());
    assert_eq!(cav.hamiltonian(0.3), 0.0);
}

#[test]
fn corrupted_magnetic_field_is_detected() {
    let cav = multi();
    let g = zt(65, 65, 0.0, 1.0);
    let f = cav.sample(Branch::First, &g).unwrap();
    let (_, clean) = maxwell_residual_sampled(&f, &PC).unwrap();
    let hy: Vec<Complex64> = f.channel("Hy").unwrap().iter().map(|z| z * 1.01).collect();
    let bad = SampledField::new(
        g.clone(),
        f.labels.clone(),
        vec![f.channel("Ex").unwrap().to_vec(), hy],
    )
    .unwrap();
    let (_, r2) = maxwell_residual_sampled(&bad, &PC).unwrap();
    assert!(r2 > 20.0 * clean, "{r2} vs {clean}");
    let (_, r2f) = maxwell_residual_sampled(
        &{
            let gf = g.refined();
            let f = cav.sample(Branch::First, &gf).unwrap();
            let hy = f.channel("Hy").unwrap().iter().map(|z| z * 1.01).collect();
            SampledField::new(
                gf,
                f.labels.clone(),
                vec![f.channel("Ex").unwrap().to_vec(), hy],
            )
            .unwrap()
        },
        &PC,
    )
    .unwrap();
    assert!(r2f > 0.5 * r2);
}

#[test]
fn hamiltonian_reference_and_constancy() {
    let cav = Cavity::new(PC, 1.0, 1.0)
        .unwrap()
        .with_real_mode(2, 1.0, 1.0, 0.4)
        .unwrap();
    assert!((cav.modes[0].omega - 2.0 * PI).abs() < 1e-15);
    let h0 = cav.hamiltonian(0.0);
    assert!((h0 - 2.0 * PI * PI).abs() < 1e-12 * h0);
    let cav = multi();
    let h0 = cav.hamiltonian(0.0);
    let period = 2.0 * PI / cav.modes[0].omega;
    for i in 0..=100 {
        let h = cav.hamiltonian(period * i as f64 / 100.0);
        assert!((h - h0).abs() < 1e-12 * h0);
    }
}

#[test]
fn hamiltonian_matches_field_energy_quadrature() {
    for pc in [PC, PhysicalConstants::CODATA] {
        let cav = Cavity::new(pc, 1.0, 2.0)
            .unwrap()
            .with_real_mode(1, 1.0, 1.0, 0.2)
            .unwrap()
            .with_real_mode(2, 0.7, 0.4, -1.1)
            .unwrap();
        for t in [0.0, 0.17 / pc.c, 0.9 / pc.c] {
            let h = cav.hamiltonian(t);
            let q = cav.field_energy_quadrature(t, 400).unwrap();
            assert!((h - q).abs() < 1e-6 * h, "{h} vs {q}");
        }
    }
}

#[test]
fn time_reversal_companion() {
    let cav = multi();
    let g = zt(33, 33, -0.25, 0.25);
    let f = cav.sample(Branch::First, &g).unwrap();
    let comp = t_reversal_companion(&f).unwrap();
    let (a1, a2) = maxwell_residual_sampled(&comp, &PC).unwrap();
    let gf = g.refined();
    let compf = t_reversal_companion(&cav.sample(Branch::First, &gf).unwrap()).unwrap();
    let (b1, b2) = maxwell_residual_sampled(&compf, &PC).unwrap();
    assert!((3.5..=4.5).contains(&(a1 / b1)) && (3.5..=4.5).contains(&(a2 / b2)));
    // applying twice returns the original
    assert_eq!(t_reversal_companion(&comp).unwrap(), f);
    let zero = SampledField::new(
        g.clone(),
        f.labels.clone(),
        vec![vec![c(0.0, 0.0); g.len()]; 2],
    )
    .unwrap();
    assert_eq!(t_reversal_companion(&zero).unwrap().max_abs(), 0.0);
    assert!(
        t_reversal_companion(&cav.sample(Branch::First, &zt(5, 5, 0.0, 1.0)).unwrap()).is_err()
    );
}

#[test]
fn companion_of_cosine_keeps_time_parity() {
    let cav = cosine_cavity();
    let g = zt(5, 9, -1.0, 1.0);
    let comp = t_reversal_companion(&cav.sample(Branch::First, &g).unwrap()).unwrap();
    let ex = comp.channel("Ex").unwrap();
    for (n, v) in ex.iter().enumerate() {
        let p = g.coords(n);
        let want = -cav.field_e(p[0], p[1], Branch::First).unwrap()[0];
        assert!((v - want).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ode_residual_identically_zero(re1 in -10.0f64..10.0, im1 in -10.0f64..10.0, re2 in -10.0f64..10.0, im2 in -10.0f64..10.0, t in -50.0f64..50.0, alpha in 1u32..9) {
        let cav = Cavity::new(PC, 1.0, 1.0).unwrap().with_mode(alpha, 1.0, c(re1, im1), c(re2, im2)).unwrap();
        prop_assert_eq!(q_ode_residual(t, &cav.modes[0]), c(0.0, 0.0));
    }

    #[test]
    fn double_antiderivative_self_consistent(re1 in -10.0f64..10.0, im1 in -10.0f64..10.0, re2 in -10.0f64..10.0, im2 in -10.0f64..10.0, t in -5.0f64..5.0) {
        // d^2/dt^2 of q'' equals omega^2 q, checked with a fine central difference
        let cav = Cavity::new(PC, 1.0, 1.0).unwrap().with_mode(1, 1.0, c(re1, im1), c(re2, im2)).unwrap();
        let m = &cav.modes[0];
        let h = 1e-4;
        let d2 = (q_dprime(t + h, m) - q_dprime(t, m) * 2.0 + q_dprime(t - h, m)) / (h * h);
        let want = q_mode(t, m) * (m.omega * m.omega);
        prop_assert!((d2 - want).norm() < 1e-4 * (1.0 + want.norm()));
    }
}

//! Truncated Fock algebra, field operators, Heisenberg evolution and the
//! cosine-ansatz certificate.

use dualfield::cavity::Cavity;
use dualfield::constants::PhysicalConstants;
use dualfield::qfield::surd::{Surd, SurdMatrix};
use dualfield::qfield::*;
use dualfield::Complex64;
use nalgebra::DMatrix;
use std::f64::consts::PI;

fn unit_cavity(modes: usize) -> Cavity {
    let mut cav = Cavity::new(PhysicalConstants::UNIT, 1.0, 2.0).unwrap();
    for a in 1..=modes {
        cav.add_mode(
            a as u32,
            1.0,
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
        )
        .unwrap();
    }
    cav
}

fn mode(dim: usize) -> QuantizedMode {
    QuantizedMode::new(unit_cavity(1).modes[0], dim).unwrap()
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn exact_commutator_has_corner_defect() {
    for d in [2usize, 3, 4, 7, 12] {
        let a = SurdMatrix::annihilation(d);
        let diag = a
            .commutator(&a.transpose())
            .integer_diagonal()
            .expect("integer diagonal");
        let mut want = vec![1i64; d];
        want[d - 1] = 1 - d as i64;
        assert_eq!(diag, want);
    }
}

#[test]
fn dimension_four_commutator() {
    let a = SurdMatrix::annihilation(4);
    assert_eq!(
        a.commutator(&a.transpose()).integer_diagonal().unwrap(),
        vec![1, 1, 1, -3]
    );
    assert_eq!(a.get(0, 1), &Surd::integer(1));
    assert_eq!(a.get(1, 2), &Surd::sqrt(2));
}

#[test]
fn dense_commutator_agrees_with_exact() {
    let (a, ad) = ladder(DEFAULT_DIM).unwrap();
    let c = commutator(&a.matrix, &ad.matrix);
    let mut want = CMatrix::identity(DEFAULT_DIM, DEFAULT_DIM);
    want[(DEFAULT_DIM - 1, DEFAULT_DIM - 1)] = Complex64::from(1.0 - DEFAULT_DIM as f64);
    assert!(max_abs(&(c - want)) < 1e-13);
}

#[test]
fn number_operator_is_diagonal_counting() {
    let (a, ad) = ladder(6).unwrap();
    let n = &ad.matrix * &a.matrix;
    for i in 0..6 {
        for j in 0..6 {
            let want = if i == j { i as f64 } else { 0.0 };
            assert!((n[(i, j)] - Complex64::from(want)).norm() < 1e-14);
        }
    }
}

#[test]
fn ladder_rejects_tiny_dimension() {
    assert!(ladder(1).is_err());
    assert!(ladder(0).is_err());
}

#[test]
fn canonical_commutators() {
    let pc = PhysicalConstants::UNIT;
    let qm = mode(10);
    let (q, p) = position_momentum(&qm, &pc);
    let qp = interior_block(&commutator(&q.matrix, &p.matrix), 9);
    let pq = interior_block(&commutator(&p.matrix, &q.matrix), 9);
    let ihbar = CMatrix::identity(9, 9) * Complex64::new(0.0, pc.hbar);
    assert!(max_abs(&(&qp - &ihbar)) < 1e-12);
    assert!(max_abs(&(&pq + &ihbar)) < 1e-12);
}

#[test]
fn first_and_second_field_operators_are_hermitian() {
    let qc = QuantizedCavity::new(unit_cavity(2), 5, DEFAULT_DIM_CAP).unwrap();
    for kind in [FieldKind::E1, FieldKind::H1, FieldKind::E2, FieldKind::H2] {
        let op = qc.field_operator(kind, 0.31, 0.7).unwrap();
        assert!(op.relative_hermiticity_defect() < 1e-12, "{kind:?}");
    }
}

#[test]
fn combined_totals_carry_anti_hermitian_part() {
    let qc = QuantizedCavity::new(unit_cavity(1), 6, DEFAULT_DIM_CAP).unwrap();
    for kind in [FieldKind::ETotal, FieldKind::HTotal] {
        let op = qc.field_operator(kind, 0.31, 0.7).unwrap();
        assert!(op.relative_hermiticity_defect() > 0.1, "{kind:?}");
    }
}

#[test]
fn vacuum_energy_density_profile() {
    let qc = QuantizedCavity::new(unit_cavity(1), 8, DEFAULT_DIM_CAP).unwrap();
    let vac = qc.vacuum();
    let m = qc.modes[0].mode;
    let pc = qc.cavity.constants;
    for z in [0.1, 0.25, 0.5, 0.9] {
        let e = qc.field_operator(FieldKind::E1, z, 0.4).unwrap();
        let e2 = FockOperator::new(&e.matrix * &e.matrix, None);
        let want = pc.hbar * m.omega / (qc.cavity.volume * pc.eps0) * (PI * z).sin().powi(2);
        assert!((e2.expectation(&vac).re - want).abs() < 1e-12 * want.max(1.0));
        assert!(e.expectation(&vac).norm() < 1e-15);
    }
}

#[test]
fn heisenberg_matches_exponential_conjugation() {
    let pc = PhysicalConstants::UNIT;
    let qm = mode(DEFAULT_DIM);
    let n = &qm.a_dag.matrix * &qm.a.matrix;
    for t in [0.0, 0.3, 1.7, 5.0] {
        let gen: DMatrix<Complex64> =
            &n * Complex64::new(0.0, pc.hbar * qm.mode.omega * t / pc.hbar);
        let u = gen.clone().exp();
        let u_inv = (-gen).exp();
        let a_t = &u * &qm.a.matrix * &u_inv;
        let ad_t = &u * &qm.a_dag.matrix * &u_inv;
        let (a, ad) = heisenberg_evolve(&qm, t);
        let k = DEFAULT_DIM - 1;
        assert!(max_abs(&(interior_block(&a_t, k) - interior_block(&a.matrix, k))) < 1e-8);
        assert!(max_abs(&(interior_block(&ad_t, k) - interior_block(&ad.matrix, k))) < 1e-8);
    }
}

#[test]
fn coherent_expectations_solve_maxwell() {
    let qc = QuantizedCavity::new(unit_cavity(2), 10, DEFAULT_DIM_CAP).unwrap();
    let psi = qc
        .coherent_state(&[Complex64::new(0.8, 0.3), Complex64::new(-0.4, 0.6)])
        .unwrap();
    let pts = [(0.3, 0.2), (0.55, 1.1), (0.8, 2.0)];
    // unequal steps: with hz = c ht the stencil errors cancel exactly
    let (a1, a2) = expectation_maxwell_residual(&qc, &psi, &pts, 2e-2, 1e-2).unwrap();
    let (b1, b2) = expectation_maxwell_residual(&qc, &psi, &pts, 1e-2, 5e-3).unwrap();
    assert!((3.5..=4.5).contains(&(a1 / b1)), "{}", a1 / b1);
    assert!((3.5..=4.5).contains(&(a2 / b2)), "{}", a2 / b2);
}

#[test]
fn coherent_state_is_normalised() {
    let qc = QuantizedCavity::new(unit_cavity(1), 12, DEFAULT_DIM_CAP).unwrap();
    let psi = qc.coherent_state(&[Complex64::new(1.0, -0.5)]).unwrap();
    assert!((psi.norm() - 1.0).abs() < 1e-14);
    assert!(qc.coherent_state(&[]).is_err());
}

#[test]
fn dimension_cap_enforced() {
    assert!(QuantizedCavity::new(unit_cavity(4), 12, DEFAULT_DIM_CAP).is_err());
    assert_eq!(
        QuantizedCavity::new(unit_cavity(3), 12, DEFAULT_DIM_CAP)
            .unwrap()
            .total_dim,
        1728
    );
}

#[test]
fn field_operator_outside_cavity() {
    let qc = QuantizedCavity::new(unit_cavity(1), 4, DEFAULT_DIM_CAP).unwrap();
    assert!(qc.field_operator(FieldKind::E1, 1.5, 0.0).is_err());
}

#[test]
fn cosine_ansatz_contradiction_certificate() {
    let qm = mode(DEFAULT_DIM);
    let w = qm.mode.omega;
    let r = cosine_ansatz_contradiction(&qm, PI / 6.0 / w, PI / 3.0 / w).unwrap();
    assert_eq!(r.lhs_variation, 0.0);
    assert!((r.rhs_gap - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!(r.rhs_gap > 0.5);
    assert!(r.contradiction);
}

#[test]
fn cosine_ansatz_odd_dimension_and_singular_tangent() {
    assert!(cosine_ansatz_contradiction(&mode(5), 0.1, 0.2).is_err());
    let qm = mode(4);
    assert!(cosine_ansatz_contradiction(&qm, 0.5 * PI / qm.mode.omega, 0.1).is_err());
}

#[test]
fn annihilation_kills_vacuum() {
    let qc = QuantizedCavity::new(unit_cavity(2), 5, DEFAULT_DIM_CAP).unwrap();
    let vac = qc.vacuum();
    for qm in &qc.modes {
        let a = qc.embed(&qm.a.matrix, qm.a.mode_index.unwrap());
        assert_eq!((a * &vac).norm(), 0.0);
    }
}

#[test]
fn vacuum_position_and_momentum_vanish() {
    let qm = mode(8);
    let (q, p) = position_momentum(&qm, &PhysicalConstants::UNIT);
    let mut vac = nalgebra::DVector::zeros(8);
    vac[0] = Complex64::new(1.0, 0.0);
    assert_eq!(q.expectation(&vac).norm(), 0.0);
    assert_eq!(p.expectation(&vac).norm(), 0.0);
}

#[test]
fn heisenberg_evolution_is_periodic() {
    let qm = mode(6);
    let (a, ad) = heisenberg_evolve(&qm, 2.0 * PI / qm.mode.omega);
    assert!(max_abs(&(&a.matrix - &qm.a.matrix)) < 1e-14);
    assert!(max_abs(&(&ad.matrix - &qm.a_dag.matrix)) < 1e-14);
}

#[test]
fn equal_times_give_no_contradiction() {
    let qm = mode(12);
    let t = (PI / 5.0) / qm.mode.omega;
    let r = cosine_ansatz_contradiction(&qm, t, t).unwrap();
    assert_eq!(r.rhs_gap, 0.0);
    assert!(!r.contradiction);
}

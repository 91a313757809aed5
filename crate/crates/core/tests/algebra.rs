//! Complex matrix maps, cyclic bases and the two quaternion tables.

use dualfield::algebra::*;
use dualfield::Complex64;
use nalgebra::{DMatrix, Matrix2, Matrix4};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn complex_map_examples() {
    assert_eq!(complex_to_matrix2(1.0, 0.0), Matrix2::identity());
    assert_eq!(
        complex_to_matrix2(0.0, 1.0),
        Matrix2::new(0.0, -1.0, 1.0, 0.0)
    );
    assert_eq!(
        complex_to_matrix2(1.0, 2.0) * complex_to_matrix2(3.0, -1.0),
        complex_to_matrix2(5.0, 5.0)
    );
}

#[test]
fn basis_elements_are_permutations_with_period_four() {
    for v in Basis01Variant::ALL {
        let e1 = basis01_element(v, 1).unwrap();
        assert_eq!(e1, Matrix4::identity());
        let e2 = basis01_element(v, 2).unwrap();
        assert_eq!(e2 * e2, basis01_element(v, 3).unwrap());
        assert_eq!(e2 * e2 * e2, basis01_element(v, 4).unwrap());
        assert_eq!(e2 * e2 * e2 * e2, e1);
        for k in 1..=4 {
            assert!(is_permutation(&basis01_element(v, k).unwrap()));
        }
        // e2 squares to e3, which stands for -1: i^2 = -1 and i^4 = 1 in the image
        assert_eq!(e2 * e2 * e2 * e2 * e2, e2);
    }
    assert!(basis01_element(Basis01Variant::Zeta, 0).is_err());
    assert!(basis01_element(Basis01Variant::ZetaPrime, 5).is_err());
}

#[test]
fn zeta_literal_entries() {
    let e2 = basis01_element(Basis01Variant::Zeta, 2).unwrap();
    let want = Matrix4::new(0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0);
    assert_eq!(e2, want);
    let p2 = basis01_element(Basis01Variant::ZetaPrime, 2).unwrap();
    assert_eq!(
        p2,
        Matrix4::new(0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0)
    );
}

#[test]
fn hermitian_split_examples() {
    let h = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let (s, a) = hermitian_split(&h, 1e-12).unwrap();
    assert_eq!(s, DMatrix::zeros(2, 2));
    assert_eq!(a, DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
    let sym = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
    let (_, a) = hermitian_split(&sym, 1e-12).unwrap();
    assert_eq!(a, DMatrix::zeros(2, 2));
    let bad = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
    assert!(hermitian_split(&bad, 1e-12).is_err());
}

#[test]
fn real_block_has_complex_structure() {
    let s = DMatrix::from_row_slice(1, 1, &[2.0]);
    let a = DMatrix::from_row_slice(1, 1, &[3.0]);
    let b = real_block(&s, &a);
    assert_eq!(b, DMatrix::from_row_slice(2, 2, &[2.0, -3.0, 3.0, 2.0]));
}

/// Independent 2x2 complex representation of the Hamilton units.
fn hamilton_matrix(q: &Quaternion) -> nalgebra::Matrix2<Complex64> {
    let one = nalgebra::Matrix2::identity();
    let i = nalgebra::Matrix2::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
    let j = nalgebra::Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
    let k = nalgebra::Matrix2::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0));
    one * q.coeffs[0] + i * q.coeffs[1] + j * q.coeffs[2] + k * q.coeffs[3]
}

#[test]
fn hamilton_table_matches_matrix_representation() {
    for a in 0..4 {
        for b in 0..4 {
            let (x, y) = (
                Quaternion::unit(QuatBasis::Hamilton, a),
                Quaternion::unit(QuatBasis::Hamilton, b),
            );
            let p = quat_mul(&x, &y).unwrap();
            assert_eq!(
                hamilton_matrix(&p),
                hamilton_matrix(&x) * hamilton_matrix(&y),
                "{a} {b}"
            );
        }
    }
    let ij = quat_mul(
        &Quaternion::unit(QuatBasis::Hamilton, 1),
        &Quaternion::unit(QuatBasis::Hamilton, 2),
    )
    .unwrap();
    assert_eq!(ij, Quaternion::unit(QuatBasis::Hamilton, 3));
}

#[test]
fn hamilton_associative_on_all_triples() {
    let u = |i| Quaternion::unit(QuatBasis::Hamilton, i);
    for a in 0..4 {
        for b in 0..4 {
            for d in 0..4 {
                let l = quat_mul(&quat_mul(&u(a), &u(b)).unwrap(), &u(d)).unwrap();
                let r = quat_mul(&u(a), &quat_mul(&u(b), &u(d)).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn levi_civita_table_on_all_pairs() {
    // explicit listing: row a, column b -> (sign, unit)
    let table = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (1, 0)],
    ];
    for (a, row) in table.iter().enumerate() {
        for (b, &(s, k)) in row.iter().enumerate() {
            let p = quat_mul(
                &Quaternion::unit(QuatBasis::LeviCivita, a),
                &Quaternion::unit(QuatBasis::LeviCivita, b),
            )
            .unwrap();
            assert_eq!(
                p,
                Quaternion::unit(QuatBasis::LeviCivita, k).scale(c(s as f64, 0.0))
            );
        }
    }
}

#[test]
fn levi_civita_is_not_associative() {
    let e = |i| Quaternion::unit(QuatBasis::LeviCivita, i);
    let l = quat_mul(&e(1), &quat_mul(&e(1), &e(2)).unwrap()).unwrap();
    let r = quat_mul(&quat_mul(&e(1), &e(1)).unwrap(), &e(2)).unwrap();
    assert_ne!(l, r);
}

#[test]
fn basis_mismatch_rejected() {
    let x = Quaternion::unit(QuatBasis::Hamilton, 1);
    let y = Quaternion::unit(QuatBasis::LeviCivita, 1);
    assert!(quat_mul(&x, &y).is_err());
}

#[test]
fn operators_are_componentwise() {
    let x = Quaternion::from_real(QuatBasis::Hamilton, [1.0, 2.0, 3.0, 4.0]);
    let y = Quaternion::from_real(QuatBasis::Hamilton, [0.5, -1.0, 0.0, 2.0]);
    assert_eq!((x + y).coeffs[1], c(1.0, 0.0));
    assert_eq!((x - y).coeffs[3], c(2.0, 0.0));
    assert_eq!((x * y), quat_mul(&x, &y).unwrap());
    assert!((x.modulus() - 30f64.sqrt()).abs() < 1e-15);
}

proptest! {
    #[test]
    fn complex_map_is_ring_homomorphism(a in -1000i32..1000, b in -1000i32..1000, p in -1000i32..1000, q in -1000i32..1000) {
        let (a, b, p, q) = (a as f64, b as f64, p as f64, q as f64);
        let z = c(a, b) * c(p, q);
        prop_assert_eq!(complex_to_matrix2(a, b) * complex_to_matrix2(p, q), complex_to_matrix2(z.re, z.im));
        prop_assert_eq!(complex_to_matrix2(a, b) + complex_to_matrix2(p, q), complex_to_matrix2(a + p, b + q));
    }

    #[test]
    fn hermitian_split_roundtrip(vals in proptest::collection::vec(-10.0f64..10.0, 18)) {
        let n = 3;
        let mut h = DMatrix::from_element(n, n, c(0.0, 0.0));
        let mut it = vals.into_iter();
        for i in 0..n {
            for j in i..n {
                let re = it.next().unwrap();
                let im = if i == j { 0.0 } else { it.next().unwrap() };
                h[(i, j)] = c(re, im);
                h[(j, i)] = c(re, -im);
            }
        }
        let (s, a) = hermitian_split(&h, 1e-12).unwrap();
        prop_assert_eq!(&s, &s.transpose());
        prop_assert_eq!(&a, &(-a.transpose()));
        let rebuilt = s.map(|x| c(x, 0.0)) + a.map(|x| c(0.0, x));
        prop_assert_eq!(rebuilt, h);
    }

    #[test]
    fn hamilton_associative_random(v in proptest::collection::vec(-10i32..10, 12)) {
        let q = |o: usize| Quaternion::from_real(QuatBasis::Hamilton, [v[o], v[o + 1], v[o + 2], v[o + 3]].map(f64::from));
        let (x, y, z) = (q(0), q(4), q(8));
        prop_assert_eq!((x * y) * z, x * (y * z));
    }
}

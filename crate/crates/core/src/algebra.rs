//! Matrix representations of complex numbers and the quaternion tables.
//!
//! * `complex_to_matrix2` is the ring homomorphism `a + ib -> [[a, -b], [b, a]]`.
//! * [`Basis01Variant`] carries the two cyclic bases of 4x4 permutation
//!   matrices in which `e2` plays the role of the imaginary unit.
//! * [`Quaternion`] is a biquaternion (complex coefficients) tagged with the
//!   multiplication table it obeys.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Map `a + ib` to its real 2x2 representation `[[a, -b], [b, a]]`.
pub fn complex_to_matrix2(a: f64, b: f64) -> Matrix2<f64> {
    Matrix2::new(a, -b, b, a)
}

/// Same map applied to a [`Complex64`].
pub fn complex_to_matrix2_c(z: Complex64) -> Matrix2<f64> {
    complex_to_matrix2(z.re, z.im)
}

/// The two cyclic bases of `[0,1]` permutation matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis01Variant {
    Zeta,
    ZetaPrime,
}

impl Basis01Variant {
    pub const ALL: [Basis01Variant; 2] = [Basis01Variant::Zeta, Basis01Variant::ZetaPrime];
}

#[rustfmt::skip]
const ZETA: [[i64; 16]; 4] = [
    [1, 0, 0, 0,  0, 1, 0, 0,  0, 0, 1, 0,  0, 0, 0, 1],
    [0, 1, 0, 0,  0, 0, 1, 0,  0, 0, 0, 1,  1, 0, 0, 0],
    [0, 0, 1, 0,  0, 0, 0, 1,  1, 0, 0, 0,  0, 1, 0, 0],
    [0, 0, 0, 1,  1, 0, 0, 0,  0, 1, 0, 0,  0, 0, 1, 0],
];

#[rustfmt::skip]
const ZETA_PRIME: [[i64; 16]; 4] = [
    [1, 0, 0, 0,  0, 1, 0, 0,  0, 0, 1, 0,  0, 0, 0, 1],
    [0, 0, 1, 0,  0, 0, 0, 1,  0, 1, 0, 0,  1, 0, 0, 0],
    [0, 1, 0, 0,  1, 0, 0, 0,  0, 0, 0, 1,  0, 0, 1, 0],
    [0, 0, 0, 1,  0, 0, 1, 0,  1, 0, 0, 0,  0, 1, 0, 0],
];

/// Element `index` (1..=4) of a cyclic `[0,1]` basis, as an exact integer matrix.
///
/// `e1` is the identity, `e2` represents the imaginary unit, `e3 = e2^2`
/// represents `-1` and `e4 = e2^3` represents `-i`.
pub fn basis01_element(variant: Basis01Variant, index: usize) -> Result<Matrix4<i64>> {
    if !(1..=4).contains(&index) {
        return Err(Error::IndexOutOfRange {
            index: index as i64,
            lo: 1,
            hi: 4,
        });
    }
    let table = match variant {
        Basis01Variant::Zeta => &ZETA,
        Basis01Variant::ZetaPrime => &ZETA_PRIME,
    };
    Ok(Matrix4::from_row_slice(&table[index - 1]))
}

/// True when `m` has exactly one `1` per row and column and zeros elsewhere.
pub fn is_permutation(m: &Matrix4<i64>) -> bool {
    let entries_ok = m.iter().all(|&x| x == 0 || x == 1);
    let rows_ok = (0..4).all(|r| m.row(r).sum() == 1);
    let cols_ok = (0..4).all(|c| m.column(c).sum() == 1);
    entries_ok && rows_ok && cols_ok
}

/// Split a Hermitian matrix into `(S, A)` with `H = S + iA`, `S` symmetric and
/// `A` antisymmetric.
///
/// Inputs whose Frobenius distance from their adjoint exceeds `tol` are
/// rejected with the violation norm.
pub fn hermitian_split(h: &DMatrix<Complex64>, tol: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch {
            expected: vec![h.nrows(), h.nrows()],
            got: vec![h.nrows(), h.ncols()],
        });
    }
    let violation = (h - h.adjoint()).norm();
    if violation > tol {
        return Err(Error::NotHermitian { violation });
    }
    Ok((h.map(|z| z.re), h.map(|z| z.im)))
}

/// The real `2n x 2n` block `[[S, -A], [A, S]]` representing `S + iA`.
pub fn real_block(s: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = s.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(s);
    out.view_mut((0, n), (n, n)).copy_from(&(-a));
    out.view_mut((n, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (n, n)).copy_from(s);
    out
}

/// Multiplication table a [`Quaternion`] obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuatBasis {
    /// Basis `e, i, j, k` with the standard Hamilton rules.
    Hamilton,
    /// Basis `e0, e1, e2, e3` with `ei ej = eps_ijk ek + delta_ij e0`.
    /// The resulting product is not associative.
    LeviCivita,
}

/// Product of two basis units: `(sign, index)` so that `u_a u_b = sign * u_index`.
pub fn unit_product(basis: QuatBasis, a: usize, b: usize) -> (i8, usize) {
    assert!(a < 4 && b < 4, "quaternion unit index out of range");
    if a == 0 {
        return (1, b);
    }
    if b == 0 {
        return (1, a);
    }
    if a == b {
        return match basis {
            QuatBasis::Hamilton => (-1, 0),
            QuatBasis::LeviCivita => (1, 0),
        };
    }
    // a, b distinct in 1..=3: ei ej = eps_ijk ek for both tables
    let k = 6 - a - b;
    let sign = if (a % 3) + 1 == b { 1 } else { -1 };
    (sign, k)
}

/// Quaternion with complex coefficients against a tagged basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub coeffs: [Complex64; 4],
    pub basis: QuatBasis,
}

impl Quaternion {
    pub fn new(basis: QuatBasis, coeffs: [Complex64; 4]) -> Self {
        Self { coeffs, basis }
    }

    pub fn zero(basis: QuatBasis) -> Self {
        Self::new(basis, [Complex64::new(0.0, 0.0); 4])
    }

    /// The basis unit `u_index` (index 0 is the identity).
    pub fn unit(basis: QuatBasis, index: usize) -> Self {
        let mut q = Self::zero(basis);
        q.coeffs[index] = Complex64::new(1.0, 0.0);
        q
    }

    pub fn from_real(basis: QuatBasis, c: [f64; 4]) -> Self {
        Self::new(basis, c.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn scalar(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn vector(&self) -> [Complex64; 3] {
        [self.coeffs[1], self.coeffs[2], self.coeffs[3]]
    }

    /// `sqrt(sum |c_i|^2)`, the modulus used by residual norms.
    pub fn modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.basis, self.coeffs.map(|c| c * s))
    }

    /// Bilinear product under the shared table.
    pub fn mul(&self, other: &Quaternion) -> Result<Quaternion> {
        quat_mul(self, other)
    }
}

/// Bilinear extension of the tagged multiplication table.
pub fn quat_mul(x: &Quaternion, y: &Quaternion) -> Result<Quaternion> {
    if x.basis != y.basis {
        return Err(Error::BasisMismatch {
            left: x.basis,
            right: y.basis,
        });
    }
    let mut out = Quaternion::zero(x.basis);
    for a in 0..4 {
        for b in 0..4 {
            let (sign, k) = unit_product(x.basis, a, b);
            out.coeffs[k] += x.coeffs[a] * y.coeffs[b] * f64::from(sign);
        }
    }
    Ok(out)
}

fn same_basis(x: &Quaternion, y: &Quaternion) -> QuatBasis {
    assert_eq!(x.basis, y.basis, "quaternion basis mismatch");
    x.basis
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        let basis = same_basis(&self, &rhs);
        let mut c = self.coeffs;
        for (ci, ri) in c.iter_mut().zip(rhs.coeffs) {
            *ci += ri;
        }
        Quaternion::new(basis, c)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        self + (-rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(self.basis, self.coeffs.map(|c| -c))
    }
}

/// Panicking product for operator-style use; prefer [`quat_mul`] when the
/// tags may differ.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        same_basis(&self, &rhs);
        quat_mul(&self, &rhs).expect("basis tags checked")
    }
}

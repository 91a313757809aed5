//! Truncated Fock-space quantization of the cavity field.
//!
//! Each mode gets ladder operators on a number basis of dimension `D`;
//! several modes combine by Kronecker products with the first mode as the
//! most significant factor. Operator identities hold exactly only away from
//! the truncation boundary, so the checks here restrict to interior blocks.

pub mod surd;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cavity::{Cavity, CavityMode};
use crate::constants::PhysicalConstants;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Default truncation dimension per mode.
pub const DEFAULT_DIM: usize = 12;
/// Default cap on the total tensor-product dimension.
pub const DEFAULT_DIM_CAP: usize = 4096;

pub type CMatrix = DMatrix<Complex64>;

/// Dense operator on a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub matrix: CMatrix,
    /// Mode the operator belongs to, `None` for multi-mode operators.
    pub mode_index: Option<usize>,
}

impl FockOperator {
    pub fn new(matrix: CMatrix, mode_index: Option<usize>) -> Self {
        Self { matrix, mode_index }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator::new(self.matrix.adjoint(), self.mode_index)
    }

    /// Frobenius norm of `O - O^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    /// Hermiticity defect relative to the Frobenius norm of the operator.
    pub fn relative_hermiticity_defect(&self) -> f64 {
        let n = self.matrix.norm();
        if n == 0.0 {
            0.0
        } else {
            self.hermiticity_defect() / n
        }
    }

    /// `<psi| O |psi>`.
    pub fn expectation(&self, psi: &nalgebra::DVector<Complex64>) -> Complex64 {
        psi.dotc(&(&self.matrix * psi))
    }
}

/// Annihilation and creation operators, `a[n-1, n] = sqrt(n)`.
pub fn ladder(dim: usize) -> Result<(FockOperator, FockOperator)> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "Fock dimension must be at least 2, got {dim}"
        )));
    }
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::from((n as f64).sqrt());
    }
    let adag = a.adjoint();
    Ok((FockOperator::new(a, None), FockOperator::new(adag, None)))
}

/// `A B - B A`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Top-left `n x n` block.
pub fn interior_block(m: &CMatrix, n: usize) -> CMatrix {
    m.view((0, 0), (n, n)).into_owned()
}

/// One cavity mode with its ladder operators.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedMode {
    pub mode: CavityMode,
    pub dim: usize,
    pub a: FockOperator,
    pub a_dag: FockOperator,
}

impl QuantizedMode {
    pub fn new(mode: CavityMode, dim: usize) -> Result<Self> {
        let (a, a_dag) = ladder(dim)?;
        Ok(Self {
            mode,
            dim,
            a,
            a_dag,
        })
    }
}

/// `q = sqrt(hbar/(2 m omega)) (a^dagger + a)`, `p = i sqrt(hbar m omega/2) (a^dagger - a)`.
pub fn position_momentum(
    qm: &QuantizedMode,
    pc: &PhysicalConstants,
) -> (FockOperator, FockOperator) {
    let (m, w) = (qm.mode.mass, qm.mode.omega);
    let q = (&qm.a_dag.matrix + &qm.a.matrix) * Complex64::from((pc.hbar / (2.0 * m * w)).sqrt());
    let p = (&qm.a_dag.matrix - &qm.a.matrix) * (I * (pc.hbar * m * w / 2.0).sqrt());
    (
        FockOperator::new(q, qm.a.mode_index),
        FockOperator::new(p, qm.a.mode_index),
    )
}

/// Heisenberg-picture ladder operators `a(t) = a e^{-i omega t}`,
/// `a^dagger(t) = a^dagger e^{i omega t}`.
pub fn heisenberg_evolve(qm: &QuantizedMode, t: f64) -> (FockOperator, FockOperator) {
    let ph = Complex64::from_polar(1.0, -qm.mode.omega * t);
    (
        FockOperator::new(&qm.a.matrix * ph, qm.a.mode_index),
        FockOperator::new(&qm.a_dag.matrix * ph.conj(), qm.a.mode_index),
    )
}

/// Field operator kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// `sum c_E (a^dagger + a) sin(kz)`.
    E1,
    /// `i sum c_H (a^dagger - a) cos(kz)`.
    H1,
    /// `sum c_E (a''^dagger + a'') sin(kz)`.
    E2,
    /// `-i sum c_H (a''^dagger - a'') cos(kz)`.
    H2,
    /// `sum c_E {(a^dagger + a) + (a'' - a''^dagger)} sin(kz)`.
    ETotal,
    /// `sum c_H {(a^dagger - a) - (a'' + a''^dagger)} cos(kz)`.
    HTotal,
}

impl FieldKind {
    pub const ALL: [FieldKind; 6] = [
        FieldKind::E1,
        FieldKind::H1,
        FieldKind::E2,
        FieldKind::H2,
        FieldKind::ETotal,
        FieldKind::HTotal,
    ];
}

/// The cavity modes quantized on a tensor-product Fock space.
///
/// The second-branch operators `a''` reuse the ladder matrices of the first
/// branch, so the combined totals are the literal operator sums.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedCavity {
    pub cavity: Cavity,
    pub modes: Vec<QuantizedMode>,
    pub total_dim: usize,
}

impl QuantizedCavity {
    /// Quantize every mode with dimension `dim`, rejecting total dimensions
    /// above `cap`.
    pub fn new(cavity: Cavity, dim: usize, cap: usize) -> Result<Self> {
        let mut total: usize = 1;
        for _ in &cavity.modes {
            total = total
                .checked_mul(dim)
                .filter(|&t| t <= cap)
                .ok_or(Error::DimensionCap {
                    requested: dim.saturating_pow(cavity.modes.len() as u32),
                    cap,
                })?;
        }
        let modes = cavity
            .modes
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut qm = QuantizedMode::new(*m, dim)?;
                qm.a.mode_index = Some(i);
                qm.a_dag.mode_index = Some(i);
                Ok(qm)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cavity,
            modes,
            total_dim: total,
        })
    }

    /// `I x ... x op x ... x I` with `op` in slot `slot`.
    pub fn embed(&self, op: &CMatrix, slot: usize) -> CMatrix {
        let mut out = CMatrix::identity(1, 1);
        for (i, qm) in self.modes.iter().enumerate() {
            let factor = if i == slot {
                op.clone()
            } else {
                CMatrix::identity(qm.dim, qm.dim)
            };
            out = out.kronecker(&factor);
        }
        out
    }

    /// `sqrt(hbar omega / (V eps0))` and `sqrt(hbar omega / (V mu0))`.
    pub fn amplitudes(&self, m: &CavityMode) -> (f64, f64) {
        let pc = &self.cavity.constants;
        let v = self.cavity.volume;
        (
            (pc.hbar * m.omega / (v * pc.eps0)).sqrt(),
            (pc.hbar * m.omega / (v * pc.mu0)).sqrt(),
        )
    }

    /// Field operator of the given kind at `(z, t)` on the full tensor space.
    pub fn field_operator(&self, kind: FieldKind, z: f64, t: f64) -> Result<FockOperator> {
        if !(0.0..=self.cavity.length).contains(&z) {
            return Err(Error::OutsideCavity {
                z,
                length: self.cavity.length,
            });
        }
        let n = self.total_dim;
        let mut out = CMatrix::zeros(n, n);
        for (slot, qm) in self.modes.iter().enumerate() {
            let (a, ad) = heisenberg_evolve(qm, t);
            let (a, ad) = (&a.matrix, &ad.matrix);
            // second-branch operators share the first-branch ladder matrices
            let (a2, ad2) = (a, ad);
            let (ce, ch) = self.amplitudes(&qm.mode);
            let (s, c) = self.cavity.profile(&qm.mode, z);
            let local: CMatrix = match kind {
                FieldKind::E1 => (ad + a) * Complex64::from(ce * s),
                FieldKind::H1 => (ad - a) * (I * ch * c),
                FieldKind::E2 => (ad2 + a2) * Complex64::from(ce * s),
                FieldKind::H2 => (ad2 - a2) * (-I * ch * c),
                FieldKind::ETotal => ((ad + a) + (a2 - ad2)) * Complex64::from(ce * s),
                FieldKind::HTotal => ((ad - a) - (a2 + ad2)) * Complex64::from(ch * c),
            };
            out += self.embed(&local, slot);
        }
        Ok(FockOperator::new(out, None))
    }

    /// Truncated coherent-like product state with amplitudes `lambda_i`,
    /// normalised after truncation.
    pub fn coherent_state(&self, lambdas: &[Complex64]) -> Result<nalgebra::DVector<Complex64>> {
        if lambdas.len() != self.modes.len() {
            return Err(Error::ShapeMismatch {
                expected: vec![self.modes.len()],
                got: vec![lambdas.len()],
            });
        }
        let mut psi = nalgebra::DVector::from_element(1, Complex64::from(1.0));
        for (qm, &l) in self.modes.iter().zip(lambdas) {
            let mut v = nalgebra::DVector::zeros(qm.dim);
            let mut term = Complex64::from(1.0);
            for n in 0..qm.dim {
                if n > 0 {
                    term *= l / (n as f64).sqrt();
                }
                v[n] = term;
            }
            psi = psi.kronecker(&v);
        }
        let norm = psi.norm();
        Ok(psi / Complex64::from(norm))
    }

    /// Vacuum vector `|0, ..., 0>`.
    pub fn vacuum(&self) -> nalgebra::DVector<Complex64> {
        let mut v = nalgebra::DVector::zeros(self.total_dim);
        v[0] = Complex64::from(1.0);
        v
    }
}

/// Finite-difference Maxwell residuals `(r1, r2)` of the expectation values
/// `<E1>`, `<H1>` in state `psi`, on a `(z, t)` stencil of spacing `(hz, ht)`
/// centred at each listed point.
pub fn expectation_maxwell_residual(
    qc: &QuantizedCavity,
    psi: &nalgebra::DVector<Complex64>,
    points: &[(f64, f64)],
    hz: f64,
    ht: f64,
) -> Result<(f64, f64)> {
    let pc = &qc.cavity.constants;
    let ex = |z: f64, t: f64| {
        qc.field_operator(FieldKind::E1, z, t)
            .map(|o| o.expectation(psi))
    };
    let hy = |z: f64, t: f64| {
        qc.field_operator(FieldKind::H1, z, t)
            .map(|o| o.expectation(psi))
    };
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    for &(z, t) in points {
        let dex_dz = (ex(z + hz, t)? - ex(z - hz, t)?) / (2.0 * hz);
        let dex_dt = (ex(z, t + ht)? - ex(z, t - ht)?) / (2.0 * ht);
        let dhy_dz = (hy(z + hz, t)? - hy(z - hz, t)?) / (2.0 * hz);
        let dhy_dt = (hy(z, t + ht)? - hy(z, t - ht)?) / (2.0 * ht);
        r1 = r1.max((dex_dz + dhy_dt * pc.mu0).norm());
        r2 = r2.max((dhy_dz + dex_dt * pc.eps0).norm());
    }
    Ok((r1, r2))
}

/// Outcome of probing the cosine ansatz `a^dagger(t) = a^dagger(0) cos(omega t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContradictionReport {
    /// `(a^dagger - a)^{-1} (a^dagger + a)` built at `t1` and `t2`.
    pub lhs_t1: CMatrix,
    pub lhs_t2: CMatrix,
    /// `max |lhs_t1 - lhs_t2|`; zero because the left side uses only `t = 0` operators.
    pub lhs_variation: f64,
    pub tan_t1: f64,
    pub tan_t2: f64,
    /// `|tan(omega t1) - tan(omega t2)|`.
    pub rhs_gap: f64,
    /// Left side t-independent while the right side differs by more than `1e-6`.
    pub contradiction: bool,
}

/// Largest `|cos(omega t)|` treated as a tangent singularity.
pub const TAN_SINGULAR: f64 = 1e-9;

/// Evaluate both sides of the relation the cosine ansatz would imply.
///
/// The left side needs `a^dagger - a` invertible, which holds for even `D`
/// (an antisymmetric matrix of odd order is singular).
pub fn cosine_ansatz_contradiction(
    qm: &QuantizedMode,
    t1: f64,
    t2: f64,
) -> Result<ContradictionReport> {
    let tan_at = |t: f64| {
        let (s, c) = (qm.mode.omega * t).sin_cos();
        if c.abs() < TAN_SINGULAR {
            Err(Error::InvalidParameter(format!(
                "tan(omega t) is singular at t = {t}"
            )))
        } else {
            Ok(s / c)
        }
    };
    let (tan_t1, tan_t2) = (tan_at(t1)?, tan_at(t2)?);
    let lhs = |_t: f64| -> Result<CMatrix> {
        let diff = &qm.a_dag.matrix - &qm.a.matrix;
        let inv = diff.try_inverse().ok_or_else(|| {
            Error::Singular(format!("a^dagger - a is singular for D = {}", qm.dim))
        })?;
        Ok(inv * (&qm.a_dag.matrix + &qm.a.matrix))
    };
    let (lhs_t1, lhs_t2) = (lhs(t1)?, lhs(t2)?);
    let lhs_variation = (&lhs_t1 - &lhs_t2)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let rhs_gap = (tan_t1 - tan_t2).abs();
    Ok(ContradictionReport {
        lhs_t1,
        lhs_t2,
        lhs_variation,
        tan_t1,
        tan_t2,
        rhs_gap,
        contradiction: lhs_variation == 0.0 && rhs_gap > 1e-6,
    })
}

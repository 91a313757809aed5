//! Quaternion packing of four-component fields and residuals of the
//! generalized Maxwell system.
//!
//! Each quantity has four real components `[1]..[4]` with distinct
//! `(P, t)` parities. They pack into a quaternion with complex coefficients
//!
//! ```text
//! X = (X1 - i X2) + (X3 - i X4) j          for E, H, j_e, rho_e, rho_g
//! J_g = (-jg1 + i jg2) + (-jg3 + i jg4) j  for the magnetic current
//! ```
//!
//! and the residuals are
//!
//! ```text
//! r_a = curl E + mu0 dH/dt + J_g
//! r_b = curl H - eps0 dE/dt - J_e
//! r_c = div E - rho_e
//! r_d = div H - rho_g
//! ```
//!
//! evaluated by central differences on a 4D `(x, y, z, t)` grid.

use num_complex::Complex64;

use crate::algebra::{QuatBasis, Quaternion};
use crate::cavity::{Branch, Cavity};
use crate::constants::PhysicalConstants;
use crate::dualsym::{parity_classify, FieldKind, Parity};
use crate::grid::Grid;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Real 3-vector field stored axis by axis.
pub type VecField = [Vec<f64>; 3];

/// The four real components of every quantity, before packing.
#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    pub e: [VecField; 4],
    pub h: [VecField; 4],
    pub je: [VecField; 4],
    pub jg: [VecField; 4],
    pub rho_e: [Vec<f64>; 4],
    pub rho_g: [Vec<f64>; 4],
}

fn zero_vec(n: usize) -> VecField {
    [vec![0.0; n], vec![0.0; n], vec![0.0; n]]
}

impl Components {
    /// All components zero on `n` nodes.
    pub fn zeros(n: usize) -> Self {
        let v = || [zero_vec(n), zero_vec(n), zero_vec(n), zero_vec(n)];
        let s = || [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        Self {
            e: v(),
            h: v(),
            je: v(),
            jg: v(),
            rho_e: s(),
            rho_g: s(),
        }
    }

    /// Embed the cavity solution `branch` as component `slot` (1..=4): `Ex`
    /// into `E[slot]` and `Hy` into `H[slot]`, with `z` and `t` read from
    /// the grid. Only the real part is kept.
    pub fn embed_cavity(
        &mut self,
        cavity: &Cavity,
        branch: Branch,
        slot: usize,
        grid: &Grid,
    ) -> Result<()> {
        check_slot(slot)?;
        check_xyzt(grid)?;
        for n in 0..grid.len() {
            let p = grid.coords(n);
            self.e[slot - 1][0][n] = cavity.field_e(p[2], p[3], branch)?[0].re;
            self.h[slot - 1][1][n] = cavity.field_h(p[2], p[3], branch)?[1].re;
        }
        Ok(())
    }

    fn lengths(&self) -> Vec<usize> {
        let vecs = [&self.e, &self.h, &self.je, &self.jg];
        let mut out: Vec<usize> = vecs
            .iter()
            .flat_map(|q| q.iter().flat_map(|v| v.iter().map(Vec::len)))
            .collect();
        out.extend(self.rho_e.iter().chain(&self.rho_g).map(Vec::len));
        out
    }

    /// Apply a dual rotation by `theta` to each `(E[c], H[c])` pair.
    pub fn dual_rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let mut out = self.clone();
        for k in 0..4 {
            for ax in 0..3 {
                for n in 0..self.e[k][ax].len() {
                    let (e, h) = (self.e[k][ax][n], self.h[k][ax][n]);
                    out.e[k][ax][n] = e * c + h * s;
                    out.h[k][ax][n] = h * c - e * s;
                }
            }
        }
        out
    }
}

fn check_slot(slot: usize) -> Result<()> {
    if !(1..=4).contains(&slot) {
        return Err(Error::IndexOutOfRange {
            index: slot as i64,
            lo: 1,
            hi: 4,
        });
    }
    Ok(())
}

fn check_xyzt(grid: &Grid) -> Result<()> {
    if grid.rank() != 4 {
        return Err(Error::ShapeMismatch {
            expected: vec![4],
            got: vec![grid.rank()],
        });
    }
    Ok(())
}

/// Quaternion scalar field: coefficients of `1` and `j` at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatScalar {
    pub one: Vec<Complex64>,
    pub j: Vec<Complex64>,
}

impl QuatScalar {
    fn pack(c: [&Vec<f64>; 4], sign: f64) -> Self {
        let n = c[0].len();
        let one = (0..n)
            .map(|i| Complex64::new(c[0][i], -c[1][i]) * sign)
            .collect();
        let j = (0..n)
            .map(|i| Complex64::new(c[2][i], -c[3][i]) * sign)
            .collect();
        Self { one, j }
    }

    fn unpack(&self, sign: f64) -> [Vec<f64>; 4] {
        let part = |v: &Vec<Complex64>, f: fn(&Complex64) -> f64| {
            v.iter().map(|z| f(&(z * sign))).collect()
        };
        [
            part(&self.one, |z| z.re),
            part(&self.one, |z| -z.im),
            part(&self.j, |z| z.re),
            part(&self.j, |z| -z.im),
        ]
    }

    /// Value at one node as a Hamilton quaternion `a + b j`.
    pub fn at(&self, node: usize) -> Quaternion {
        Quaternion::new(
            QuatBasis::Hamilton,
            [self.one[node], ZERO, self.j[node], ZERO],
        )
    }
}

/// Quaternion vector field: one [`QuatScalar`] per spatial axis.
pub type QuatVec = [QuatScalar; 3];

fn pack_vec(c: &[VecField; 4], sign: f64) -> QuatVec {
    [0, 1, 2].map(|ax| QuatScalar::pack([&c[0][ax], &c[1][ax], &c[2][ax], &c[3][ax]], sign))
}

fn unpack_vec(q: &QuatVec, sign: f64) -> [VecField; 4] {
    let parts = [q[0].unpack(sign), q[1].unpack(sign), q[2].unpack(sign)];
    [0, 1, 2, 3].map(|k| {
        [
            parts[0][k].clone(),
            parts[1][k].clone(),
            parts[2][k].clone(),
        ]
    })
}

/// Packed quaternion fields on a 4D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldQuaternion {
    pub grid: Grid,
    pub e: QuatVec,
    pub h: QuatVec,
    pub je: QuatVec,
    /// Packed with the leading minus sign of the magnetic current.
    pub jg: QuatVec,
    pub rho_e: QuatScalar,
    pub rho_g: QuatScalar,
}

/// Pack components into quaternion fields.
pub fn assemble(grid: &Grid, c: &Components) -> Result<FieldQuaternion> {
    check_xyzt(grid)?;
    if let Some(&bad) = c.lengths().iter().find(|&&l| l != grid.len()) {
        return Err(Error::ShapeMismatch {
            expected: grid.shape(),
            got: vec![bad],
        });
    }
    Ok(FieldQuaternion {
        grid: grid.clone(),
        e: pack_vec(&c.e, 1.0),
        h: pack_vec(&c.h, 1.0),
        je: pack_vec(&c.je, 1.0),
        jg: pack_vec(&c.jg, -1.0),
        rho_e: QuatScalar::pack([&c.rho_e[0], &c.rho_e[1], &c.rho_e[2], &c.rho_e[3]], 1.0),
        rho_g: QuatScalar::pack([&c.rho_g[0], &c.rho_g[1], &c.rho_g[2], &c.rho_g[3]], 1.0),
    })
}

impl FieldQuaternion {
    /// Recover the real components; exact inverse of [`assemble`].
    pub fn decompose(&self) -> Components {
        Components {
            e: unpack_vec(&self.e, 1.0),
            h: unpack_vec(&self.h, 1.0),
            je: unpack_vec(&self.je, 1.0),
            jg: unpack_vec(&self.jg, -1.0),
            rho_e: self.rho_e.unpack(1.0),
            rho_g: self.rho_g.unpack(1.0),
        }
    }

    /// `(P, t)` parity of component `component` of a quantity.
    pub fn parity(kind: FieldKind, component: usize) -> Result<(Parity, Parity)> {
        parity_classify(kind, component)
    }
}

/// Max-norms of the four generalized Maxwell residuals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeneralizedResidual {
    /// `curl E + mu0 dH/dt + J_g`.
    pub faraday: f64,
    /// `curl H - eps0 dE/dt - J_e`.
    pub ampere: f64,
    /// `div E - rho_e`.
    pub gauss_e: f64,
    /// `div H - rho_g`.
    pub gauss_h: f64,
}

impl GeneralizedResidual {
    pub fn max(&self) -> f64 {
        self.faraday
            .max(self.ampere)
            .max(self.gauss_e)
            .max(self.gauss_h)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.faraday, self.ampere, self.gauss_e, self.gauss_h]
    }
}

/// Residual of one equation at one node, per packed coefficient `(1, j)`.
type NodeVec = [[Complex64; 2]; 3];

fn coeff(q: &QuatScalar, which: usize) -> &[Complex64] {
    if which == 0 {
        &q.one
    } else {
        &q.j
    }
}

fn curl(grid: &Grid, v: &QuatVec, n: usize, w: usize) -> [Complex64; 3] {
    // axes 0, 1, 2 of the grid are x, y, z
    let d = |comp: usize, axis: usize| grid.central_diff(coeff(&v[comp], w), axis, n);
    [d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)]
}

fn div(grid: &Grid, v: &QuatVec, n: usize, w: usize) -> Complex64 {
    (0..3)
        .map(|ax| grid.central_diff(coeff(&v[ax], w), ax, n))
        .sum()
}

/// Per-node residual fields at interior nodes: `(node, faraday, ampere, gauss_e, gauss_h)`.
#[allow(clippy::type_complexity)]
fn residual_nodes(
    fq: &FieldQuaternion,
    pc: &PhysicalConstants,
) -> Result<Vec<(usize, NodeVec, NodeVec, [Complex64; 2], [Complex64; 2])>> {
    let grid = &fq.grid;
    let nodes = grid.interior()?;
    if nodes.is_empty() {
        return Err(Error::DegenerateGrid("no interior nodes".into()));
    }
    let mut out = Vec::with_capacity(nodes.len());
    for n in nodes {
        let mut fa = [[ZERO; 2]; 3];
        let mut am = [[ZERO; 2]; 3];
        let mut ge = [ZERO; 2];
        let mut gh = [ZERO; 2];
        for w in 0..2 {
            let ce = curl(grid, &fq.e, n, w);
            let ch = curl(grid, &fq.h, n, w);
            for ax in 0..3 {
                let dh = grid.central_diff(coeff(&fq.h[ax], w), 3, n);
                let de = grid.central_diff(coeff(&fq.e[ax], w), 3, n);
                fa[ax][w] = ce[ax] + dh * pc.mu0 + coeff(&fq.jg[ax], w)[n];
                am[ax][w] = ch[ax] - de * pc.eps0 - coeff(&fq.je[ax], w)[n];
            }
            ge[w] = div(grid, &fq.e, n, w) - coeff(&fq.rho_e, w)[n];
            gh[w] = div(grid, &fq.h, n, w) - coeff(&fq.rho_g, w)[n];
        }
        out.push((n, fa, am, ge, gh));
    }
    Ok(out)
}

fn vec_modulus(v: &NodeVec) -> f64 {
    v.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scalar_modulus(v: &[Complex64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Max over interior nodes of the quaternion modulus of each residual.
pub fn generalized_maxwell_residual(
    fq: &FieldQuaternion,
    pc: &PhysicalConstants,
) -> Result<GeneralizedResidual> {
    let mut r = GeneralizedResidual::default();
    for (_, fa, am, ge, gh) in residual_nodes(fq, pc)? {
        r.faraday = r.faraday.max(vec_modulus(&fa));
        r.ampere = r.ampere.max(vec_modulus(&am));
        r.gauss_e = r.gauss_e.max(scalar_modulus(&ge));
        r.gauss_h = r.gauss_h.max(scalar_modulus(&gh));
    }
    Ok(r)
}

/// Residual norms split by parity component: `out[c][eq]` is the max-norm
/// of equation `eq` (Faraday, Ampere, Gauss E, Gauss H) restricted to
/// component `c + 1`.
pub fn residual_by_component(
    fq: &FieldQuaternion,
    pc: &PhysicalConstants,
) -> Result<[[f64; 4]; 4]> {
    // component 1 = Re(one), 2 = -Im(one), 3 = Re(j), 4 = -Im(j)
    let pick = |z: &[Complex64; 2], c: usize| -> f64 {
        match c {
            0 => z[0].re,
            1 => -z[0].im,
            2 => z[1].re,
            _ => -z[1].im,
        }
    };
    let mut out = [[0.0f64; 4]; 4];
    for (_, fa, am, ge, gh) in residual_nodes(fq, pc)? {
        for (c, row) in out.iter_mut().enumerate() {
            let vn = |v: &NodeVec| v.iter().map(|z| pick(z, c).powi(2)).sum::<f64>().sqrt();
            row[0] = row[0].max(vn(&fa));
            row[1] = row[1].max(vn(&am));
            row[2] = row[2].max(pick(&ge, c).abs());
            row[3] = row[3].max(pick(&gh, c).abs());
        }
    }
    Ok(out)
}

/// Complex vector field `Phi = F + F~` split into its two parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Biquaternion3Field {
    pub grid: Grid,
    pub f: [Vec<Complex64>; 3],
    pub f_tilde: [Vec<Complex64>; 3],
}

fn combine(
    a: &VecField,
    b: &VecField,
    scale_a: Complex64,
    scale_b: Complex64,
) -> [Vec<Complex64>; 3] {
    [0, 1, 2].map(|ax| {
        a[ax]
            .iter()
            .zip(&b[ax])
            .map(|(&x, &y)| scale_a * x + scale_b * y)
            .collect()
    })
}

impl Biquaternion3Field {
    /// `F = E[1] + i H[1]`, `F~ = H[2] + i E[2]`.
    pub fn literal(grid: &Grid, c: &Components) -> Result<Self> {
        Self::with_scale(grid, c, 1.0)
    }

    /// Riemann-Silberstein scaling `F = E[1] + i c mu0 H[1]`, `F~ = c mu0 H[2] + i E[2]`.
    pub fn riemann_silberstein(
        grid: &Grid,
        c: &Components,
        pc: &PhysicalConstants,
    ) -> Result<Self> {
        Self::with_scale(grid, c, pc.c * pc.mu0)
    }

    fn with_scale(grid: &Grid, c: &Components, s: f64) -> Result<Self> {
        check_xyzt(grid)?;
        if let Some(&bad) = c.lengths().iter().find(|&&l| l != grid.len()) {
            return Err(Error::ShapeMismatch {
                expected: grid.shape(),
                got: vec![bad],
            });
        }
        let one = Complex64::from(1.0);
        Ok(Self {
            grid: grid.clone(),
            f: combine(&c.e[0], &c.h[0], one, I * s),
            f_tilde: combine(&c.h[1], &c.e[1], Complex64::from(s), I),
        })
    }

    /// `Phi = F + F~` per axis.
    pub fn phi(&self) -> [Vec<Complex64>; 3] {
        [0, 1, 2].map(|ax| {
            self.f[ax]
                .iter()
                .zip(&self.f_tilde[ax])
                .map(|(a, b)| a + b)
                .collect()
        })
    }
}

/// Which gradient operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradientMode {
    /// `sum_k e_k d_k Phi`.
    Spatial,
    /// Spatial plus `e0 (1/(ic)) d_t Phi`.
    Spacetime,
}

/// Quaternion-valued result of a gradient at interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatField {
    pub nodes: Vec<usize>,
    pub values: Vec<Quaternion>,
}

impl QuatField {
    pub fn max_scalar(&self) -> f64 {
        self.values
            .iter()
            .map(|q| q.scalar().norm())
            .fold(0.0, f64::max)
    }

    pub fn max_vector(&self) -> f64 {
        self.values
            .iter()
            .map(|q| q.vector().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(Quaternion::modulus)
            .fold(0.0, f64::max)
    }
}

/// Left gradient of the vector biquaternion under the Levi-Civita table:
/// scalar part `div Phi`, vector part `curl Phi`, plus `(1/(ic)) d_t Phi`
/// in the vector part for [`GradientMode::Spacetime`].
pub fn biquat_gradient(
    phi: &Biquaternion3Field,
    mode: GradientMode,
    pc: &PhysicalConstants,
) -> Result<QuatField> {
    let grid = &phi.grid;
    let nodes = grid.interior()?;
    if nodes.is_empty() {
        return Err(Error::DegenerateGrid("no interior nodes".into()));
    }
    let field = phi.phi();
    let ic = I * pc.c;
    let values = nodes
        .iter()
        .map(|&n| {
            let mut q = Quaternion::zero(QuatBasis::LeviCivita);
            // sum over k, j of d_k Phi_j e_k e_j, using the table directly
            for k in 0..3 {
                for (j, comp) in field.iter().enumerate() {
                    let d = grid.central_diff(comp, k, n);
                    let (sign, idx) =
                        crate::algebra::unit_product(QuatBasis::LeviCivita, k + 1, j + 1);
                    q.coeffs[idx] += d * f64::from(sign);
                }
            }
            if mode == GradientMode::Spacetime {
                for (j, comp) in field.iter().enumerate() {
                    q.coeffs[j + 1] += grid.central_diff(comp, 3, n) / ic;
                }
            }
            q
        })
        .collect();
    Ok(QuatField { nodes, values })
}

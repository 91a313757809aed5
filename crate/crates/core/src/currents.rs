//! Cavity field functions, Lagrangian, Noether currents, charges and spin.
//!
//! For mode `alpha` and sign family `sigma = +-1` the field functions are
//!
//! ```text
//! u1 = sqrt(eps0) A_E sin(kz) [q + sigma i q''_h]
//! u2 = sqrt(mu0)  A_H cos(kz) [-q'_h + sigma (i/omega) dq/dt]
//! ```
//!
//! built from the harmonic antiderivatives of [`crate::cavity`]. The fourth
//! coordinate is `x4 = ict`, so `d4 = (1/(ic)) d/dt`, and the Lagrangian is
//! `sum (d3 u d3 u* + d4 u d4 u*) - K u u*`. In the 1D geometry the
//! transverse current components `mu = 1, 2` are exactly zero.
//!
//! Currents have two implementations: closed forms (the primary route) and
//! a generic route that differentiates the Lagrangian with respect to its
//! derivative slots and takes field derivatives by five-point differences.

use nalgebra::Matrix2;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::cavity::{self, Cavity, CavityMode};
use crate::grid::Grid;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Sign family of the field functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignFamily {
    #[default]
    Plus,
    Minus,
}

impl SignFamily {
    pub fn sigma(self) -> f64 {
        match self {
            SignFamily::Plus => 1.0,
            SignFamily::Minus => -1.0,
        }
    }
}

/// Which current family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    J1,
    J2,
    /// `j1 + j2`.
    Total,
}

/// The field functions `u^{s, sigma}_alpha` of a cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldFunctionSet {
    pub cavity: Cavity,
    pub sign: SignFamily,
}

/// Value and first derivatives of `u1`, `u2` for one mode at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeJet {
    pub u: [Complex64; 2],
    /// `du/dz`.
    pub dz: [Complex64; 2],
    /// `du/dt`.
    pub dt: [Complex64; 2],
}

impl FieldFunctionSet {
    pub fn new(cavity: Cavity, sign: SignFamily) -> Self {
        Self { cavity, sign }
    }

    fn c(&self) -> f64 {
        self.cavity.constants.c
    }

    /// Spatial amplitudes `(sqrt(eps0) A_E, sqrt(mu0) A_H)`; both equal
    /// `sqrt(2 omega^2 m / V)`.
    pub fn amplitudes(&self, m: &CavityMode) -> (f64, f64) {
        let pc = &self.cavity.constants;
        (pc.eps0.sqrt() * m.a_e, pc.mu0.sqrt() * m.a_h)
    }

    /// Temporal factors `(T1, T2)` and their time derivatives.
    pub fn temporal(&self, m: &CavityMode, t: f64) -> ([Complex64; 2], [Complex64; 2]) {
        let s = self.sign.sigma();
        let q = cavity::q_mode(t, m);
        let qd = cavity::q_dot(t, m);
        let qdd = cavity::q_ddot(t, m);
        let qp = cavity::q_prime_harmonic(t, m);
        let qpp = cavity::q_dprime_harmonic(t, m);
        let w = m.omega;
        let t1 = q + I * s * qpp;
        let t2 = -qp + I * (s / w) * qd;
        // d/dt q'_h = omega q and d/dt q''_h = omega q'_h
        let t1d = qd + I * s * w * qp;
        let t2d = -(q * w) + I * (s / w) * qdd;
        ([t1, t2], [t1d, t2d])
    }

    /// Closed-form value and derivatives of mode `idx` at `(z, t)`.
    pub fn jet(&self, idx: usize, z: f64, t: f64) -> ModeJet {
        let m = &self.cavity.modes[idx];
        let (a1, a2) = self.amplitudes(m);
        let (sn, cs) = self.cavity.profile(m, z);
        let ([t1, t2], [t1d, t2d]) = self.temporal(m, t);
        ModeJet {
            u: [t1 * (a1 * sn), t2 * (a2 * cs)],
            dz: [t1 * (a1 * m.k * cs), t2 * (-a2 * m.k * sn)],
            dt: [t1d * (a1 * sn), t2d * (a2 * cs)],
        }
    }

    /// `u^{s}_alpha(z, t)` for `s` in 1..=2 and mode position `idx`.
    pub fn u(&self, s: usize, idx: usize, z: f64, t: f64) -> Result<Complex64> {
        if !(1..=2).contains(&s) {
            return Err(Error::IndexOutOfRange {
                index: s as i64,
                lo: 1,
                hi: 2,
            });
        }
        if idx >= self.cavity.modes.len() {
            return Err(Error::IndexOutOfRange {
                index: idx as i64,
                lo: 0,
                hi: self.cavity.modes.len() as i64 - 1,
            });
        }
        Ok(self.jet(idx, z, t).u[s - 1])
    }

    fn jets(&self, z: f64, t: f64) -> impl Iterator<Item = ModeJet> + '_ {
        (0..self.cavity.modes.len()).map(move |i| self.jet(i, z, t))
    }

    /// `8 i e / (hbar c^2 V)`.
    fn prefactor(&self) -> Complex64 {
        let pc = &self.cavity.constants;
        I * (8.0 * pc.e_charge / (pc.hbar * pc.c * pc.c * self.cavity.volume))
    }

    /// `ie / (hbar c)`.
    fn generic_prefactor(&self) -> Complex64 {
        let pc = &self.cavity.constants;
        I * (pc.e_charge / (pc.hbar * pc.c))
    }
}

/// Lagrangian mass factor and infinitesimal operator of the dual rotation.
#[derive(Clone)]
pub struct NoetherContext {
    /// `K(z, t)`; defaults to zero.
    pub k_mass: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    /// Infinitesimal operator acting on `(u1, u2)`; defaults to `[[0, 1], [-1, 0]]`.
    pub i_matrix: Matrix2<f64>,
}

impl NoetherContext {
    pub fn with_constant_k(k: f64) -> Self {
        Self {
            k_mass: Arc::new(move |_, _| k),
            ..Self::default()
        }
    }
}

impl Default for NoetherContext {
    fn default() -> Self {
        Self {
            k_mass: Arc::new(|_, _| 0.0),
            i_matrix: Matrix2::new(0.0, 1.0, -1.0, 0.0),
        }
    }
}

impl fmt::Debug for NoetherContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NoetherContext")
            .field("i_matrix", &self.i_matrix)
            .finish_non_exhaustive()
    }
}

/// Derivative slots of the Lagrangian for one field function, with the
/// conjugate field treated as an independent variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slots {
    pub u: Complex64,
    pub d3: Complex64,
    pub d4: Complex64,
    pub u_c: Complex64,
    pub d3_c: Complex64,
    pub d4_c: Complex64,
}

impl Slots {
    /// Slots of a field from its value and `(d/dz, d/dt)` derivatives.
    pub fn from_derivatives(u: Complex64, dz: Complex64, dt: Complex64, c: f64) -> Self {
        let ic = I * c;
        Self {
            u,
            d3: dz,
            d4: dt / ic,
            u_c: u.conj(),
            d3_c: dz.conj(),
            d4_c: dt.conj() / ic,
        }
    }
}

/// `sum (d3 u d3 u* + d4 u d4 u*) - K u u*` over the given slots.
pub fn lagrangian_from_slots(slots: &[Slots], k: f64) -> Complex64 {
    slots
        .iter()
        .map(|s| s.d3 * s.d3_c + s.d4 * s.d4_c - s.u * s.u_c * k)
        .sum()
}

/// Lagrangian slots of every field function with closed-form derivatives.
pub fn slots_exact(ffs: &FieldFunctionSet, z: f64, t: f64) -> Vec<Slots> {
    let c = ffs.c();
    ffs.jets(z, t)
        .flat_map(|j| (0..2).map(move |s| Slots::from_derivatives(j.u[s], j.dz[s], j.dt[s], c)))
        .collect()
}

/// Lagrangian density at `(z, t)` from closed-form derivatives.
pub fn lagrangian_density(ffs: &FieldFunctionSet, ctx: &NoetherContext, z: f64, t: f64) -> f64 {
    lagrangian_from_slots(&slots_exact(ffs, z, t), (ctx.k_mass)(z, t)).re
}

/// Max over field functions of `|d_zz u + d_44 u + K u| / (k^2 |u|)`, the
/// Euler-Lagrange residual relative to the size of its terms.
pub fn euler_lagrange_residual(
    ffs: &FieldFunctionSet,
    ctx: &NoetherContext,
    z: f64,
    t: f64,
) -> f64 {
    let c = ffs.c();
    let kk = (ctx.k_mass)(z, t);
    let mut worst: f64 = 0.0;
    for (idx, m) in ffs.cavity.modes.iter().enumerate() {
        let j = ffs.jet(idx, z, t);
        for s in 0..2 {
            // u is a product of a spatial and a temporal harmonic, so the
            // second derivatives follow from the characteristic roots
            let uzz = j.u[s] * (-(m.k * m.k));
            let utt = j.u[s] * (-(m.omega * m.omega));
            let r = uzz - utt / (c * c) + j.u[s] * kk;
            let scale = m.k * m.k * j.u[s].norm();
            if scale > 0.0 {
                worst = worst.max(r.norm() / scale);
            }
        }
    }
    worst
}

/// Component `mu` (1..=4) of the first current family in closed form.
///
/// `j3 = 0` and `j4 = (8ie/(hbar c^2 V)) sum m omega^3 (|C1|^2 - |C2|^2)`.
pub fn current_j1(ffs: &FieldFunctionSet, mu: usize, _z: f64, _t: f64) -> Result<Complex64> {
    check_mu(mu)?;
    if mu != 4 {
        return Ok(ZERO);
    }
    let p = ffs.prefactor();
    Ok(ffs
        .cavity
        .modes
        .iter()
        .map(|m| p * (m.mass * m.omega.powi(3) * (m.c1.norm_sqr() - m.c2.norm_sqr())))
        .sum())
}

/// Component `mu` (1..=4) of the second current family in closed form.
///
/// `j3 = -(8ie/(hbar c^2 V)) sum m omega^3 sin(2kz) [C1 C2* e^{2i omega t} + c.c.]`,
/// `j4 = (8ie/(hbar c^2 V)) sum m omega^3 cos(2kz) [C1 C2* e^{2i omega t} - c.c.]`.
pub fn current_j2(ffs: &FieldFunctionSet, mu: usize, z: f64, t: f64) -> Result<Complex64> {
    check_mu(mu)?;
    if mu < 3 {
        return Ok(ZERO);
    }
    let p = ffs.prefactor();
    Ok(ffs
        .cavity
        .modes
        .iter()
        .map(|m| {
            let x = cross_term(m, t);
            let (s2, c2) = double_profile(&ffs.cavity, m, z);
            let w3 = m.mass * m.omega.powi(3);
            if mu == 3 {
                -p * w3 * s2 * (x + x.conj())
            } else {
                p * w3 * c2 * (x - x.conj())
            }
        })
        .sum())
}

/// Closed-form current of a family.
pub fn current(
    ffs: &FieldFunctionSet,
    family: Family,
    mu: usize,
    z: f64,
    t: f64,
) -> Result<Complex64> {
    Ok(match family {
        Family::J1 => current_j1(ffs, mu, z, t)?,
        Family::J2 => current_j2(ffs, mu, z, t)?,
        Family::Total => current_j1(ffs, mu, z, t)? + current_j2(ffs, mu, z, t)?,
    })
}

fn check_mu(mu: usize) -> Result<()> {
    if !(1..=4).contains(&mu) {
        return Err(Error::IndexOutOfRange {
            index: mu as i64,
            lo: 1,
            hi: 4,
        });
    }
    Ok(())
}

/// `C1 C2* e^{2 i omega t}`.
fn cross_term(m: &CavityMode, t: f64) -> Complex64 {
    m.c1 * m.c2.conj() * Complex64::from_polar(1.0, 2.0 * m.omega * t)
}

/// `(sin 2kz, cos 2kz)`.
fn double_profile(cav: &Cavity, m: &CavityMode, z: f64) -> (f64, f64) {
    let x = 2.0 * f64::from(m.alpha) * (z / cav.length);
    (cavity::sin_pi(x), cavity::cos_pi(x))
}

/// Step sizes `(hz, ht)` for the generic route.
fn fd_steps(ffs: &FieldFunctionSet) -> (f64, f64) {
    let kmax = ffs
        .cavity
        .modes
        .iter()
        .map(|m| m.k)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let wmax = ffs
        .cavity
        .modes
        .iter()
        .map(|m| m.omega)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    (1e-3 / kmax, 1e-3 / wmax)
}

fn five_point<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - f(x - h) * 8.0 + f(x + h) * 8.0 - f(x + 2.0 * h)) / (12.0 * h)
}

/// Lagrangian slots of every field function at `(z, t)` with field
/// derivatives taken by five-point differences.
pub fn slots_numeric(ffs: &FieldFunctionSet, z: f64, t: f64) -> Vec<Slots> {
    let (hz, ht) = fd_steps(ffs);
    let c = ffs.c();
    let mut out = Vec::with_capacity(2 * ffs.cavity.modes.len());
    for idx in 0..ffs.cavity.modes.len() {
        for s in 0..2 {
            let u = ffs.jet(idx, z, t).u[s];
            let dz = five_point(|x| ffs.jet(idx, x, t).u[s], z, hz);
            let dt = five_point(|x| ffs.jet(idx, z, x).u[s], t, ht);
            out.push(Slots::from_derivatives(u, dz, dt, c));
        }
    }
    out
}

/// Which slot of a field function to differentiate the Lagrangian by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// `d_mu u`.
    Field(usize),
    /// `d_mu u*`.
    Conjugate(usize),
}

/// `dL / d(slot)` for field function `f`, exploiting that the Lagrangian is
/// linear in each derivative slot.
pub fn lagrangian_slot_derivative(slots: &[Slots], k: f64, f: usize, slot: Slot) -> Complex64 {
    let mut bumped = slots.to_vec();
    let target = &mut bumped[f];
    let cell = match slot {
        Slot::Field(3) => &mut target.d3,
        Slot::Field(_) => &mut target.d4,
        Slot::Conjugate(3) => &mut target.d3_c,
        Slot::Conjugate(_) => &mut target.d4_c,
    };
    let delta = Complex64::from(cell.norm().max(1.0));
    *cell += delta;
    (lagrangian_from_slots(&bumped, k) - lagrangian_from_slots(slots, k)) / delta
}

/// Current component from the Noether definitions:
///
/// ```text
/// j1_mu = -(ie/hbar c) sum dL/d(d_mu u) u + (ie/hbar c) sum dL/d(d_mu u*) u*
/// j2_mu = -(ie/hbar c) sum dL/d(d_mu u) u - (ie/hbar c) sum dL/d(d_mu u*) u*
/// ```
pub fn current_generic(
    ffs: &FieldFunctionSet,
    ctx: &NoetherContext,
    family: Family,
    mu: usize,
    z: f64,
    t: f64,
) -> Result<Complex64> {
    check_mu(mu)?;
    if mu < 3 {
        return Ok(ZERO);
    }
    current_from_slots(
        ffs,
        &slots_numeric(ffs, z, t),
        (ctx.k_mass)(z, t),
        family,
        mu,
    )
}

/// Noether current of `family` from precomputed slots (`mu` in 3..=4).
pub fn current_from_slots(
    ffs: &FieldFunctionSet,
    slots: &[Slots],
    k: f64,
    family: Family,
    mu: usize,
) -> Result<Complex64> {
    check_mu(mu)?;
    if mu < 3 {
        return Ok(ZERO);
    }
    if family == Family::Total {
        return Ok(current_from_slots(ffs, slots, k, Family::J1, mu)?
            + current_from_slots(ffs, slots, k, Family::J2, mu)?);
    }
    let p = ffs.generic_prefactor();
    let sign = if family == Family::J1 { 1.0 } else { -1.0 };
    Ok((0..slots.len())
        .map(|f| {
            let a = lagrangian_slot_derivative(slots, k, f, Slot::Field(mu)) * slots[f].u;
            let b = lagrangian_slot_derivative(slots, k, f, Slot::Conjugate(mu)) * slots[f].u_c;
            -p * a + p * b * sign
        })
        .sum())
}

/// Noether current with closed-form field derivatives in the slots.
pub fn current_noether_exact(
    ffs: &FieldFunctionSet,
    ctx: &NoetherContext,
    family: Family,
    mu: usize,
    z: f64,
    t: f64,
) -> Result<Complex64> {
    current_from_slots(ffs, &slots_exact(ffs, z, t), (ctx.k_mass)(z, t), family, mu)
}

/// The two terms `(dj3/dz, (1/(ic)) dj4/dt)` of the continuity equation in
/// closed form.
pub fn continuity_terms(
    ffs: &FieldFunctionSet,
    family: Family,
    z: f64,
    t: f64,
) -> (Complex64, Complex64) {
    if family == Family::J1 {
        // j3 vanishes and j4 is constant
        return (ZERO, ZERO);
    }
    let p = ffs.prefactor();
    let ic = I * ffs.c();
    let mut a = ZERO;
    let mut b = ZERO;
    for m in &ffs.cavity.modes {
        let x = cross_term(m, t);
        let (_, c2) = double_profile(&ffs.cavity, m, z);
        let w3 = m.mass * m.omega.powi(3);
        a += -p * w3 * (2.0 * m.k) * c2 * (x + x.conj());
        // d/dt [X - X*] = 2 i omega (X + X*)
        b += p * w3 * c2 * (I * (2.0 * m.omega)) * (x + x.conj()) / ic;
    }
    (a, b)
}

/// Continuity residual over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityReport {
    /// `max |dj3/dz + (1/(ic)) dj4/dt|`.
    pub max_abs: f64,
    /// `max (|dj3/dz| + |(1/(ic)) dj4/dt|)`.
    pub scale: f64,
}

impl ContinuityReport {
    /// `max_abs / scale`, zero when both terms vanish everywhere.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.max_abs / self.scale
        }
    }
}

/// Continuity residual of a family over every node of a `(z, t)` grid;
/// `j4_scale` multiplies the time term (1 for the physical currents).
pub fn continuity_residual_scaled(
    ffs: &FieldFunctionSet,
    grid: &Grid,
    family: Family,
    j4_scale: f64,
) -> Result<ContinuityReport> {
    if grid.rank() != 2 {
        return Err(Error::ShapeMismatch {
            expected: vec![2],
            got: vec![grid.rank()],
        });
    }
    grid.require_differentiable(&[0, 1])?;
    let mut rep = ContinuityReport {
        max_abs: 0.0,
        scale: 0.0,
    };
    for n in 0..grid.len() {
        let p = grid.coords(n);
        let (a, b) = continuity_terms(ffs, family, p[0], p[1]);
        let b = b * j4_scale;
        rep.max_abs = rep.max_abs.max((a + b).norm());
        rep.scale = rep.scale.max(a.norm() + b.norm());
    }
    Ok(rep)
}

/// Continuity residual of the physical currents.
pub fn continuity_residual(
    ffs: &FieldFunctionSet,
    grid: &Grid,
    family: Family,
) -> Result<ContinuityReport> {
    continuity_residual_scaled(ffs, grid, family, 1.0)
}

/// Charge component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChargeComponent {
    /// `-\int [dL/d(d4 u) u - dL/d(d4 u*) u*] d^3x`.
    Q1,
    /// `Q2 = -i Q'2` with `Q'2 = i \int [dL/d(d4 u) u + dL/d(d4 u*) u*] d^3x`.
    Q2,
}

/// Spatial integrals `\int_0^L sin^2` and `\int_0^L cos^2` are both `L/2`
/// for every mode; with transverse area `V/L` each field function
/// contributes `V/2` times its temporal bracket.
fn charge_brackets(ffs: &FieldFunctionSet, t: f64) -> (Complex64, Complex64) {
    let ic = I * ffs.c();
    let half_v = ffs.cavity.volume / 2.0;
    let mut minus = ZERO;
    let mut plus = ZERO;
    for m in &ffs.cavity.modes {
        let (a1, a2) = ffs.amplitudes(m);
        let (tv, td) = ffs.temporal(m, t);
        for (s, a) in [a1, a2].into_iter().enumerate() {
            // dL/d(d4 u) = d4 u* = conj(du/dt)/(ic), dL/d(d4 u*) = d4 u = (du/dt)/(ic)
            let x = td[s].conj() / ic * tv[s];
            let y = td[s] / ic * tv[s].conj();
            minus += (x - y) * (a * a * half_v);
            plus += (x + y) * (a * a * half_v);
        }
    }
    (minus, plus)
}

/// Sum of the magnitudes of the terms entering the charge integrals.
///
/// A cancellation-free size against which a vanishing charge (for example
/// real standing waves, where `Q = 0`) is measured.
pub fn charge_scale(ffs: &FieldFunctionSet, t: f64) -> f64 {
    let half_v = ffs.cavity.volume / 2.0;
    let c = ffs.c();
    ffs.cavity
        .modes
        .iter()
        .map(|m| {
            let (a1, a2) = ffs.amplitudes(m);
            let (tv, td) = ffs.temporal(m, t);
            [a1, a2]
                .iter()
                .enumerate()
                .map(|(s, a)| 2.0 * td[s].norm() * tv[s].norm() / c * a * a * half_v)
                .sum::<f64>()
        })
        .sum()
}

/// Charge component at time `t`, with exact z-integrals.
pub fn charge_q(ffs: &FieldFunctionSet, component: ChargeComponent, t: f64) -> Complex64 {
    let (minus, plus) = charge_brackets(ffs, t);
    match component {
        ChargeComponent::Q1 => -minus,
        ChargeComponent::Q2 => -I * (I * plus),
    }
}

/// `Q'2 = i Q2`.
pub fn charge_q2_prime(ffs: &FieldFunctionSet, t: f64) -> Complex64 {
    I * charge_q(ffs, ChargeComponent::Q2, t)
}

/// Complex charge `Q = Q1 + i Q2`.
pub fn total_charge(ffs: &FieldFunctionSet, t: f64) -> Complex64 {
    charge_q(ffs, ChargeComponent::Q1, t) + I * charge_q(ffs, ChargeComponent::Q2, t)
}

/// Mode contribution `[d_mu u1* u2 - d_mu u2* u1]` to the spin density.
fn spin_bracket(j: &ModeJet, mu: usize, c: f64) -> Complex64 {
    let d = |s: usize| match mu {
        3 => j.dz[s].conj(),
        _ => j.dt[s].conj() / (I * c),
    };
    d(0) * j.u[1] - d(1) * j.u[0]
}

/// `S^mu_12 = sum [d_mu u1* u2 - d_mu u2* u1] + c.c.`
pub fn spin_density(ffs: &FieldFunctionSet, mu: usize, z: f64, t: f64) -> Result<f64> {
    check_mu(mu)?;
    if mu < 3 {
        return Ok(0.0);
    }
    let c = ffs.c();
    Ok(ffs
        .jets(z, t)
        .map(|j| 2.0 * spin_bracket(&j, mu, c).re)
        .sum())
}

/// Spin density from the generic Noether form
/// `-[sum dL/d(d_mu U*) Y] + c.c.` with `Y = I U*`.
///
/// The conjugate in `Y` fixes the normalization so that the generic form
/// agrees with [`spin_density`] at `mu = 4`; at `mu = 3` the two differ by
/// an overall sign.
pub fn spin_density_generic(
    ffs: &FieldFunctionSet,
    ctx: &NoetherContext,
    mu: usize,
    z: f64,
    t: f64,
) -> Result<f64> {
    check_mu(mu)?;
    if mu < 3 {
        return Ok(0.0);
    }
    let slots = slots_numeric(ffs, z, t);
    let k = (ctx.k_mass)(z, t);
    let im = &ctx.i_matrix;
    let mut acc = ZERO;
    for pair in 0..slots.len() / 2 {
        let f = [2 * pair, 2 * pair + 1];
        let uc = [slots[f[0]].u_c, slots[f[1]].u_c];
        for (r, &fr) in f.iter().enumerate() {
            let y = uc[0] * im[(r, 0)] + uc[1] * im[(r, 1)];
            acc += lagrangian_slot_derivative(&slots, k, fr, Slot::Conjugate(mu)) * y;
        }
    }
    Ok(-2.0 * acc.re)
}

/// Spirality `S^4_3 = -(i/c) \int S^4_12 d^3x`, with the z-integral of each
/// mode's `sin(kz) cos(kz)` profile taken exactly.
pub fn spirality(ffs: &FieldFunctionSet, t: f64) -> Complex64 {
    let c = ffs.c();
    let area = ffs.cavity.volume / ffs.cavity.length;
    let total: f64 = ffs
        .cavity
        .modes
        .iter()
        .map(|m| {
            let (a1, a2) = ffs.amplitudes(m);
            let (tv, td) = ffs.temporal(m, t);
            let bracket =
                (td[0].conj() * tv[1] * a1 * a2 - td[1].conj() * tv[0] * a1 * a2) / (I * c);
            // \int_0^L sin(kz) cos(kz) dz = sin^2(kL) / (2k)
            let s = cavity::sin_pi(f64::from(m.alpha));
            2.0 * bracket.re * s * s / (2.0 * m.k)
        })
        .sum();
    -I / c * area * total
}

/// `(1/c) \int |S^4_12| d^3x` bounded mode by mode; the reference scale for
/// spirality drift and additivity checks.
pub fn spirality_scale(ffs: &FieldFunctionSet, t: f64) -> f64 {
    let c = ffs.c();
    let area = ffs.cavity.volume / ffs.cavity.length;
    ffs.cavity
        .modes
        .iter()
        .map(|m| {
            let (a1, a2) = ffs.amplitudes(m);
            let (tv, td) = ffs.temporal(m, t);
            let bracket = (td[0].conj() * tv[1] - td[1].conj() * tv[0]) * (a1 * a2) / (I * c);
            // \int_0^L |sin(kz) cos(kz)| dz = L / pi
            2.0 * bracket.re.abs() * ffs.cavity.length / std::f64::consts::PI
        })
        .sum::<f64>()
        * area
        / c
}

/// Dual spin vector `S^4_i = eps_ijk S^4_jk`; only the propagation
/// component is nonzero in this geometry.
pub fn spin_dual_vector(ffs: &FieldFunctionSet, t: f64) -> [Complex64; 3] {
    [ZERO, ZERO, spirality(ffs, t)]
}

/// `sqrt(sum_s sum_alpha \int_0^L |u|^2 dz)` with exact z-integrals.
pub fn hilbert_norm(ffs: &FieldFunctionSet, t: f64) -> f64 {
    norm_sq_with(ffs, |m| ffs.temporal(m, t).0).sqrt()
}

/// Norm of the pointwise difference of the field functions at two times.
pub fn hilbert_distance(ffs: &FieldFunctionSet, t1: f64, t2: f64) -> f64 {
    norm_sq_with(ffs, |m| {
        let a = ffs.temporal(m, t1).0;
        let b = ffs.temporal(m, t2).0;
        [a[0] - b[0], a[1] - b[1]]
    })
    .sqrt()
}

fn norm_sq_with<F: Fn(&CavityMode) -> [Complex64; 2]>(ffs: &FieldFunctionSet, temporal: F) -> f64 {
    let half_l = ffs.cavity.length / 2.0;
    ffs.cavity
        .modes
        .iter()
        .map(|m| {
            let (a1, a2) = ffs.amplitudes(m);
            let tv = temporal(m);
            half_l * (a1 * a1 * tv[0].norm_sqr() + a2 * a2 * tv[1].norm_sqr())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;

    #[test]
    fn transverse_components_vanish() {
        let cav = Cavity::new(PhysicalConstants::UNIT, 1.0, 1.0)
            .unwrap()
            .with_mode(1, 1.0, Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0))
            .unwrap();
        let ffs = FieldFunctionSet::new(cav, SignFamily::Plus);
        for mu in 1..3 {
            assert_eq!(current_j1(&ffs, mu, 0.3, 0.1).unwrap(), ZERO);
            assert_eq!(current_j2(&ffs, mu, 0.3, 0.1).unwrap(), ZERO);
        }
        assert!(current_j1(&ffs, 5, 0.3, 0.1).is_err());
    }
}

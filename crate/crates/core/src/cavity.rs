//! Closed-form standing-wave solutions of the 1D perfectly conducting cavity.
//!
//! The electric field points along x, the magnetic field along y, and both
//! depend on `(z, t)` only. Mode `alpha` has `k = alpha pi / L`,
//! `omega = c k` and amplitude `q(t) = C1 e^{i omega t} + C2 e^{-i omega t}`.
//!
//! Two antiderivative conventions are provided for `q' = omega \int q` and
//! `q'' = omega \int q'`:
//!
//! * *literal*: integrals from `0` to `t`, so `q'(0) = q''(0) = 0` and the
//!   integration constants are kept;
//! * *harmonic*: the oscillating antiderivatives without constants,
//!   `q'_h = -q_dot / omega` and `q''_h = -q`.
//!
//! [`Branch::Second`] builds the second solution from the harmonic
//! antiderivatives so that it satisfies Maxwell's equations; it equals
//! minus the first solution. [`Branch::SecondLiteral`] keeps the integration
//! constants and the printed sign of the magnetic field, and is provided for
//! comparison only: it is not a Maxwell solution.

use nalgebra::Vector3;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::grid::{Grid, SampledField};
use crate::{Error, Result};

type CVec3 = Vector3<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `sin(pi x)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r.fract() == 0.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == 1.5 {
        -1.0
    } else {
        (PI * r).sin()
    }
}

/// `cos(pi x)`, exact at integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// One standing-wave mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    pub alpha: u32,
    /// Oscillator mass parameter, kg.
    pub mass: f64,
    pub c1: Complex64,
    pub c2: Complex64,
    /// `alpha pi / L`.
    pub k: f64,
    /// `c k`.
    pub omega: f64,
    /// `sqrt(2 omega^2 m / (V eps0))`.
    pub a_e: f64,
    /// `sqrt(2 omega^2 m / (V mu0))`.
    pub a_h: f64,
}

impl CavityMode {
    /// Magnitude ratio used to decide whether `C2 = conj(C1)`.
    pub fn is_real(&self) -> bool {
        (self.c2 - self.c1.conj()).norm()
            <= 1e-14 * (self.c1.norm() + self.c2.norm()).max(f64::MIN_POSITIVE)
    }
}

/// A cavity of length `L` and volume `V` holding a finite set of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct Cavity {
    pub constants: PhysicalConstants,
    pub length: f64,
    pub volume: f64,
    pub modes: Vec<CavityMode>,
}

impl Cavity {
    pub fn new(constants: PhysicalConstants, length: f64, volume: f64) -> Result<Self> {
        constants.validate()?;
        if !(length > 0.0 && length.is_finite() && volume > 0.0 && volume.is_finite()) {
            return Err(Error::InvalidParameter(
                "cavity length and volume must be positive".into(),
            ));
        }
        Ok(Self {
            constants,
            length,
            volume,
            modes: Vec::new(),
        })
    }

    /// Build mode `alpha` with complex amplitudes and add it.
    pub fn add_mode(
        &mut self,
        alpha: u32,
        mass: f64,
        c1: Complex64,
        c2: Complex64,
    ) -> Result<&CavityMode> {
        let mode = self.make_mode(alpha, mass, c1, c2)?;
        self.modes.push(mode);
        Ok(self.modes.last().expect("just pushed"))
    }

    /// Builder form of [`Cavity::add_mode`].
    pub fn with_mode(
        mut self,
        alpha: u32,
        mass: f64,
        c1: Complex64,
        c2: Complex64,
    ) -> Result<Self> {
        self.add_mode(alpha, mass, c1, c2)?;
        Ok(self)
    }

    /// Real mode `q = B cos(omega t + phi)`, i.e. `C1 = B e^{i phi}/2`, `C2 = conj(C1)`.
    pub fn with_real_mode(self, alpha: u32, mass: f64, b: f64, phi: f64) -> Result<Self> {
        let c1 = Complex64::from_polar(b / 2.0, phi);
        self.with_mode(alpha, mass, c1, c1.conj())
    }

    pub fn make_mode(
        &self,
        alpha: u32,
        mass: f64,
        c1: Complex64,
        c2: Complex64,
    ) -> Result<CavityMode> {
        if alpha == 0 {
            return Err(Error::InvalidParameter(
                "mode index alpha must be positive".into(),
            ));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter("mode mass must be positive".into()));
        }
        let pc = &self.constants;
        let k = f64::from(alpha) * PI / self.length;
        let omega = pc.c * k;
        let a_e = (2.0 * omega * omega * mass / (self.volume * pc.eps0)).sqrt();
        let a_h = (2.0 * omega * omega * mass / (self.volume * pc.mu0)).sqrt();
        Ok(CavityMode {
            alpha,
            mass,
            c1,
            c2,
            k,
            omega,
            a_e,
            a_h,
        })
    }

    /// `(sin kz, cos kz)` with exact zeros at the walls.
    pub fn profile(&self, mode: &CavityMode, z: f64) -> (f64, f64) {
        let x = f64::from(mode.alpha) * (z / self.length);
        (sin_pi(x), cos_pi(x))
    }

    fn check_z(&self, z: f64) -> Result<()> {
        if !(0.0..=self.length).contains(&z) {
            return Err(Error::OutsideCavity {
                z,
                length: self.length,
            });
        }
        Ok(())
    }

    /// Electric field (along x) of the chosen branch.
    pub fn field_e(&self, z: f64, t: f64, branch: Branch) -> Result<CVec3> {
        self.check_z(z)?;
        let ex: Complex64 = self
            .modes
            .iter()
            .map(|m| {
                let (s, _) = self.profile(m, z);
                let temporal = match branch {
                    Branch::First => q_mode(t, m),
                    Branch::Second => q_dprime_harmonic(t, m),
                    Branch::SecondLiteral => q_dprime(t, m),
                };
                temporal * (m.a_e * s)
            })
            .sum();
        Ok(Vector3::new(ex, Complex64::default(), Complex64::default()))
    }

    /// Magnetic field (along y) of the chosen branch.
    pub fn field_h(&self, z: f64, t: f64, branch: Branch) -> Result<CVec3> {
        self.check_z(z)?;
        let eps0 = self.constants.eps0;
        let hy: Complex64 = self
            .modes
            .iter()
            .map(|m| {
                let (_, c) = self.profile(m, z);
                match branch {
                    Branch::First => q_dot(t, m) * (m.a_e * eps0 / m.k * c),
                    Branch::Second => q_prime_harmonic(t, m) * (m.a_h * c),
                    Branch::SecondLiteral => -q_prime(t, m) * (m.a_h * c),
                }
            })
            .sum();
        Ok(Vector3::new(Complex64::default(), hy, Complex64::default()))
    }

    /// Sample `Ex` and `Hy` over a `(z, t)` grid.
    pub fn sample(&self, branch: Branch, grid: &Grid) -> Result<SampledField> {
        check_zt(grid)?;
        let mut ex = Vec::with_capacity(grid.len());
        let mut hy = Vec::with_capacity(grid.len());
        for n in 0..grid.len() {
            let p = grid.coords(n);
            ex.push(self.field_e(p[0], p[1], branch)?[0]);
            hy.push(self.field_h(p[0], p[1], branch)?[1]);
        }
        SampledField::new(grid.clone(), vec!["Ex".into(), "Hy".into()], vec![ex, hy])
    }

    /// Max-norm Maxwell residuals `(r1, r2)` of a branch on a `(z, t)` grid.
    pub fn maxwell_residual(&self, branch: Branch, grid: &Grid) -> Result<(f64, f64)> {
        check_zt(grid)?;
        grid.require_differentiable(&[0, 1])?;
        maxwell_residual_sampled(&self.sample(branch, grid)?, &self.constants)
    }

    /// `1/2 sum (m omega^2 |q|^2 + m |q_dot|^2)`.
    pub fn hamiltonian(&self, t: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                0.5 * m.mass
                    * (m.omega * m.omega * q_mode(t, m).norm_sqr() + q_dot(t, m).norm_sqr())
            })
            .sum()
    }

    /// `1/2 \int (eps0 |E|^2 + mu0 |H|^2) dV` by composite Simpson in z
    /// with `intervals` (rounded up to even) subintervals; the transverse
    /// area is `V / L`.
    pub fn field_energy_quadrature(&self, t: f64, intervals: usize) -> Result<f64> {
        let n = (intervals.max(2) + 1) & !1;
        let h = self.length / n as f64;
        let pc = &self.constants;
        let mut acc = 0.0;
        for i in 0..=n {
            let z = if i == n { self.length } else { i as f64 * h };
            let e = self.field_e(z, t, Branch::First)?[0].norm_sqr();
            let hh = self.field_h(z, t, Branch::First)?[1].norm_sqr();
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * 0.5 * (pc.eps0 * e + pc.mu0 * hh);
        }
        Ok(acc * h / 3.0 * self.volume / self.length)
    }
}

/// Which cavity solution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `E = A_E q sin(kz)`, `H = A_E (eps0/k) q_dot cos(kz)`.
    First,
    /// `E = A_E q''_h sin(kz)`, `H = A_H q'_h cos(kz)` with harmonic antiderivatives.
    Second,
    /// `E = A_E q'' sin(kz)`, `H = -A_H q' cos(kz)` with integrals from 0; not a solution.
    SecondLiteral,
}

/// `C1 e^{i omega t} + C2 e^{-i omega t}`.
pub fn q_mode(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    m.c1 * p + m.c2 * n
}

/// `dq/dt = i omega (C1 e^{i omega t} - C2 e^{-i omega t})`.
pub fn q_dot(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    I * m.omega * (m.c1 * p - m.c2 * n)
}

/// `d^2q/dt^2` from the characteristic roots `+-i omega`.
pub fn q_ddot(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    let lp = I * m.omega;
    let ln = -I * m.omega;
    m.c1 * p * lp * lp + m.c2 * n * ln * ln
}

/// `q_ddot + omega^2 q` evaluated term by term from the characteristic
/// polynomial; vanishes identically.
pub fn q_ode_residual(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    let w2 = Complex64::from(m.omega * m.omega);
    let lp = I * m.omega;
    let ln = -I * m.omega;
    m.c1 * p * (lp * lp + w2) + m.c2 * n * (ln * ln + w2)
}

/// `omega \int_0^t q = -i C1 (e^{i omega t} - 1) + i C2 (e^{-i omega t} - 1)`.
pub fn q_prime(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    let one = Complex64::new(1.0, 0.0);
    -I * m.c1 * (p - one) + I * m.c2 * (n - one)
}

/// `omega \int_0^t q' = (C1 + C2) - q + i omega t (C1 - C2)`.
pub fn q_dprime(t: f64, m: &CavityMode) -> Complex64 {
    (m.c1 + m.c2) - q_mode(t, m) + I * (m.omega * t) * (m.c1 - m.c2)
}

/// Oscillating antiderivative `-i C1 e^{i omega t} + i C2 e^{-i omega t}`.
pub fn q_prime_harmonic(t: f64, m: &CavityMode) -> Complex64 {
    let (p, n) = phases(t, m);
    -I * m.c1 * p + I * m.c2 * n
}

/// Oscillating second antiderivative, equal to `-q`.
pub fn q_dprime_harmonic(t: f64, m: &CavityMode) -> Complex64 {
    -q_mode(t, m)
}

fn phases(t: f64, m: &CavityMode) -> (Complex64, Complex64) {
    let p = Complex64::from_polar(1.0, m.omega * t);
    (p, p.conj())
}

fn check_zt(grid: &Grid) -> Result<()> {
    if grid.rank() != 2 {
        return Err(Error::ShapeMismatch {
            expected: vec![2],
            got: vec![grid.rank()],
        });
    }
    Ok(())
}

/// Max-norms of `r1 = dEx/dz + mu0 dHy/dt` and `r2 = dHy/dz + eps0 dEx/dt`
/// over interior nodes of a `(z, t)` field with channels `Ex`, `Hy`.
pub fn maxwell_residual_sampled(
    field: &SampledField,
    pc: &PhysicalConstants,
) -> Result<(f64, f64)> {
    let grid = &field.grid;
    check_zt(grid)?;
    grid.require_differentiable(&[0, 1])?;
    let ex = field
        .channel("Ex")
        .ok_or_else(|| Error::Format("missing channel Ex".into()))?;
    let hy = field
        .channel("Hy")
        .ok_or_else(|| Error::Format("missing channel Hy".into()))?;
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    for n in grid.interior()? {
        let a = grid.central_diff(ex, 0, n) + grid.central_diff(hy, 1, n) * pc.mu0;
        let b = grid.central_diff(hy, 0, n) + grid.central_diff(ex, 1, n) * pc.eps0;
        r1 = r1.max(a.norm());
        r2 = r2.max(b.norm());
    }
    Ok((r1, r2))
}

/// Time-reversal companion `T[t f(t)] / t` of each channel.
///
/// Time reversal maps `E(t) -> E(-t)` and `H(t) -> -H(-t)` (channels whose
/// label starts with `H` are magnetic). The factor `t` cancels analytically,
/// so the companion is `-s f(-t)` with `s = +1` for electric and `-1` for
/// magnetic channels, including at `t = 0`. The time axis (last axis) must
/// be symmetric about zero.
pub fn t_reversal_companion(field: &SampledField) -> Result<SampledField> {
    let grid = &field.grid;
    let t_axis = grid.rank() - 1;
    if !grid.axes[t_axis].is_symmetric_about_zero() {
        return Err(Error::InvalidParameter(
            "time samples must be symmetric about 0".into(),
        ));
    }
    let nt = grid.axes[t_axis].len;
    let channels = field
        .labels
        .iter()
        .zip(&field.channels)
        .map(|(label, data)| {
            let s = if label.starts_with('H') { -1.0 } else { 1.0 };
            (0..data.len())
                .map(|n| {
                    let it = n % nt;
                    data[n - it + (nt - 1 - it)] * (-s)
                })
                .collect()
        })
        .collect();
    SampledField::new(grid.clone(), field.labels.clone(), channels)
}

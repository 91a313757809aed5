//! Dual and hyperbolic dual transformations of `(E, H)` pairs.
//!
//! The complex invariant `K = (E.E - H.H) + 2i E.H` uses the unconjugated
//! bilinear dot product. Under a dual rotation by `theta` it picks up
//! `exp(-2i theta)`, under a hyperbolic rotation by `vartheta` it picks up
//! `exp(2 vartheta)`.

use nalgebra::Vector3;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::{Error, Result};

pub type CVec3 = Vector3<Complex64>;

/// Electric and magnetic field vectors at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPair {
    pub e: CVec3,
    pub h: CVec3,
}

impl FieldPair {
    pub fn new(e: CVec3, h: CVec3) -> Self {
        Self { e, h }
    }

    /// Build from real components.
    pub fn real(e: [f64; 3], h: [f64; 3]) -> Self {
        let c = |v: [f64; 3]| Vector3::from(v.map(|x| Complex64::new(x, 0.0)));
        Self { e: c(e), h: c(h) }
    }

    pub fn zero() -> Self {
        Self::real([0.0; 3], [0.0; 3])
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .chain(self.h.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest absolute deviation between the two pairs, componentwise.
    pub fn max_abs_diff(&self, other: &FieldPair) -> f64 {
        (self.e - other.e)
            .iter()
            .chain((self.h - other.h).iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Reduce a dual angle into `[0, 2 pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    theta.rem_euclid(TAU)
}

/// `(sin, cos)` with exact values at multiples of `pi/2`.
fn quarter_exact_sin_cos(theta: f64) -> (f64, f64) {
    let q = theta / FRAC_PI_2;
    if q.fract() == 0.0 {
        [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)][q as usize % 4]
    } else {
        theta.sin_cos()
    }
}

/// Dual (Rainich) rotation: `E' = E cos + H sin`, `H' = H cos - E sin`.
pub fn dual_rotate(fp: &FieldPair, theta: f64) -> FieldPair {
    let (s, c) = quarter_exact_sin_cos(reduce_angle(theta));
    FieldPair {
        e: fp.e * Complex64::from(c) + fp.h * Complex64::from(s),
        h: fp.h * Complex64::from(c) - fp.e * Complex64::from(s),
    }
}

/// Parameter of a hyperbolic dual rotation.
///
/// When built from a velocity ratio `beta`, `vartheta = atanh(beta)` and the
/// originating `beta` is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParam {
    pub vartheta: f64,
    pub beta: Option<f64>,
}

impl HyperParam {
    pub fn new(vartheta: f64) -> Self {
        Self {
            vartheta,
            beta: None,
        }
    }

    pub fn from_beta(beta: f64) -> Result<Self> {
        if beta.abs() >= 1.0 || !beta.is_finite() {
            return Err(Error::Superluminal { beta });
        }
        Ok(Self {
            vartheta: beta.atanh(),
            beta: Some(beta),
        })
    }
}

/// Hyperbolic rotation: `E'' = E cosh + iH sinh`, `H'' = -iE sinh + H cosh`.
pub fn hyper_rotate(fp: &FieldPair, hp: HyperParam) -> FieldPair {
    let ch = Complex64::from(hp.vartheta.cosh());
    let ish = Complex64::new(0.0, hp.vartheta.sinh());
    FieldPair {
        e: fp.e * ch + fp.h * ish,
        h: fp.h * ch - fp.e * ish,
    }
}

fn gamma(beta: f64) -> Result<f64> {
    if beta.abs() >= 1.0 || !beta.is_finite() {
        return Err(Error::Superluminal { beta });
    }
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

/// Magnitudes after a boost along the propagation axis:
/// `((|E| + b|H|) g, (|H| - b|E|) g)` with `g = 1/sqrt(1 - b^2)`.
pub fn boost_magnitudes(abs_e: f64, abs_h: f64, beta: f64) -> Result<(f64, f64)> {
    if abs_e < 0.0 || abs_h < 0.0 {
        return Err(Error::InvalidParameter(
            "field magnitudes must be non-negative".into(),
        ));
    }
    let g = gamma(beta)?;
    Ok(((abs_e + beta * abs_h) * g, (abs_h - beta * abs_e) * g))
}

/// Vector-form boost with frame velocity `v`:
/// `E'' = (E + (H x V)/c) g`, `H'' = (H - (E x V)/c) g`.
pub fn boost_fields(fp: &FieldPair, v: &Vector3<f64>, c: f64) -> Result<FieldPair> {
    let g = Complex64::from(gamma(v.norm() / c)?);
    let vc: CVec3 = v.map(|x| Complex64::from(x / c));
    Ok(FieldPair {
        e: (fp.e + fp.h.cross(&vc)) * g,
        h: (fp.h - fp.e.cross(&vc)) * g,
    })
}

/// `K = (E.E - H.H) + 2i E.H` with bilinear dot products.
pub fn complex_invariant(fp: &FieldPair) -> Complex64 {
    let i = Complex64::i();
    (fp.e.dot(&fp.e) - fp.h.dot(&fp.h)) + i * 2.0 * fp.e.dot(&fp.h)
}

/// The pair `(E^2 - H^2, 2 E.H)` of a real field; imaginary parts are ignored.
pub fn standard_invariants(fp: &FieldPair) -> (f64, f64) {
    let e = fp.e.map(|z| z.re);
    let h = fp.h.map(|z| z.re);
    (e.dot(&e) - h.dot(&h), 2.0 * e.dot(&h))
}

/// Rotated real invariants:
/// `((E^2-H^2) cos 2t + 2E.H sin 2t, 2E.H cos 2t - (E^2-H^2) sin 2t)`.
///
/// These equal the standard invariants of `dual_rotate(fp, theta)`.
/// Imaginary parts of the input are ignored.
pub fn dual_invariants(fp: &FieldPair, theta: f64) -> (f64, f64) {
    let (a, b) = standard_invariants(fp);
    let (s, c) = (2.0 * reduce_angle(theta)).sin_cos();
    (a * c + b * s, b * c - a * s)
}

/// Hyperbolic invariants and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperInvariants {
    pub i1: f64,
    pub i2: f64,
    /// `i1 / i2`; signed infinity when `i2 = 0`, NaN when both vanish.
    pub w: f64,
}

/// `I1'' = (E^2 - H^2) e^{2 vartheta}`, `I2'' = 2 E.H e^{2 vartheta}`, `W = I1''/I2''`.
pub fn hyper_invariants(fp: &FieldPair, hp: HyperParam) -> HyperInvariants {
    let (a, b) = standard_invariants(fp);
    let s = (2.0 * hp.vartheta).exp();
    let (i1, i2) = (a * s, b * s);
    let w = if i2 != 0.0 {
        i1 / i2
    } else if i1 != 0.0 {
        f64::INFINITY.copysign(i1)
    } else {
        f64::NAN
    };
    HyperInvariants { i1, i2, w }
}

/// Quantity whose quaternion components carry a parity label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    E,
    H,
    Je,
    Jg,
    RhoE,
    RhoG,
}

impl FieldKind {
    pub const ALL: [FieldKind; 6] = [
        FieldKind::E,
        FieldKind::H,
        FieldKind::Je,
        FieldKind::Jg,
        FieldKind::RhoE,
        FieldKind::RhoG,
    ];

    fn is_electric(self) -> bool {
        matches!(self, FieldKind::E | FieldKind::Je | FieldKind::RhoE)
    }
}

/// Behaviour under space inversion or time reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Uneven,
}

/// `(P, t)` parity of component `component` (1..=4) of a quaternion quantity.
pub fn parity_classify(kind: FieldKind, component: usize) -> Result<(Parity, Parity)> {
    use Parity::{Even, Uneven};
    if !(1..=4).contains(&component) {
        return Err(Error::IndexOutOfRange {
            index: component as i64,
            lo: 1,
            hi: 4,
        });
    }
    const ELECTRIC: [(Parity, Parity); 4] = [
        (Uneven, Even),
        (Uneven, Uneven),
        (Even, Even),
        (Even, Uneven),
    ];
    const MAGNETIC: [(Parity, Parity); 4] = [
        (Uneven, Uneven),
        (Uneven, Even),
        (Even, Uneven),
        (Even, Even),
    ];
    let table = if kind.is_electric() {
        &ELECTRIC
    } else {
        &MAGNETIC
    };
    Ok(table[component - 1])
}

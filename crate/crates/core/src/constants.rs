//! Physical constants with the `c^2 eps0 mu0 = 1` consistency check.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance on `c^2 eps0 mu0 = 1`.
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// SI constants used throughout the cavity, current and quantum modules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
    /// Vacuum permeability, H/m.
    pub mu0: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values.
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        eps0: 8.8541878128e-12,
        mu0: 1.25663706212e-6,
        c: 299_792_458.0,
        hbar: 1.054571817e-34,
        e_charge: 1.602176634e-19,
    };

    /// Every constant set to one. Handy for symbolic cross-checks.
    pub const UNIT: PhysicalConstants = PhysicalConstants {
        eps0: 1.0,
        mu0: 1.0,
        c: 1.0,
        hbar: 1.0,
        e_charge: 1.0,
    };

    /// `c^2 eps0 mu0 - 1`.
    pub fn consistency_deviation(&self) -> f64 {
        self.c * self.c * self.eps0 * self.mu0 - 1.0
    }

    /// Reject non-positive values and sets violating `c^2 eps0 mu0 = 1`.
    pub fn validate(&self) -> Result<Self> {
        let all = [self.eps0, self.mu0, self.c, self.hbar, self.e_charge];
        if all.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::InvalidParameter(
                "physical constants must be positive and finite".into(),
            ));
        }
        let deviation = self.consistency_deviation();
        if deviation.abs() > CONSISTENCY_TOL {
            return Err(Error::InconsistentConstants { deviation });
        }
        Ok(*self)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_is_consistent() {
        assert!(PhysicalConstants::CODATA.validate().is_ok());
        let bad = PhysicalConstants {
            c: 3.0e8,
            ..PhysicalConstants::CODATA
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InconsistentConstants { .. })
        ));
    }
}

//! Run configuration read from a TOML file.
//!
//! ```toml
//! [constants]          # every key optional; defaults are CODATA
//! c = 299792458.0
//!
//! [cavity]
//! length = 1.0         # m
//! volume = 1.0         # m^3
//! modes = 8            # retained modes when no [[mode]] table is given
//!
//! [[mode]]
//! alpha = 1
//! mass = 1.0           # kg, optional
//! c1 = [0.5, 0.0]      # (re, im)
//! c2 = [0.5, 0.0]
//!
//! [qfield]
//! dim = 12
//! dim_cap = 4096
//!
//! [verify]
//! seed = 42
//! ```

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::cavity::Cavity;
use crate::constants::PhysicalConstants;
use crate::qfield::{DEFAULT_DIM, DEFAULT_DIM_CAP};
use crate::{Error, Result};

/// Environment variable naming a configuration file.
pub const CONFIG_ENV: &str = "DUALFIELD_CONFIG";

/// Number of retained cavity modes when none are listed.
pub const DEFAULT_MODES: u32 = 8;

/// Default seed of the randomized checks.
pub const DEFAULT_SEED: u64 = 42;

/// Optional overrides of the physical constants.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantOverrides {
    pub eps0: Option<f64>,
    pub mu0: Option<f64>,
    pub c: Option<f64>,
    pub hbar: Option<f64>,
    pub e_charge: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CavitySection {
    pub length: f64,
    pub volume: f64,
    pub modes: u32,
}

impl Default for CavitySection {
    fn default() -> Self {
        Self {
            length: 1.0,
            volume: 1.0,
            modes: DEFAULT_MODES,
        }
    }
}

/// One listed mode.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub alpha: u32,
    #[serde(default = "unit_mass")]
    pub mass: f64,
    pub c1: [f64; 2],
    pub c2: [f64; 2],
}

fn unit_mass() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QfieldSection {
    pub dim: usize,
    pub dim_cap: usize,
}

impl Default for QfieldSection {
    fn default() -> Self {
        Self {
            dim: DEFAULT_DIM,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub seed: u64,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

/// Parsed configuration.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub constants: ConstantOverrides,
    pub cavity: CavitySection,
    #[serde(rename = "mode")]
    pub modes: Vec<ModeEntry>,
    pub qfield: QfieldSection,
    pub verify: VerifySection,
}

impl Config {
    /// Parse and validate TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.constants()?;
        cfg.cavity()?;
        if cfg.qfield.dim < 2 {
            return Err(Error::Config("qfield.dim must be at least 2".into()));
        }
        Ok(cfg)
    }

    /// Read a configuration file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Load `path` if given, else the file named by [`CONFIG_ENV`], else defaults.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    /// CODATA constants with the overrides applied, validated.
    pub fn constants(&self) -> Result<PhysicalConstants> {
        let d = PhysicalConstants::CODATA;
        let o = &self.constants;
        PhysicalConstants {
            eps0: o.eps0.unwrap_or(d.eps0),
            mu0: o.mu0.unwrap_or(d.mu0),
            c: o.c.unwrap_or(d.c),
            hbar: o.hbar.unwrap_or(d.hbar),
            e_charge: o.e_charge.unwrap_or(d.e_charge),
        }
        .validate()
        .map_err(|e| Error::Config(e.to_string()))
    }

    /// The configured cavity. Without a mode list, modes `1..=modes` get
    /// `C1 = C2 = 1/(2 alpha)`.
    pub fn cavity(&self) -> Result<Cavity> {
        let bad = |e: Error| Error::Config(e.to_string());
        let mut cav =
            Cavity::new(self.constants()?, self.cavity.length, self.cavity.volume).map_err(bad)?;
        if self.modes.is_empty() {
            for alpha in 1..=self.cavity.modes {
                let c = Complex64::new(0.5 / f64::from(alpha), 0.0);
                cav.add_mode(alpha, 1.0, c, c).map_err(bad)?;
            }
        } else {
            for m in &self.modes {
                let c1 = Complex64::new(m.c1[0], m.c1[1]);
                let c2 = Complex64::new(m.c2[0], m.c2[1]);
                cav.add_mode(m.alpha, m.mass, c1, c2).map_err(bad)?;
            }
        }
        Ok(cav)
    }
}

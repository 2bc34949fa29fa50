//! Atomic-unit constants and the conversions used at I/O boundaries.
//!
//! Every length inside the crate is a multiple of the Bohr radius `a` and
//! every energy is in hartree. `E0 = hbar^2 / (2 m a^2)` is one rydberg, so
//! the recurring prefactor `2 E0` is exactly one hartree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Bohr radius in angstrom.
    pub bohr_radius_angstrom: f64,
    /// One hartree in electron-volts.
    pub hartree_ev: f64,
    /// `E0 = hbar^2 / (2 m a^2)` in hartree.
    pub e0_hartree: f64,
}

/// CODATA 2018 values.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    bohr_radius_angstrom: 0.529_177_210_903,
    hartree_ev: 27.211_386_245_988,
    e0_hartree: 0.5,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Hartree,
    #[serde(rename = "ev")]
    ElectronVolt,
    Bohr,
    Angstrom,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Hartree => "hartree",
            Unit::ElectronVolt => "eV",
            Unit::Bohr => "bohr",
            Unit::Angstrom => "angstrom",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hartree" | "ha" | "au" => Ok(Unit::Hartree),
            "ev" | "electronvolt" => Ok(Unit::ElectronVolt),
            "bohr" | "a0" => Ok(Unit::Bohr),
            "angstrom" | "a" | "å" => Ok(Unit::Angstrom),
            _ => Err(Error::UnknownUnit(s.to_owned())),
        }
    }
}

/// Converts `value` between a supported unit pair using [`CODATA`].
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    convert_with(&CODATA, value, from, to)
}

pub fn convert_with(
    constants: &PhysicalConstants,
    value: f64,
    from: Unit,
    to: Unit,
) -> Result<f64> {
    use Unit::*;
    match (from, to) {
        (a, b) if a == b => Ok(value),
        (Hartree, ElectronVolt) => Ok(value * constants.hartree_ev),
        (ElectronVolt, Hartree) => Ok(value / constants.hartree_ev),
        (Bohr, Angstrom) => Ok(value * constants.bohr_radius_angstrom),
        (Angstrom, Bohr) => Ok(value / constants.bohr_radius_angstrom),
        _ => Err(Error::UnknownUnitPair {
            from: from.to_string(),
            to: to.to_string(),
        }),
    }
}

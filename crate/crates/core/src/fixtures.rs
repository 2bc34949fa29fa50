//! Golden values from the published tables and the regression check against
//! them.
//!
//! File format: CSV lines `n1,n2,n3,quantity,value,tolerance`, `#` starts a
//! comment. `tolerance` is absolute for `cos_theta` and `tan_alpha`, relative
//! for `r` and `energy`, and a multiplicative ceiling for `residual` (the
//! computed residual passes when it is at most `tolerance * value`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::QuantumNumbers;
use crate::solver::{locate_intersection, Solution, SolveOptions};

const EMBEDDED: &str = include_str!("../data/fixtures.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    R,
    CosTheta,
    TanAlpha,
    Energy,
    Residual,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Self::R => "r",
            Self::CosTheta => "cos_theta",
            Self::TanAlpha => "tan_alpha",
            Self::Energy => "energy",
            Self::Residual => "residual",
        }
    }

    pub fn of(self, solution: &Solution) -> f64 {
        match self {
            Self::R => solution.r,
            Self::CosTheta => solution.config.cos_theta(),
            Self::TanAlpha => solution.config.tan_alpha(),
            Self::Energy => solution.energy_hartree,
            Self::Residual => solution.residual,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "r" => Ok(Self::R),
            "cos_theta" => Ok(Self::CosTheta),
            "tan_alpha" => Ok(Self::TanAlpha),
            "energy" => Ok(Self::Energy),
            "residual" => Ok(Self::Residual),
            other => Err(format!("unknown quantity `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub n: QuantumNumbers,
    pub quantity: Quantity,
    pub value: f64,
    pub tolerance: f64,
    /// 1-based line in the source file.
    pub line: usize,
}

impl FixtureEntry {
    /// Allowed absolute deviation of the computed value.
    pub fn allowed(&self) -> f64 {
        match self.quantity {
            Quantity::CosTheta | Quantity::TanAlpha => self.tolerance,
            Quantity::R | Quantity::Energy => self.tolerance * self.value.abs(),
            Quantity::Residual => self.tolerance * self.value,
        }
    }

    pub fn passes(&self, computed: f64) -> bool {
        match self.quantity {
            Quantity::Residual => computed <= self.allowed(),
            _ => (computed - self.value).abs() <= self.allowed(),
        }
    }
}

fn field<T: FromStr>(fields: &[&str], i: usize, line: usize, what: &str) -> Result<T> {
    fields[i].trim().parse().map_err(|_| Error::Fixture {
        line,
        message: format!("cannot parse {what} from `{}`", fields[i].trim()),
    })
}

pub fn parse_fixtures(text: &str) -> Result<Vec<FixtureEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Fixture {
                line,
                message: format!("expected 6 fields, found {}", fields.len()),
            });
        }
        let n1: f64 = field(&fields, 0, line, "n1")?;
        let n2: f64 = field(&fields, 1, line, "n2")?;
        let n3: f64 = field(&fields, 2, line, "n3")?;
        let n = QuantumNumbers::new(n1, n2, n3).map_err(|e| Error::Fixture {
            line,
            message: e.to_string(),
        })?;
        let quantity = fields[3]
            .trim()
            .parse()
            .map_err(|message| Error::Fixture { line, message })?;
        let value: f64 = field(&fields, 4, line, "value")?;
        let tolerance: f64 = field(&fields, 5, line, "tolerance")?;
        if !value.is_finite() {
            return Err(Error::Fixture {
                line,
                message: "value must be finite".into(),
            });
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::Fixture {
                line,
                message: "tolerance must be positive".into(),
            });
        }
        entries.push(FixtureEntry {
            n,
            quantity,
            value,
            tolerance,
            line,
        });
    }
    Ok(entries)
}

pub fn embedded_fixtures() -> Vec<FixtureEntry> {
    parse_fixtures(EMBEDDED).expect("embedded fixture file is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub entry: FixtureEntry,
    pub computed: f64,
    pub deviation: f64,
    pub converged: bool,
    pub passed: bool,
}

type TripleKey = [u32; 3];

fn key(n: &QuantumNumbers) -> TripleKey {
    n.as_array().map(|x| (2.0 * x).round() as u32)
}

/// Solves every distinct triple once and compares each entry.
pub fn verify_fixtures(
    entries: &[FixtureEntry],
    options: &SolveOptions,
) -> Result<Vec<FixtureOutcome>> {
    let mut solved: BTreeMap<TripleKey, Solution> = BTreeMap::new();
    for e in entries {
        if let std::collections::btree_map::Entry::Vacant(slot) = solved.entry(key(&e.n)) {
            slot.insert(locate_intersection(&e.n, options)?);
        }
    }
    Ok(entries
        .iter()
        .map(|e| {
            let solution = &solved[&key(&e.n)];
            let computed = e.quantity.of(solution);
            FixtureOutcome {
                entry: *e,
                computed,
                deviation: computed - e.value,
                converged: solution.converged,
                passed: solution.converged && e.passes(computed),
            }
        })
        .collect())
}

//! Flat output records shared by the CLI emitters.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::solver::Solution;

pub const SWEEP_HEADER: &str =
    "n1,n2,n3,cos_theta,tan_alpha,r_bohr,energy_hartree,residual,converged";

/// One solved (or best-effort) quantum-number triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub cos_theta: f64,
    pub tan_alpha: f64,
    pub r_bohr: f64,
    pub energy_hartree: f64,
    pub residual: f64,
    pub converged: bool,
}

impl From<&Solution> for SweepRecord {
    fn from(s: &Solution) -> Self {
        let [n1, n2, n3] = s.quantum_numbers.as_array();
        Self {
            n1,
            n2,
            n3,
            cos_theta: s.config.cos_theta(),
            tan_alpha: s.config.tan_alpha(),
            r_bohr: s.r,
            energy_hartree: s.energy_hartree,
            residual: s.residual,
            converged: s.converged,
        }
    }
}

impl SweepRecord {
    /// CSV row matching [`SWEEP_HEADER`], floats in shortest round-trip form.
    pub fn csv_row(&self) -> String {
        let mut row = String::new();
        for x in [
            self.n1,
            self.n2,
            self.n3,
            self.cos_theta,
            self.tan_alpha,
            self.r_bohr,
            self.energy_hartree,
            self.residual,
        ] {
            write!(row, "{x},").expect("writing to a String");
        }
        row.push_str(if self.converged { "true" } else { "false" });
        row
    }
}

/// The `solve` subcommand's record: a sweep record plus the scan count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub cos_theta: f64,
    pub tan_alpha: f64,
    pub r_bohr: f64,
    pub energy_hartree: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const SOLVE_HEADER: &str =
    "n1,n2,n3,cos_theta,tan_alpha,r_bohr,energy_hartree,residual,iterations,converged";

impl From<&Solution> for SolveRecord {
    fn from(s: &Solution) -> Self {
        let r = SweepRecord::from(s);
        Self {
            n1: r.n1,
            n2: r.n2,
            n3: r.n3,
            cos_theta: r.cos_theta,
            tan_alpha: r.tan_alpha,
            r_bohr: r.r_bohr,
            energy_hartree: r.energy_hartree,
            residual: r.residual,
            iterations: s.iterations,
            converged: s.converged,
        }
    }
}

impl SolveRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n1,
            self.n2,
            self.n3,
            self.cos_theta,
            self.tan_alpha,
            self.r_bohr,
            self.energy_hartree,
            self.residual,
            self.iterations,
            self.converged
        )
    }
}

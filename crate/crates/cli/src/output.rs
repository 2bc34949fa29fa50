use std::fmt::Write as _;
use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use helium_ho::fixtures::FixtureOutcome;
use helium_ho::records::{SolveRecord, SOLVE_HEADER};
use helium_ho::{convert, SurfaceSample, Unit};

use crate::{Format, Report, Units};

pub const SURFACE_HEADER: &str = "cos_theta,tan_alpha,s1,s2,s3,residual";

pub fn solve_record(
    out: &mut dyn Write,
    rec: &SolveRecord,
    format: Format,
    units: Units,
) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(rec)?)?,
        Format::Csv => {
            writeln!(out, "{SOLVE_HEADER}")?;
            writeln!(out, "{}", rec.csv_row())?;
        }
        Format::Text => {
            let (r, r_unit, e, e_unit) = match units {
                Units::Au => (rec.r_bohr, "bohr", rec.energy_hartree, "hartree"),
                Units::EvAngstrom => (
                    convert(rec.r_bohr, Unit::Bohr, Unit::Angstrom)?,
                    "angstrom",
                    convert(rec.energy_hartree, Unit::Hartree, Unit::ElectronVolt)?,
                    "eV",
                ),
            };
            writeln!(out, "n          = ({}, {}, {})", rec.n1, rec.n2, rec.n3)?;
            writeln!(out, "cos_theta  = {:.6}", rec.cos_theta)?;
            writeln!(out, "tan_alpha  = {:.6}", rec.tan_alpha)?;
            writeln!(out, "r          = {r:.6} {r_unit}")?;
            writeln!(out, "energy     = {e:.6} {e_unit}")?;
            writeln!(out, "residual   = {:.3e}", rec.residual)?;
            writeln!(out, "iterations = {}", rec.iterations)?;
            writeln!(out, "converged  = {}", rec.converged)?;
        }
    }
    Ok(())
}

fn opt(row: &mut String, x: Option<f64>) {
    if let Some(x) = x {
        write!(row, "{x}").expect("writing to a String");
    }
}

/// Appends one CSV line; undefined values become empty fields.
pub fn surface_row(row: &mut String, s: &SurfaceSample) {
    write!(row, "{},{}", s.config.cos_theta(), s.config.tan_alpha()).expect("writing to a String");
    for r in s.radii {
        row.push(',');
        opt(row, r);
    }
    row.push(',');
    opt(row, s.residual);
    row.push('\n');
}

#[derive(Serialize)]
struct OutcomeRow {
    n1: f64,
    n2: f64,
    n3: f64,
    quantity: &'static str,
    value: f64,
    tolerance: f64,
    computed: f64,
    deviation: f64,
    converged: bool,
    passed: bool,
    line: usize,
}

impl From<&FixtureOutcome> for OutcomeRow {
    fn from(o: &FixtureOutcome) -> Self {
        let [n1, n2, n3] = o.entry.n.as_array();
        Self {
            n1,
            n2,
            n3,
            quantity: o.entry.quantity.name(),
            value: o.entry.value,
            tolerance: o.entry.tolerance,
            computed: o.computed,
            deviation: o.deviation,
            converged: o.converged,
            passed: o.passed,
            line: o.entry.line,
        }
    }
}

pub fn describe(o: &FixtureOutcome) -> String {
    let [n1, n2, n3] = o.entry.n.as_array();
    let mut text = format!(
        "({n1}, {n2}, {n3}) {}: expected {} computed {:.6e} deviation {:.3e} allowed {:.3e}",
        o.entry.quantity,
        o.entry.value,
        o.computed,
        o.deviation,
        o.entry.allowed()
    );
    if !o.converged {
        text.push_str(" (not converged)");
    }
    text
}

pub fn verify_report(
    out: &mut dyn Write,
    outcomes: &[FixtureOutcome],
    report: Report,
) -> Result<()> {
    match report {
        Report::Json => {
            let rows: Vec<OutcomeRow> = outcomes.iter().map(OutcomeRow::from).collect();
            writeln!(out, "{}", serde_json::to_string(&rows)?)?;
        }
        Report::Text => {
            for o in outcomes {
                writeln!(
                    out,
                    "{} {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    describe(o)
                )?;
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            writeln!(out, "{passed}/{} fixtures passed", outcomes.len())?;
        }
    }
    Ok(())
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use helium_ho::fixtures::{embedded_fixtures, parse_fixtures, verify_fixtures};
use helium_ho::records::{SolveRecord, SweepRecord, SWEEP_HEADER};
use helium_ho::solver::require_converged;
use helium_ho::{
    locate_intersection, sample_surfaces, Error, QuantumNumbers, SearchDomain, SolveOptions,
};

use crate::output;
use crate::{Cli, Command, SearchArgs, SolveArgs, SurfacesArgs, SweepArgs, Triple, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NO_INTERSECTION: u8 = 2;
pub const EXIT_FIXTURE_FAILURE: u8 = 3;

const THREADS_VAR: &str = "OSC_THREADS";

pub fn run(cli: Cli) -> Result<u8> {
    configure_threads()?;
    match cli.command {
        Command::Solve(args) => solve(&args),
        Command::Sweep(args) => sweep(&args),
        Command::Surfaces(args) => surfaces(&args),
        Command::Verify(args) => verify(&args),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => bail!("{THREADS_VAR} must be a positive integer, got `{raw}`"),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn quantum_numbers(t: &Triple) -> Result<QuantumNumbers> {
    Ok(QuantumNumbers::new(t.n1, t.n2, t.n3)?)
}

fn options(search: &SearchArgs) -> Result<SolveOptions> {
    if search.grid < 2 {
        bail!("--grid must be at least 2");
    }
    if search.max_iters == 0 {
        bail!("--max-iters must be at least 1");
    }
    Ok(SolveOptions {
        resolution: search.grid,
        max_iters: search.max_iters,
        ..SolveOptions::default()
    })
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn solve(args: &SolveArgs) -> Result<u8> {
    let n = quantum_numbers(&args.n)?;
    let solution = locate_intersection(&n, &options(&args.search)?)?;
    let record = SolveRecord::from(&solution);
    let mut out = sink(None)?;
    output::solve_record(&mut out, &record, args.format, args.units)?;
    out.flush()?;
    if solution.converged {
        Ok(EXIT_OK)
    } else {
        if let Err(e) = require_converged(solution) {
            eprintln!("error: {e}");
        }
        Ok(EXIT_NO_INTERSECTION)
    }
}

/// Parses `start:stop:step` into the values taken by each quantum number.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("range must be start:stop:step, got `{spec}`");
    }
    let mut nums = [0.0f64; 3];
    for (slot, p) in nums.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse()
            .with_context(|| format!("bad number `{p}` in range"))?;
    }
    let [start, stop, step] = nums;
    let valid = step > 0.0 && stop >= start && start.is_finite() && stop.is_finite();
    if !valid {
        bail!("range needs step > 0 and stop >= start, got `{spec}`");
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let values: Vec<f64> = (0..count).map(|k| start + k as f64 * step).collect();
    for &v in &values {
        QuantumNumbers::new(v, v, v)?;
    }
    Ok(values)
}

fn sweep(args: &SweepArgs) -> Result<u8> {
    let values = parse_range(&args.range)?;
    let opts = options(&args.search)?;
    let mut triples = Vec::with_capacity(values.len().pow(3));
    for &a in &values {
        for &b in &values {
            for &c in &values {
                triples.push(QuantumNumbers::new(a, b, c)?);
            }
        }
    }
    let mut out = sink(args.out.as_deref())?;
    let rows: Vec<SweepRecord> = triples
        .par_iter()
        .map(|n| locate_intersection(n, &opts).map(|s| SweepRecord::from(&s)))
        .collect::<std::result::Result<_, Error>>()?;
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in &rows {
        writeln!(out, "{}", row.csv_row())?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn surfaces(args: &SurfacesArgs) -> Result<u8> {
    let n = quantum_numbers(&args.n)?;
    let domain = SearchDomain::with_resolution(args.grid)?;
    let rows: Vec<String> = (0..args.grid)
        .into_par_iter()
        .map(|i| {
            let mut block = String::new();
            for j in 0..args.grid {
                let config = domain
                    .config_at(i, j)
                    .expect("grid nodes lie in the domain");
                output::surface_row(&mut block, &sample_surfaces(&config, &n));
            }
            block
        })
        .collect();
    let mut out = sink(args.out.as_deref())?;
    writeln!(out, "{}", output::SURFACE_HEADER)?;
    for block in rows {
        out.write_all(block.as_bytes())?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs) -> Result<u8> {
    let entries = match &args.fixtures {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            parse_fixtures(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => embedded_fixtures(),
    };
    let outcomes = verify_fixtures(&entries, &options(&args.search)?)?;
    let mut out = sink(None)?;
    output::verify_report(&mut out, &outcomes, args.report)?;
    out.flush()?;
    if outcomes.iter().all(|o| o.passed) {
        Ok(EXIT_OK)
    } else {
        for o in outcomes.iter().filter(|o| !o.passed) {
            eprintln!("FAIL line {}: {}", o.entry.line, output::describe(o));
        }
        Ok(EXIT_FIXTURE_FAILURE)
    }
}

//! Coarse-to-fine search for the common intersection of the three radius
//! surfaces.

use serde::{Deserialize, Serialize};

use crate::energy::energy_closed_form;
use crate::error::{Error, Result};
use crate::geometry::{AngularConfig, QuantumNumbers};
use crate::spectrum::mode_spectrum;
use crate::surface::{
    grid_scan, surfaces_from_spectrum, SearchDomain, GLOBAL_COS_RANGE, GLOBAL_TAN_RANGE,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Nodes per axis, for the first scan and every refinement.
    pub resolution: usize,
    /// Cap on the number of scans, the first one included.
    pub max_iters: usize,
    /// Half-width of a refined window, in cells of the previous grid.
    pub shrink_cells: usize,
    /// Refinement stops once both window widths fall below this.
    pub stop_width: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            resolution: 1000,
            max_iters: 15,
            shrink_cells: 2,
            stop_width: 1e-6,
        }
    }
}

/// Which mode received which quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeAssignment {
    /// `lambda_hat[i]` belongs to the mode paired with `n_{i+1}`.
    pub lambda_hat: [f64; 3],
    pub gamma2: [f64; 3],
    pub negative: [bool; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub negative_mode_histogram: [usize; 4],
    pub undefined_nodes: usize,
    /// Consecutive final scans whose best node lay on the global boundary.
    pub boundary_rounds: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub quantum_numbers: QuantumNumbers,
    pub config: AngularConfig,
    /// In units of the Bohr radius.
    pub r: f64,
    pub energy_hartree: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub radii: [f64; 3],
    pub mode_assignment: ModeAssignment,
    pub diagnostics: SolveDiagnostics,
}

/// `residual < 1e-4 max(1, r)`.
pub fn residual_tolerance(r: f64) -> f64 {
    1e-4 * r.max(1.0)
}

fn on_global_boundary(domain: &SearchDomain, i: usize, j: usize) -> bool {
    let cos = domain.cos_at(i);
    let tan = domain.tan_at(j);
    cos == GLOBAL_COS_RANGE.0
        || cos == GLOBAL_COS_RANGE.1
        || tan == GLOBAL_TAN_RANGE.0
        || tan == GLOBAL_TAN_RANGE.1
}

/// Next search interval along one axis: the span of near-best nodes plus
/// `shrink_cells` cells on each side. A span touching an edge of the current
/// window (but not of the global domain) means the minimum may lie beyond
/// it, so that side grows by the current width instead.
fn next_range(
    range: (f64, f64),
    at: impl Fn(usize) -> f64,
    step: f64,
    (lo, hi): (usize, usize),
    last: usize,
    global: (f64, f64),
    options: &SolveOptions,
) -> (f64, f64) {
    let margin = options.shrink_cells as f64 * step;
    let width = range.1 - range.0;
    let mut low = at(lo) - margin;
    let mut high = at(hi) + margin;
    if lo == 0 && range.0 > global.0 {
        low = range.0 - width;
    }
    if hi == last && range.1 < global.1 {
        high = range.1 + width;
    }
    (low.max(global.0), high.min(global.1))
}

/// Runs the grid search and returns the best point found whether or not it
/// meets the convergence criteria; `converged` tells which.
pub fn locate_intersection(n: &QuantumNumbers, options: &SolveOptions) -> Result<Solution> {
    if options.max_iters == 0 {
        return Err(Error::InvalidDomain("max_iters must be positive"));
    }
    let mut domain = SearchDomain::with_resolution(options.resolution)?;
    let mut histogram = [0usize; 4];
    let mut undefined = 0;
    let mut boundary_rounds = 0;
    let mut iterations = 0;
    let mut best;
    loop {
        let scan = grid_scan(&domain, n)?;
        iterations += 1;
        for (a, b) in histogram.iter_mut().zip(scan.negative_mode_histogram) {
            *a += b;
        }
        undefined += scan.undefined_nodes;
        if on_global_boundary(&domain, scan.cos_index, scan.tan_index) {
            boundary_rounds += 1;
        } else {
            boundary_rounds = 0;
        }
        best = scan.best.config;

        let last = domain.resolution - 1;
        let [cos_lo, cos_hi, tan_lo, tan_hi] = scan.near_box;
        let cos = next_range(
            domain.cos_range,
            |i| domain.cos_at(i),
            domain.cos_step(),
            (cos_lo, cos_hi),
            last,
            GLOBAL_COS_RANGE,
            options,
        );
        let tan = next_range(
            domain.tan_range,
            |j| domain.tan_at(j),
            domain.tan_step(),
            (tan_lo, tan_hi),
            last,
            GLOBAL_TAN_RANGE,
            options,
        );
        let interior = (1..last).contains(&scan.cos_index) && (1..last).contains(&scan.tan_index);
        let widths_done = interior
            && domain.cos_range.1 - domain.cos_range.0 < options.stop_width
            && domain.tan_range.1 - domain.tan_range.0 < options.stop_width;
        if widths_done || iterations >= options.max_iters || boundary_rounds >= 2 {
            break;
        }
        domain = SearchDomain::new(cos, tan, options.resolution)?;
    }

    let spectrum = mode_spectrum(&best)?;
    let sample = surfaces_from_spectrum(&spectrum, n);
    let radii = sample.radii.map(|s| s.unwrap_or(f64::NAN));
    let residual = sample.residual.unwrap_or(f64::INFINITY);
    let r = radii.iter().sum::<f64>() / 3.0;
    let energy_hartree = if r > 0.0 {
        energy_closed_form(r, &best)?
    } else {
        f64::NAN
    };
    let converged = residual < residual_tolerance(r) && boundary_rounds < 2;

    Ok(Solution {
        quantum_numbers: *n,
        config: best,
        r,
        energy_hartree,
        residual,
        iterations,
        converged,
        radii,
        mode_assignment: ModeAssignment {
            lambda_hat: spectrum.modes.map(|m| m.lambda_hat),
            gamma2: spectrum.modes.map(|m| m.gamma2),
            negative: spectrum.modes.map(|m| m.lambda_hat < 0.0),
        },
        diagnostics: SolveDiagnostics {
            negative_mode_histogram: histogram,
            undefined_nodes: undefined,
            boundary_rounds,
        },
    })
}

/// Like [`locate_intersection`] but fails with [`Error::NoIntersection`]
/// unless the result converged.
pub fn solve_intersection(n: &QuantumNumbers, options: &SolveOptions) -> Result<Solution> {
    require_converged(locate_intersection(n, options)?)
}

/// Passes a converged solution through; otherwise [`Error::NoIntersection`]
/// carrying it as the best effort.
pub fn require_converged(solution: Solution) -> Result<Solution> {
    if solution.converged {
        return Ok(solution);
    }
    let reason = if solution.diagnostics.boundary_rounds >= 2 {
        "minimizer stuck on the search-domain boundary"
    } else {
        "residual above tolerance"
    };
    Err(Error::NoIntersection {
        reason,
        residual: solution.residual,
        best: Box::new(solution),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SolveOptions {
        SolveOptions {
            resolution: 200,
            ..SolveOptions::default()
        }
    }

    #[test]
    fn ground_state() {
        let n = QuantumNumbers::new(1.0, 1.5, 1.5).unwrap();
        let s = solve_intersection(&n, &quick()).unwrap();
        assert!((s.config.cos_theta() - -0.22725).abs() < 5e-4);
        assert!((s.config.tan_alpha() - 1.2635).abs() < 5e-4);
        assert!((s.r - 1.0481).abs() < 5e-3 * 1.0481);
        assert!((s.energy_hartree - -2.8827).abs() < 1e-3);
        assert!(s.residual < residual_tolerance(s.r));
        assert!(s.mode_assignment.negative[0]);
        let mean = s.radii.iter().sum::<f64>() / 3.0;
        assert_eq!(s.r, mean);
    }

    #[test]
    fn blank_table_cell_has_no_intersection() {
        let n = QuantumNumbers::new(1.5, 0.5, 5.0).unwrap();
        match solve_intersection(&n, &quick()) {
            Err(Error::NoIntersection { best, .. }) => assert!(!best.converged),
            other => panic!("expected NoIntersection, got {other:?}"),
        }
    }

    #[test]
    fn zero_iterations_rejected() {
        let n = QuantumNumbers::new(1.0, 1.0, 1.0).unwrap();
        let options = SolveOptions {
            max_iters: 0,
            ..quick()
        };
        assert!(locate_intersection(&n, &options).is_err());
    }

    #[test]
    fn single_scan_stays_on_the_grid() {
        let n = QuantumNumbers::new(1.0, 1.0, 1.0).unwrap();
        let options = SolveOptions {
            max_iters: 1,
            ..quick()
        };
        let s = locate_intersection(&n, &options).unwrap();
        assert_eq!(s.iterations, 1);
        let domain = SearchDomain::with_resolution(200).unwrap();
        let i = ((s.config.cos_theta() - domain.cos_range.0) / domain.cos_step()).round();
        assert_eq!(domain.cos_at(i as usize), s.config.cos_theta());
    }
}

//! Closed-form normal modes of the coupling matrix.
//!
//! Away from the Wannier ridge the three nonzero modes are parameterized by
//! the roots `gamma2` of a cubic; on the ridge (`tan_alpha = 1`) the cubic
//! degenerates and dedicated closed forms take over.

mod analytic;
mod relations;
mod wannier;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::AngularConfig;
use crate::linalg::Vec4;

pub use analytic::{analytic_spectrum, gamma1_of, RIDGE_EPS};
pub use relations::{
    check_relations, check_relations_with, QuadraticForm, RelationReport, SUM_NAMES,
};
pub use wannier::{wannier_spectrum, WannierSpectrum};

/// One nonzero normal mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub gamma1: f64,
    pub gamma2: f64,
    pub xi: f64,
    /// Dimensionless eigenvalue of `C^2`.
    pub lambda_hat: f64,
    /// Unit eigenvector.
    pub eigvec: Vec4,
    /// Projection of `c / r` on the eigenvector.
    pub c_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    General,
    Ridge,
}

/// The three nonzero modes in assignment order plus the zero mode.
///
/// `modes[0]` carries `n1`, `modes[1]` carries `n2` and `modes[2]` carries
/// `n3`; see [`assign_modes`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpectrum {
    pub config: AngularConfig,
    pub modes: [Mode; 3],
    pub zero_mode_eigvec: Vec4,
    pub branch: Branch,
}

impl ModeSpectrum {
    /// Number of modes with a negative eigenvalue.
    pub fn negative_modes(&self) -> usize {
        self.modes.iter().filter(|m| m.lambda_hat < 0.0).count()
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        self.modes.map(|m| m.lambda_hat)
    }
}

/// Orders modes for quantum-number assignment: first the mode with the most
/// negative eigenvalue (the bound radial branch that continues the ridge
/// mode `-4 rho^3`), then the remaining two by ascending `gamma2`.
pub fn assign_modes(modes: [Mode; 3]) -> [Mode; 3] {
    let first = (0..3)
        .min_by(|&a, &b| modes[a].lambda_hat.total_cmp(&modes[b].lambda_hat))
        .unwrap_or(0);
    let mut rest: Vec<Mode> = (0..3).filter(|&i| i != first).map(|i| modes[i]).collect();
    rest.sort_by(|a, b| a.gamma2.total_cmp(&b.gamma2));
    [modes[first], rest[0], rest[1]]
}

/// Spectrum at any configuration, dispatching to the ridge closed forms when
/// `tan_alpha` is within [`RIDGE_EPS`] of one.
pub fn mode_spectrum(config: &AngularConfig) -> Result<ModeSpectrum> {
    if config.tan_alpha() - 1.0 < RIDGE_EPS {
        Ok(wannier_spectrum(config.cos_theta())?.to_mode_spectrum())
    } else {
        analytic_spectrum(config)
    }
}

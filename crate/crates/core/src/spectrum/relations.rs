use serde::{Deserialize, Serialize};

use super::{Branch, ModeSpectrum};
use crate::error::{Error, Result};

/// Which quadratic form normalizes the relation sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadraticForm {
    /// `1 + g1^2 + (1 + tan^-2) g2^2`, the squared norm of the unnormalized
    /// eigenvector.
    EigenvectorNorm,
    /// `1 + g1^2 + (1 + tan^2) g2^2`.
    TanSquared,
}

pub const SUM_NAMES: [&str; 9] = [
    "sum 1/D",
    "sum g1/D",
    "sum g2/D",
    "sum g1^2/D",
    "sum g2^2/D",
    "sum g1 g2/D",
    "sum g1 g2/(xi D)",
    "sum g2/(xi D)",
    "sum g1^2 g2/(xi D)",
];

/// Absolute deviations of the nine mode sums and the three pairwise
/// orthogonality conditions from their stated values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub form: QuadraticForm,
    pub sums: [f64; 9],
    pub expected: [f64; 9],
    pub sum_deviations: [f64; 9],
    pub orthogonality: [f64; 3],
}

impl RelationReport {
    /// Deviation of `sum 1 / D` from one.
    pub fn normalization(&self) -> f64 {
        self.sum_deviations[0]
    }

    pub fn max_sum_deviation(&self) -> f64 {
        self.sum_deviations.iter().fold(0.0, |m, &x| m.max(x))
    }

    pub fn max_orthogonality(&self) -> f64 {
        self.orthogonality.iter().fold(0.0, |m, &x| m.max(x))
    }
}

pub fn check_relations(spectrum: &ModeSpectrum) -> Result<RelationReport> {
    check_relations_with(spectrum, QuadraticForm::EigenvectorNorm)
}

pub fn check_relations_with(
    spectrum: &ModeSpectrum,
    form: QuadraticForm,
) -> Result<RelationReport> {
    let config = &spectrum.config;
    if spectrum.branch == Branch::Ridge {
        return Err(Error::RidgeBranch {
            distance: config.tan_alpha() - 1.0,
        });
    }
    let t = config.tan_alpha();
    let s = config.sin_theta();
    let rho5 = config.rho().powi(5);
    let weight = match form {
        QuadraticForm::EigenvectorNorm => 1.0 + 1.0 / (t * t),
        QuadraticForm::TanSquared => 1.0 + t * t,
    };

    let mut sums = [0.0; 9];
    for m in &spectrum.modes {
        let (g1, g2, xi) = (m.gamma1, m.gamma2, m.xi);
        let inv_d = 1.0 / (1.0 + g1 * g1 + weight * g2 * g2);
        let terms = [
            inv_d,
            g1 * inv_d,
            g2 * inv_d,
            g1 * g1 * inv_d,
            g2 * g2 * inv_d,
            g1 * g2 * inv_d,
            g1 * g2 * inv_d / xi,
            g2 * inv_d / xi,
            g1 * g1 * g2 * inv_d / xi,
        ];
        for (acc, term) in sums.iter_mut().zip(terms) {
            *acc += term;
        }
    }

    let expected = [
        1.0,
        0.0,
        0.0,
        1.0,
        t * t / (1.0 + t * t),
        0.0,
        0.0,
        s * t.powi(4) / (2.0 * rho5),
        s * t / (2.0 * rho5),
    ];
    let mut sum_deviations = [0.0; 9];
    for i in 0..9 {
        sum_deviations[i] = (sums[i] - expected[i]).abs();
    }

    let ortho_weight = 1.0 + 1.0 / (t * t);
    let pair = |i: usize, j: usize| {
        let (a, b) = (&spectrum.modes[i], &spectrum.modes[j]);
        (1.0 + a.gamma1 * b.gamma1 + ortho_weight * a.gamma2 * b.gamma2).abs()
    };

    Ok(RelationReport {
        form,
        sums,
        expected,
        sum_deviations,
        orthogonality: [pair(0, 1), pair(0, 2), pair(1, 2)],
    })
}

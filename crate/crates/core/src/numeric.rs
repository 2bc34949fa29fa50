//! Direct diagonalization of the 4x4 coupling matrix, used as an oracle for
//! the closed-form spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, frobenius, sin_angle, Mat4, Vec4};
use crate::spectrum::ModeSpectrum;

const MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericEigenResult {
    /// Ascending.
    pub eigenvalues: [f64; 4],
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: [Vec4; 4],
    pub sweeps: usize,
}

fn off_diagonal(a: &Mat4) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += a[i][j] * a[i][j];
            }
        }
    }
    sum.sqrt()
}

/// Cyclic-by-row Jacobi eigen-decomposition of a symmetric 4x4 matrix.
///
/// Rotations whose off-diagonal entry is already negligible against both
/// diagonal entries are skipped. The sweep order is fixed, so results are
/// bit-reproducible.
pub fn symmetric_eigen_4x4(matrix: &Mat4) -> Result<NumericEigenResult> {
    let scale = frobenius(matrix);
    let mut asymmetry = 0.0f64;
    for i in 0..4 {
        for j in 0..i {
            asymmetry = asymmetry.max((matrix[i][j] - matrix[j][i]).abs());
        }
    }
    if asymmetry > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NonSymmetric { asymmetry });
    }

    let mut a = *matrix;
    for i in 0..4 {
        for j in 0..i {
            let mean = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = mean;
            a[j][i] = mean;
        }
    }
    let mut v = [[0.0; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let target = 1e-14 * scale;
    let mut sweeps = 0;
    while off_diagonal(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let g = 100.0 * apq.abs();
                if sweeps > 4
                    && a[p][p].abs() + g == a[p][p].abs()
                    && a[q][q].abs() + g == a[q][q].abs()
                {
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let eigenvalues = order.map(|k| a[k][k]);
    let eigenvectors = order.map(|k| [v[0][k], v[1][k], v[2][k], v[3][k]]);
    Ok(NumericEigenResult {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

// A <- J^T A J, V <- V J with J the (p, q) plane rotation.
fn rotate(a: &mut Mat4, v: &mut Mat4, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..4 {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..4 {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMatch {
    /// `pairing[k]` is the numeric index paired with analytic mode `k`; index
    /// 3 of the analytic side is the zero mode.
    pub pairing: [usize; 4],
    pub max_eigenvalue_deviation: f64,
    /// Largest sine of the angle between paired eigenvectors (or between an
    /// analytic vector and its numeric cluster subspace).
    pub max_vector_sine: f64,
}

const MIN_OVERLAP: f64 = 0.9;

/// Pairs closed-form modes (plus the zero mode) with numeric eigenpairs by
/// largest absolute eigenvector overlap.
///
/// When an overlap is weak because eigenvalues are (nearly) degenerate, the
/// analytic vector is compared against the whole numeric eigenspace of its
/// cluster instead.
pub fn match_spectra(
    analytic: &ModeSpectrum,
    numeric: &NumericEigenResult,
) -> Result<SpectrumMatch> {
    let mut a_vals = [0.0; 4];
    let mut a_vecs = [[0.0; 4]; 4];
    for (k, m) in analytic.modes.iter().enumerate() {
        a_vals[k] = m.lambda_hat;
        a_vecs[k] = m.eigvec;
    }
    a_vecs[3] = analytic.zero_mode_eigvec;

    let mut overlap = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            overlap[i][j] = dot(&a_vecs[i], &numeric.eigenvectors[j]).abs();
        }
    }

    let mut pairing = [usize::MAX; 4];
    let mut used = [false; 4];
    for _ in 0..4 {
        let mut best = (f64::NEG_INFINITY, 0, 0);
        for i in (0..4).filter(|&i| pairing[i] == usize::MAX) {
            for j in (0..4).filter(|&j| !used[j]) {
                if overlap[i][j] > best.0 {
                    best = (overlap[i][j], i, j);
                }
            }
        }
        pairing[best.1] = best.2;
        used[best.2] = true;
    }

    let spread = numeric
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let cluster_tol = 1e-6 * spread;

    let mut max_dev = 0.0f64;
    let mut max_sine = 0.0f64;
    for i in 0..4 {
        let j = pairing[i];
        max_dev = max_dev.max((a_vals[i] - numeric.eigenvalues[j]).abs());
        let sine = if overlap[i][j] >= MIN_OVERLAP {
            sin_angle(&a_vecs[i], &numeric.eigenvectors[j])
        } else {
            // Degenerate cluster: distance from the numeric eigenspace.
            let cluster: Vec<usize> = (0..4)
                .filter(|&k| (numeric.eigenvalues[k] - numeric.eigenvalues[j]).abs() <= cluster_tol)
                .collect();
            if cluster.len() < 2 {
                return Err(Error::AmbiguousPairing {
                    overlap: overlap[i][j],
                });
            }
            let mut residual = a_vecs[i];
            for &k in &cluster {
                let p = dot(&a_vecs[i], &numeric.eigenvectors[k]);
                for (r, e) in residual.iter_mut().zip(&numeric.eigenvectors[k]) {
                    *r -= p * e;
                }
            }
            let sine = crate::linalg::norm(&residual);
            if sine > 1.0 - MIN_OVERLAP {
                return Err(Error::AmbiguousPairing {
                    overlap: overlap[i][j],
                });
            }
            sine
        };
        max_sine = max_sine.max(sine);
    }

    Ok(SpectrumMatch {
        pairing,
        max_eigenvalue_deviation: max_dev,
        max_vector_sine: max_sine,
    })
}

/// Numeric eigenpairs repackaged as a [`NumericEigenResult`] from a spectrum,
/// so a closed-form spectrum can be matched against itself.
pub fn as_numeric(spectrum: &ModeSpectrum) -> NumericEigenResult {
    let mut pairs: Vec<(f64, Vec4)> = spectrum
        .modes
        .iter()
        .map(|m| (m.lambda_hat, m.eigvec))
        .collect();
    pairs.push((0.0, spectrum.zero_mode_eigvec));
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    NumericEigenResult {
        eigenvalues: [pairs[0].0, pairs[1].0, pairs[2].0, pairs[3].0],
        eigenvectors: [pairs[0].1, pairs[1].1, pairs[2].1, pairs[3].1],
        sweeps: 0,
    }
}

//! The dimensionless quadratic coupling `C^2` and linear term `c / r` of the
//! expanded two-electron potential at a fixed angular configuration.

use serde::{Deserialize, Serialize};

use crate::geometry::AngularConfig;
use crate::linalg::{Mat4, Vec4};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSystem {
    pub config: AngularConfig,
    /// Row-major, exactly symmetric.
    pub c2_matrix: Mat4,
    /// The linear vector with the overall factor `r` removed.
    pub c_vector: Vec4,
}

/// Assembles `C^2` as the nuclear block `-4 rho^3 diag(...)` plus the
/// electron-electron block `-(2 / rho^2) B`, and the matching `c / r`.
pub fn build_coupling(config: &AngularConfig) -> CouplingSystem {
    let c = config.cos_theta();
    let s = config.sin_theta();
    let t = config.tan_alpha();
    let rho = config.rho();
    let rho3 = rho * rho * rho;
    let d = t - c;

    let nuclear = -4.0 * rho3;
    let pair = -2.0 / (rho * rho);

    let dd = d * d;
    let sd = s * d;
    let ss = s * s;
    // Sign pattern of the (x + y, y -> -y) electron-electron block.
    let block = [
        [-dd, sd, dd, -sd],
        [sd, -ss, -sd, ss],
        [dd, -sd, -dd, sd],
        [-sd, ss, sd, -ss],
    ];

    let mut m = [[0.0; 4]; 4];
    for (i, row) in block.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            m[i][j] = pair * entry;
        }
    }
    m[0][0] += nuclear / (t * t * t);
    m[2][2] += nuclear * c * c;
    m[2][3] += nuclear * c * s;
    m[3][2] += nuclear * c * s;
    m[3][3] += nuclear * s * s;

    let c_vector = [
        2.0 * rho3 / (t * t) + t - c,
        -s,
        -2.0 * rho3 * c - t + c,
        -2.0 * rho3 * s + s,
    ];

    CouplingSystem {
        config: *config,
        c2_matrix: m,
        c_vector,
    }
}

/// `C^2 (1, 1, 1, 1)^T`, a cheap structural fingerprint of the matrix.
pub fn coupling_row_sums(system: &CouplingSystem) -> Vec4 {
    crate::linalg::mat_vec(&system.c2_matrix, &[1.0; 4])
}

/// The `lambda = 0` eigenvector `(0, 1, -sin/tan, cos/tan)`, normalized.
pub fn zero_mode(config: &AngularConfig) -> Vec4 {
    let t = config.tan_alpha();
    let v = [0.0, 1.0, -config.sin_theta() / t, config.cos_theta() / t];
    crate::linalg::normalized(&v)
}

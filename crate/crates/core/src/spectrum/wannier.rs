use serde::{Deserialize, Serialize};

use super::{assign_modes, Branch, Mode, ModeSpectrum};
use crate::coupling::zero_mode;
use crate::error::{Error, Result};
use crate::geometry::AngularConfig;

/// Closed-form spectrum on the Wannier ridge `r1 = r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WannierSpectrum {
    pub cos_theta: f64,
    pub beta: f64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    /// Modes in assignment order (see [`assign_modes`]).
    pub modes: [Mode; 3],
}

impl WannierSpectrum {
    pub fn config(&self) -> AngularConfig {
        AngularConfig::new(self.cos_theta, 1.0).expect("validated on construction")
    }

    pub fn to_mode_spectrum(&self) -> ModeSpectrum {
        let config = self.config();
        ModeSpectrum {
            config,
            modes: self.modes,
            zero_mode_eigvec: zero_mode(&config),
            branch: Branch::Ridge,
        }
    }
}

pub fn wannier_spectrum(cos_theta: f64) -> Result<WannierSpectrum> {
    let config = AngularConfig::new(cos_theta, 1.0)?;
    let c = cos_theta;
    let s = config.sin_theta();
    // sin(theta / 2) = sqrt((1 - cos) / 2); r12 / r = 2 sin(theta / 2).
    let half_sin = ((1.0 - c) / 2.0).sqrt();
    let rho = 2.0 * half_sin;
    let beta = (16.0 * half_sin.powi(3) + 2.0 * c) / -s;
    if !beta.is_finite() {
        return Err(Error::ConfigDomain {
            cos_theta,
            tan_alpha: 1.0,
            reason: "ridge quadratic is singular",
        });
    }

    // gamma_+ = (beta / 2)(1 + sqrt(1 + 4 / beta^2)) never cancels; the
    // other root is written in rationalized form so it does not either.
    let root = (beta * beta + 4.0).sqrt();
    let gamma_plus = 0.5 * (beta + beta.signum() * root);
    let gamma_minus = -2.0 / (beta.signum() * root + beta);

    let sqrt2 = std::f64::consts::SQRT_2;
    let radial = Mode {
        gamma1: -1.0,
        gamma2: 0.0,
        xi: 0.0,
        lambda_hat: -4.0 * rho.powi(3),
        eigvec: [1.0 / sqrt2, 0.0, -c / sqrt2, -s / sqrt2],
        c_hat: -2.0 * sqrt2 * rho.powi(3),
    };
    let angular = |g: f64| {
        let w = 1.0 - c - s * g;
        let norm = sqrt2 * (g * g + 1.0).sqrt();
        Mode {
            gamma1: 1.0,
            gamma2: g,
            xi: 2.0 * w,
            lambda_hat: -4.0 / (rho * rho) * s * w / g,
            eigvec: [1.0 / norm, g / norm, (c + s * g) / norm, (s - c * g) / norm],
            c_hat: -sqrt2 * w / (g * g + 1.0).sqrt(),
        }
    };

    Ok(WannierSpectrum {
        cos_theta,
        beta,
        gamma_plus,
        gamma_minus,
        modes: assign_modes([radial, angular(gamma_plus), angular(gamma_minus)]),
    })
}

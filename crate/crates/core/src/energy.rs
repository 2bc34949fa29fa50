//! Total energy in hartree, with lengths in units of the Bohr radius.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::AngularConfig;
use crate::spectrum::ModeSpectrum;

const ZERO_LAMBDA: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub per_mode: [f64; 3],
    pub total_sum_form: f64,
    pub total_closed_form: f64,
    pub agreement: f64,
}

fn check_length(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveLength(r))
    }
}

/// `E = (2 / r)(-1 - 1/tan_alpha + 1/(2 rho))`.
pub fn energy_closed_form(r: f64, config: &AngularConfig) -> Result<f64> {
    check_length(r)?;
    Ok(2.0 / r * (-1.0 - 1.0 / config.tan_alpha() + 0.5 / config.rho()))
}

/// Mode-sum energy `sum_i (2 / r12^3) c_i^2 / lambda_i` with `c_i = r c_hat_i`
/// and `r12 = rho r`, compared against [`energy_closed_form`].
pub fn energy_sum_form(r: f64, spectrum: &ModeSpectrum) -> Result<EnergyBreakdown> {
    check_length(r)?;
    let rho = spectrum.config.rho();
    let mut per_mode = [0.0; 3];
    for (term, m) in per_mode.iter_mut().zip(&spectrum.modes) {
        if m.lambda_hat.abs() < ZERO_LAMBDA {
            return Err(Error::ZeroEigenvalue {
                lambda: m.lambda_hat,
            });
        }
        *term = 2.0 * m.c_hat * m.c_hat / (rho.powi(3) * r * m.lambda_hat);
    }
    let total_sum_form = per_mode.iter().sum();
    let total_closed_form = energy_closed_form(r, &spectrum.config)?;
    Ok(EnergyBreakdown {
        per_mode,
        total_sum_form,
        total_closed_form,
        agreement: (total_sum_form - total_closed_form).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WannierEnergy {
    pub energy: f64,
    /// Set when the electron-electron distance is below `1e-9 a`.
    pub near_coalescence: bool,
}

/// Ridge energy `(2 / r)(-2 + r / (2 r12))` with `r12 = 2 r sin(theta / 2)`.
pub fn wannier_energy(r: f64, cos_theta: f64) -> Result<WannierEnergy> {
    check_length(r)?;
    let r12 = 2.0 * r * ((1.0 - cos_theta) / 2.0).max(0.0).sqrt();
    Ok(WannierEnergy {
        energy: 2.0 / r * (-2.0 + r / (2.0 * r12)),
        near_coalescence: r12 < 1e-9,
    })
}

/// Quantum-number form `sum_i (1 / r12)^{3/2} sqrt|lambda_i| (+-n_i)`, where a
/// negative eigenvalue contributes with a negative sign. Equals the mode-sum
/// form only where all three radius surfaces meet.
pub fn quantum_number_energy(r: f64, spectrum: &ModeSpectrum, n: [f64; 3]) -> Result<f64> {
    check_length(r)?;
    let scale = (1.0 / (spectrum.config.rho() * r)).powf(1.5);
    Ok(spectrum
        .modes
        .iter()
        .zip(n)
        .map(|(m, n)| scale * m.lambda_hat.abs().sqrt() * n * m.lambda_hat.signum())
        .sum())
}

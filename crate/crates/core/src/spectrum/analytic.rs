use super::{assign_modes, Branch, Mode, ModeSpectrum};
use crate::coupling::zero_mode;
use crate::cubic::{shifted_coefficients, solve_cubic, Terms};
use crate::error::{Error, Result};
use crate::geometry::AngularConfig;

/// Below this distance of `tan_alpha` from one the cubic is degenerate and
/// the ridge closed forms are used.
pub const RIDGE_EPS: f64 = 1e-7;

const POLE_TOL: f64 = 1e-13;

/// `gamma1` paired with a root `gamma2` of the cubic.
pub fn gamma1_of(gamma2: f64, config: &AngularConfig) -> Result<f64> {
    let k = Terms::new(config);
    let t3 = k.tan.powi(3);
    let lead = k.d * k.d * t3 * k.tan * k.tan * gamma2;
    let offset = t3 * k.sin * k.p * k.d;
    if (lead - offset).abs() <= POLE_TOL * (lead.abs() + offset.abs()) {
        return Err(Error::Pole { gamma2 });
    }
    gamma1_from_offset(gamma2 - k.pole(), &k, gamma2)
}

// The denominator of the gamma1 expression is exactly d^2 tan^5 delta with
// delta = gamma2 - pole.
fn gamma1_from_offset(delta: f64, k: &Terms, gamma2: f64) -> Result<f64> {
    let t3 = k.tan.powi(3);
    let g1 = k.p * k.q * k.sin / (k.d * k.d * t3 * k.tan * k.tan * delta) + k.q / (k.d * t3);
    if delta == 0.0 || !g1.is_finite() {
        return Err(Error::Pole { gamma2 });
    }
    Ok(g1)
}

fn mode_at(delta: f64, k: &Terms) -> Result<Mode> {
    let Terms {
        cos: c,
        sin: s,
        tan: t,
        rho,
        q,
        ..
    } = *k;
    let gamma2 = k.pole() + delta;
    let gamma1 = gamma1_from_offset(delta, k, gamma2)?;
    let xi = t - c + q * gamma1 - s / t * (1.0 + t * t) * gamma2;
    let lambda_hat = -(2.0 / (rho * rho)) * s * t * xi / gamma2;

    let inv_t = 1.0 / t;
    let norm = (1.0 + gamma1 * gamma1 + (1.0 + inv_t * inv_t) * gamma2 * gamma2).sqrt();
    let eigvec = [
        1.0 / norm,
        inv_t * gamma2 / norm,
        (c * gamma1 + s * gamma2) / norm,
        (s * gamma1 - c * gamma2) / norm,
    ];
    let c_hat = (2.0 * rho.powi(3) * (inv_t * inv_t - gamma1) + xi) / norm;

    Ok(Mode {
        gamma1,
        gamma2,
        xi,
        lambda_hat,
        eigvec,
        c_hat,
    })
}

/// Closed-form spectrum away from the ridge.
///
/// The cubic is solved for the offset of `gamma2` from the pole of the
/// `gamma1` expression rather than for `gamma2` itself: one root typically
/// sits extremely close to that pole, and recovering the offset by
/// subtraction would cost most of the eigenvalue's significant digits.
pub fn analytic_spectrum(config: &AngularConfig) -> Result<ModeSpectrum> {
    let distance = config.tan_alpha() - 1.0;
    if distance < RIDGE_EPS {
        return Err(Error::RidgeBranch { distance });
    }
    let terms = Terms::new(config);
    let [d0, d1, d2] = solve_cubic(shifted_coefficients(&terms)?)?;
    let modes = [
        mode_at(d0, &terms)?,
        mode_at(d1, &terms)?,
        mode_at(d2, &terms)?,
    ];

    Ok(ModeSpectrum {
        config: *config,
        modes: assign_modes(modes),
        zero_mode_eigvec: zero_mode(config),
        branch: Branch::General,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::build_coupling;
    use crate::linalg::{dot, eigen_residual, frobenius, trace};

    fn cfg(c: f64, t: f64) -> AngularConfig {
        AngularConfig::new(c, t).unwrap()
    }

    #[test]
    fn ground_state_modes_are_eigenpairs() {
        let config = cfg(-0.22725, 1.2635);
        let spec = analytic_spectrum(&config).unwrap();
        let sys = build_coupling(&config);
        let f = frobenius(&sys.c2_matrix);
        for m in &spec.modes {
            assert!(eigen_residual(&sys.c2_matrix, m.lambda_hat, &m.eigvec) < 1e-12 * f);
            assert!((dot(&m.eigvec, &sys.c_vector) - m.c_hat).abs() < 1e-12 * f);
        }
        let sum: f64 = spec.eigenvalues().iter().sum();
        assert!((sum - trace(&sys.c2_matrix)).abs() < 1e-12 * f);
        // Policy order: bound mode first, then ascending gamma2.
        assert!(spec.modes[0].lambda_hat < -20.0);
        assert!(spec.modes[1].gamma2 < spec.modes[2].gamma2);
    }

    #[test]
    fn near_pole_root_is_still_accurate() {
        // One root sits ~1e-13 (relative) from the gamma1 pole here.
        let config = cfg(0.107_448_217_442_635_11, 9.333_678_247_168_361);
        let spec = analytic_spectrum(&config).unwrap();
        let sys = build_coupling(&config);
        let f = frobenius(&sys.c2_matrix);
        for m in &spec.modes {
            let r = eigen_residual(&sys.c2_matrix, m.lambda_hat, &m.eigvec);
            assert!(r < 1e-12 * f, "residual {r:e} for {m:?}");
        }
    }

    #[test]
    fn pole_is_reported() {
        let config = cfg(0.2, 3.0);
        let (s, t, c) = (config.sin_theta(), config.tan_alpha(), config.cos_theta());
        let pole = s * (1.0 - t.powi(3)) / ((t - c) * t * t);
        assert!(matches!(gamma1_of(pole, &config), Err(Error::Pole { .. })));
    }

    #[test]
    fn gamma1_tends_to_one_at_the_ridge() {
        let c = 0.0;
        let beta = -4.0 * 2f64.sqrt();
        let gamma_plus = beta / 2.0 * (1.0 + (1.0 + 4.0 / (beta * beta)).sqrt());
        let g1 = gamma1_of(gamma_plus, &cfg(c, 1.0 + 1e-9)).unwrap();
        assert!((g1 - 1.0).abs() < 1e-6, "{g1}");
    }

    #[test]
    fn ridge_configs_are_refused() {
        assert!(matches!(
            analytic_spectrum(&cfg(0.1, 1.0)),
            Err(Error::RidgeBranch { .. })
        ));
    }

    #[test]
    fn zero_mode_carries_no_linear_term() {
        let config = cfg(0.4, 2.2);
        let spec = analytic_spectrum(&config).unwrap();
        let sys = build_coupling(&config);
        assert!(dot(&spec.zero_mode_eigvec, &sys.c_vector).abs() < 1e-12);
        for m in &spec.modes {
            assert!(dot(&m.eigvec, &spec.zero_mode_eigvec).abs() < 1e-10);
        }
    }
}

//! Oscillator quantum numbers and the angular configuration of the two
//! electrons.
//!
//! The configuration is parameterized by `cos_theta` (angle between the
//! electrons at the nucleus) and `tan_alpha = r1 / r2` with `r = r2` the inner
//! radius. Everything the coupling system needs is dimensionless and depends
//! on these two numbers only; `rho = r12 / r` is cached.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HALF_INTEGER_TOL: f64 = 1e-12;

/// Magnitudes `(n1, n2, n3)` of the three oscillator quantum numbers.
///
/// Each value is a positive multiple of one half. For a mode with a negative
/// eigenvalue the physical quantum number is `i * n`; only the magnitude is
/// stored here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n: [f64; 3],
}

impl QuantumNumbers {
    pub fn new(n1: f64, n2: f64, n3: f64) -> Result<Self> {
        for value in [n1, n2, n3] {
            validate_one(value)?;
        }
        Ok(Self { n: [n1, n2, n3] })
    }

    pub fn n1(&self) -> f64 {
        self.n[0]
    }

    pub fn n2(&self) -> f64 {
        self.n[1]
    }

    pub fn n3(&self) -> f64 {
        self.n[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.n
    }

    /// Multiplies every quantum number by `factor`, revalidating the result.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.n[0] * factor, self.n[1] * factor, self.n[2] * factor)
    }
}

fn validate_one(value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidQuantumNumber {
            value,
            reason: "not finite",
        });
    }
    if value < 0.5 - HALF_INTEGER_TOL {
        return Err(Error::InvalidQuantumNumber {
            value,
            reason: "must be at least 1/2",
        });
    }
    let twice = 2.0 * value;
    if (twice - twice.round()).abs() > HALF_INTEGER_TOL {
        return Err(Error::InvalidQuantumNumber {
            value,
            reason: "must be an integer or half-integer",
        });
    }
    Ok(())
}

/// A point `(cos_theta, tan_alpha)` of the angular search space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularConfig {
    cos_theta: f64,
    tan_alpha: f64,
    sin_theta: f64,
    rho: f64,
}

impl AngularConfig {
    pub fn new(cos_theta: f64, tan_alpha: f64) -> Result<Self> {
        let domain = |reason| Error::ConfigDomain {
            cos_theta,
            tan_alpha,
            reason,
        };
        if !cos_theta.is_finite() || !tan_alpha.is_finite() {
            return Err(domain("coordinates must be finite"));
        }
        if cos_theta.abs() >= 1.0 {
            return Err(domain("|cos_theta| must be below 1"));
        }
        if tan_alpha < 1.0 {
            return Err(domain("tan_alpha must be at least 1"));
        }
        // (1 - c)(1 + c) and (t - c)^2 + s^2 avoid the cancellation of the
        // textbook forms near the theta -> 0 corner.
        let sin_sq = (1.0 - cos_theta) * (1.0 + cos_theta);
        let sin_theta = sin_sq.sqrt();
        let d = tan_alpha - cos_theta;
        let rho = (d * d + sin_sq).sqrt();
        Ok(Self {
            cos_theta,
            tan_alpha,
            sin_theta,
            rho,
        })
    }

    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    pub fn tan_alpha(&self) -> f64 {
        self.tan_alpha
    }

    /// `sin_theta >= 0`; theta is taken in `(0, pi)`.
    pub fn sin_theta(&self) -> f64 {
        self.sin_theta
    }

    /// `r12 / r`.
    pub fn rho(&self) -> f64 {
        self.rho
    }
}

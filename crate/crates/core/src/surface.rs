//! Radius surfaces, the intersection residual and the grid scan.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AngularConfig, QuantumNumbers};
use crate::spectrum::{mode_spectrum, Mode, ModeSpectrum};

const MIN_C_HAT: f64 = 1e-13;

/// The `r` at which mode `mode` satisfies its quantization condition with
/// quantum number magnitude `n`: `rho^3 n^2 |lambda|^3 / (4 c_hat^4)`.
///
/// Negative-eigenvalue modes carry an imaginary quantum number, which makes
/// `N^2 lambda^3` positive again; hence the magnitudes. `None` when the mode
/// has no linear coupling or a vanishing eigenvalue.
pub fn radius_surface(mode: &Mode, n: f64, config: &AngularConfig) -> Option<f64> {
    let c2 = mode.c_hat * mode.c_hat;
    if mode.c_hat.abs() < MIN_C_HAT || mode.lambda_hat == 0.0 {
        return None;
    }
    let s = config.rho().powi(3) * n * n * mode.lambda_hat.abs().powi(3) / (4.0 * c2 * c2);
    s.is_finite().then_some(s)
}

/// Why a sample has no residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleIssue {
    /// The spectrum could not be evaluated (pole, complex roots, ...).
    Spectrum,
    /// At least one radius surface is undefined.
    UndefinedSurface,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub config: AngularConfig,
    pub radii: [Option<f64>; 3],
    pub residual: Option<f64>,
    pub negative_modes: usize,
    pub issue: Option<SampleIssue>,
}

/// `|s1 - s2| + |s1 - s3| + |s2 - s3|`.
pub fn residual_of(s: [f64; 3]) -> f64 {
    (s[0] - s[1]).abs() + (s[0] - s[2]).abs() + (s[1] - s[2]).abs()
}

pub fn surfaces_from_spectrum(spectrum: &ModeSpectrum, n: &QuantumNumbers) -> SurfaceSample {
    let config = spectrum.config;
    let mut radii = [None; 3];
    for ((slot, mode), n) in radii.iter_mut().zip(&spectrum.modes).zip(n.as_array()) {
        *slot = radius_surface(mode, n, &config);
    }
    let residual = match radii {
        [Some(a), Some(b), Some(c)] => Some(residual_of([a, b, c])),
        _ => None,
    };
    SurfaceSample {
        config,
        radii,
        residual,
        negative_modes: spectrum.negative_modes(),
        issue: residual.is_none().then_some(SampleIssue::UndefinedSurface),
    }
}

pub fn sample_surfaces(config: &AngularConfig, n: &QuantumNumbers) -> SurfaceSample {
    match mode_spectrum(config) {
        Ok(spectrum) => surfaces_from_spectrum(&spectrum, n),
        Err(_) => SurfaceSample {
            config: *config,
            radii: [None; 3],
            residual: None,
            negative_modes: 0,
            issue: Some(SampleIssue::Spectrum),
        },
    }
}

pub const GLOBAL_COS_RANGE: (f64, f64) = (-0.99999, 0.99999);
pub const GLOBAL_TAN_RANGE: (f64, f64) = (1.00001, 10.0);

/// Rectangular grid over `(cos_theta, tan_alpha)` with `resolution` nodes per
/// axis, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchDomain {
    pub cos_range: (f64, f64),
    pub tan_range: (f64, f64),
    pub resolution: usize,
}

impl Default for SearchDomain {
    fn default() -> Self {
        Self {
            cos_range: GLOBAL_COS_RANGE,
            tan_range: GLOBAL_TAN_RANGE,
            resolution: 1000,
        }
    }
}

impl SearchDomain {
    pub fn new(cos_range: (f64, f64), tan_range: (f64, f64), resolution: usize) -> Result<Self> {
        let domain = Self {
            cos_range,
            tan_range,
            resolution,
        };
        domain.validate()?;
        Ok(domain)
    }

    pub fn with_resolution(resolution: usize) -> Result<Self> {
        Self::new(GLOBAL_COS_RANGE, GLOBAL_TAN_RANGE, resolution)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::InvalidDomain("resolution must be at least 2"));
        }
        let (c0, c1) = self.cos_range;
        let (t0, t1) = self.tan_range;
        if !(c0 <= c1 && t0 <= t1) {
            return Err(Error::InvalidDomain("ranges must be ordered"));
        }
        if c0 < GLOBAL_COS_RANGE.0 || c1 > GLOBAL_COS_RANGE.1 {
            return Err(Error::InvalidDomain(
                "cos_theta range exceeds the global domain",
            ));
        }
        if t0 < GLOBAL_TAN_RANGE.0 || t1 > GLOBAL_TAN_RANGE.1 {
            return Err(Error::InvalidDomain(
                "tan_alpha range exceeds the global domain",
            ));
        }
        Ok(())
    }

    fn node(range: (f64, f64), steps: usize, i: usize) -> f64 {
        if i + 1 == steps {
            range.1
        } else {
            range.0 + (range.1 - range.0) * i as f64 / (steps - 1) as f64
        }
    }

    pub fn cos_at(&self, i: usize) -> f64 {
        Self::node(self.cos_range, self.resolution, i)
    }

    pub fn tan_at(&self, j: usize) -> f64 {
        Self::node(self.tan_range, self.resolution, j)
    }

    pub fn cos_step(&self) -> f64 {
        (self.cos_range.1 - self.cos_range.0) / (self.resolution - 1) as f64
    }

    pub fn tan_step(&self) -> f64 {
        (self.tan_range.1 - self.tan_range.0) / (self.resolution - 1) as f64
    }

    pub fn config_at(&self, i: usize, j: usize) -> Result<AngularConfig> {
        AngularConfig::new(self.cos_at(i), self.tan_at(j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub best: SurfaceSample,
    pub cos_index: usize,
    pub tan_index: usize,
    /// Index box `[cos_lo, cos_hi, tan_lo, tan_hi]` around every node whose
    /// residual is within [`NEAR_FACTOR`] of the best one.
    pub near_box: [usize; 4],
    /// Defined nodes by number of negative eigenvalues (0..=3).
    pub negative_mode_histogram: [usize; 4],
    pub undefined_nodes: usize,
}

/// Nodes with residual up to this multiple of the best one count as "near".
pub const NEAR_FACTOR: f64 = 4.0;

#[derive(Clone, Copy)]
struct Partial {
    best: Option<(f64, usize, usize, SurfaceSample)>,
    histogram: [usize; 4],
    undefined: usize,
}

impl Partial {
    const EMPTY: Self = Self {
        best: None,
        histogram: [0; 4],
        undefined: 0,
    };

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.undefined += other.undefined;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => {
                let b_first =
                    b.0.total_cmp(&a.0)
                        .then((b.1, b.2).cmp(&(a.1, a.2)))
                        .is_lt();
                Some(if b_first { b } else { a })
            }
            (a, b) => a.or(b),
        };
        self
    }
}

/// Evaluates every node and returns the one with the smallest defined
/// residual. Ties go to the smallest cos index, then the smallest tan index,
/// so the result does not depend on how rayon splits the work.
pub fn grid_scan(domain: &SearchDomain, n: &QuantumNumbers) -> Result<ScanResult> {
    domain.validate()?;
    let res = domain.resolution;
    let rows: Vec<(Partial, Vec<f64>)> = (0..res)
        .into_par_iter()
        .map(|i| {
            let mut acc = Partial::EMPTY;
            let mut residuals = vec![f64::NAN; res];
            for (j, slot) in residuals.iter_mut().enumerate() {
                let Ok(config) = domain.config_at(i, j) else {
                    acc.undefined += 1;
                    continue;
                };
                let sample = sample_surfaces(&config, n);
                match sample.residual {
                    Some(r) => {
                        *slot = r;
                        acc.histogram[sample.negative_modes] += 1;
                        acc = acc.merge(Partial {
                            best: Some((r, i, j, sample)),
                            histogram: [0; 4],
                            undefined: 0,
                        });
                    }
                    None => acc.undefined += 1,
                }
            }
            (acc, residuals)
        })
        .collect();

    let total = rows.iter().fold(Partial::EMPTY, |a, (b, _)| a.merge(*b));
    let (best_residual, cos_index, tan_index, best) = total.best.ok_or(Error::AllUndefined)?;
    let cutoff = NEAR_FACTOR * best_residual;
    let mut near_box = [cos_index, cos_index, tan_index, tan_index];
    for (i, (_, residuals)) in rows.iter().enumerate() {
        for (j, &r) in residuals.iter().enumerate() {
            if r <= cutoff {
                near_box = [
                    near_box[0].min(i),
                    near_box[1].max(i),
                    near_box[2].min(j),
                    near_box[3].max(j),
                ];
            }
        }
    }
    Ok(ScanResult {
        best,
        cos_index,
        tan_index,
        near_box,
        negative_mode_histogram: total.histogram,
        undefined_nodes: total.undefined,
    })
}

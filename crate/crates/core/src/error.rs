use thiserror::Error;

use crate::solver::Solution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantum number {value}: {reason}")]
    InvalidQuantumNumber { value: f64, reason: &'static str },

    #[error("angular configuration out of domain (cos_theta = {cos_theta}, tan_alpha = {tan_alpha}): {reason}")]
    ConfigDomain {
        cos_theta: f64,
        tan_alpha: f64,
        reason: &'static str,
    },

    #[error("no conversion from {from} to {to}")]
    UnknownUnitPair { from: String, to: String },

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("cubic leading coefficient {leading:e} is degenerate relative to scale {scale:e}")]
    DegenerateCubic { leading: f64, scale: f64 },

    #[error("cubic has complex roots (imaginary part {imag:e})")]
    ComplexRoots { imag: f64 },

    #[error("gamma2 = {gamma2} sits on the pole of the gamma1 expression")]
    Pole { gamma2: f64 },

    #[error("configuration lies on the Wannier ridge (|tan_alpha - 1| = {distance:e}); use the ridge closed forms")]
    RidgeBranch { distance: f64 },

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("eigenvector pairing is ambiguous (best overlap {overlap})")]
    AmbiguousPairing { overlap: f64 },

    #[error("zero eigenvalue in a nonzero mode (lambda = {lambda:e})")]
    ZeroEigenvalue { lambda: f64 },

    #[error("length must be positive, got {0}")]
    NonPositiveLength(f64),

    #[error("invalid search domain: {0}")]
    InvalidDomain(&'static str),

    #[error("no grid node produced a defined residual")]
    AllUndefined,

    #[error("no intersection: {reason} (best residual {residual:e})")]
    NoIntersection {
        reason: &'static str,
        residual: f64,
        best: Box<Solution>,
    },

    #[error("fixture line {line}: {message}")]
    Fixture { line: usize, message: String },
}

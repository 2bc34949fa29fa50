//! Four-dimensional harmonic-oscillator model of the helium atom.
//!
//! Given three oscillator quantum numbers the model places the two electrons
//! at the common intersection of three radius surfaces over the angular
//! coordinates `(cos_theta, tan_alpha)` and evaluates the total energy.
//! Lengths are in Bohr radii and energies in hartree throughout.

pub mod coupling;
pub mod cubic;
pub mod energy;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod numeric;
pub mod records;
pub mod solver;
pub mod spectrum;
pub mod surface;
pub mod units;

pub use coupling::{build_coupling, CouplingSystem};
pub use energy::{energy_closed_form, energy_sum_form, wannier_energy, EnergyBreakdown};
pub use error::{Error, Result};
pub use geometry::{AngularConfig, QuantumNumbers};
pub use solver::{locate_intersection, solve_intersection, Solution, SolveOptions};
pub use spectrum::{mode_spectrum, ModeSpectrum};
pub use surface::{grid_scan, sample_surfaces, SearchDomain, SurfaceSample};
pub use units::{convert, PhysicalConstants, Unit};

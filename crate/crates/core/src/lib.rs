//! Optical Kerr shutter simulator.
//!
//! A focused femtosecond pump makes a Kerr crystal transiently birefringent;
//! a probe crossing it picks up a phase `Δφ` and leaks through crossed
//! polarizers with transmittance `sin²(Δφ/2)`. This crate computes
//!
//! - the on-axis phase accumulated along the crystal, with or without group
//!   velocity dispersion ([`phase`]),
//! - the gate efficiency averaged over the Gaussian probe profile, 2-D
//!   efficiency maps over beam diameters, and the focusing optimum
//!   ([`transmittance`]),
//! - the temporal instrument response and its FWHM ([`temporal`]),
//!
//! from scenario files ([`scenario`]) with CSV outputs ([`output`]).
//!
//! All computation is in SI units; see [`quantities`] for the boundary
//! conversions.

pub mod beam;
pub mod cli;
pub mod error;
pub mod output;
pub mod phase;
pub mod quadrature;
pub mod quantities;
pub mod scenario;
pub mod table1;
pub mod temporal;
pub mod transmittance;

pub use beam::{BeamGeometry, KerrMedium, PulseSpec};
pub use error::{Error, Result};
pub use phase::PhaseResult;
pub use quantities::{Angle, Energy, Frequency, Gvd, Intensity, Length, Power, Time};
pub use scenario::{load_scenario, Scenario};
pub use temporal::{Convention, TemporalResponse};
pub use transmittance::{EfficiencyResult, SweepGrid};

//! Dissipation production for deterministic unitary evolutions of a
//! two-level system, represented as rotations of ensembles on the Bloch
//! sphere.
//!
//! The crate provides:
//!
//! * [`geometry`] — points, rotations and reflections of the unit sphere,
//!   together with the SU(2) double cover of SO(3);
//! * [`density`] — ensemble probability densities over the sphere,
//!   normalisation checks and seeded rejection sampling;
//! * [`dissipation`] — the per-trajectory dissipation production
//!   `omega = ln f(p) - ln f(Rp)`, its ensemble mean and the integral
//!   fluctuation identity `<exp(-omega)> = 1`;
//! * [`fluctuation`] — empirical histograms of `omega`, the
//!   Evans-Searles log-ratio fit, the symmetry-plane predictor and the
//!   verdict matrix over the built-in density cases.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! `obversim` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod density;
pub mod dissipation;
pub mod error;
pub mod fluctuation;
pub mod geometry;
pub mod quadrature;

mod rng;

pub use density::{builtin_cases, DensityKind, SampleSet, SphereDensity};
pub use dissipation::{MeanCurve, OmegaValue};
pub use error::{Error, Result};
pub use fluctuation::{EsftReport, OmegaHistogram, SymmetryVerdict, TableEntry, Verdict};
pub use geometry::{Reflection, Rotation, SpherePoint, Su2Matrix};
pub use quadrature::Resolution;

/// Densities below this value are treated as exactly zero.
///
/// Zeros of the built-in densities lie on measure-zero curves; the floor
/// keeps every log-ratio total without affecting any integral.
pub const DENSITY_FLOOR: f64 = 1e-300;

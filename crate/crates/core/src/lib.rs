//! Explicit proper r-harmonic functions on hyperbolic spaces and spheres,
//! with exact and jet-based numerical verification.

pub mod complex;
pub mod config;
pub mod error;
pub mod families;
pub mod geometry;
pub mod jet;
pub mod lift;
pub mod log_poly;
pub mod verifier;

pub use error::{Error, Result};
pub use jet::{Jet, MultiIndex, Scalar};
pub use log_poly::LogPolynomial;
pub use geometry::{MetricChart, ScalarField};
pub use families::{FamilySpec, HarmonicSeed};
pub use lift::LiftReport;

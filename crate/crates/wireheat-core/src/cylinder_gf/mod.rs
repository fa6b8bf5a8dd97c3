//! Scattered part of the dyadic Green function near an infinite cylinder.
//!
//! The field of a point source next to a cylinder splits into the free
//! propagator plus a scattered part, expanded over cylindrical waves:
//! an azimuthal mode sum and an axial wavenumber integral per tensor
//! entry. This module owns that machinery: the cylinder's scattering
//! amplitudes ([`tmatrix`]), the mode integrals assembling the four
//! independent tensor entries, and the traces the heat-transfer layer
//! consumes.

mod assembly;
mod tmatrix;

pub use assembly::{GtElements, GtEngine};
pub use tmatrix::{tmatrix, CylinderKind, TmatrixElements};

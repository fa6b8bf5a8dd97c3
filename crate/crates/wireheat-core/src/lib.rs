/*! Radiative heat transfer between two small particles near an infinite
cylindrical waveguide.

The crate computes the heat a hot dipole deposits in a cold one when both
sit at distance `h` from the surface of an infinite cylinder of radius `R`
(perfectly conducting or described by a dielectric function), and compares
that channel against the same pair in vacuum or above a flat mirror.

Everything is organized around the classical dyadic Green's function of the
scattering geometry:

* [`specfun`] — cylindrical Bessel, Hankel, and modified Bessel functions
  for the real, imaginary, and complex arguments the scattering problem
  produces, with exponent-tracked arithmetic so that extreme orders and
  evanescent tails stay finite.
* [`materials`] — dielectric models (Lorentz oscillator, Drude metal) and
  the dipole susceptibility built from them.
* [`quadrature`] — adaptive Gauss–Kronrod and oscillatory (Filon-type)
  panel integration used for the axial-wavenumber and frequency integrals.
* [`geometry_gf`] — closed-form vacuum and flat-mirror Green's functions.
* [`cylinder_gf`] — the scattered Green's function of the cylinder: mode
  T-matrices and the axial-wavenumber mode sums.
* [`analytic`] — closed-form approximations for the waveguide-mediated
  trace and transfer, plus the regime classifier built on them.
* [`transfer`] — frequency integrals: net transfer, total emission, their
  ratio, and derived quantities such as decay lengths.

The crate is `no_std`-compatible (`alloc` is required); the `std` feature
(on by default) only adds `std::error::Error` for [`Error`].
*/
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod constants;
pub mod cylinder_gf;
mod error;
pub mod geometry_gf;
pub mod materials;
pub mod quadrature;
mod scaled;
pub mod specfun;
pub mod transfer;

pub use error::{Error, Result};
pub use num_complex::Complex64;

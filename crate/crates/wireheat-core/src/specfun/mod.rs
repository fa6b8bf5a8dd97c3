//! Cylindrical special functions.
//!
//! The scattering problem needs Bessel and Hankel functions of integer
//! order at real arguments (propagating modes), purely imaginary
//! arguments (evanescent modes, handled internally through modified
//! Bessel functions), and general complex arguments (lossy dielectric
//! interiors). The public scalar interface is deliberately small:
//!
//! * [`bessel_j`] — regular solution `J_n(z)`
//! * [`hankel1`] — outgoing solution `H^(1)_n(z)`
//! * [`cyl_derivative`] — derivative of either, via
//!   `f_n'(z) = f_{n-1}(z) - (n/z) f_n(z)`
//!
//! Supported domain: `|z| <= 5e4`, `|Im z| <= 600`, `|n| <= 512`.
//! Within it the implementation targets relative accuracy around 1e-12
//! for well-conditioned values and reports anything it cannot represent
//! as an [`Error`] instead of returning NaN or infinity. The order cap
//! exists because results beyond it would silently lose the accuracy
//! contract; the mode-sum machinery works with raw arrays internally and
//! carries its own (configurable) cap.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scaled::Scaled;

pub(crate) mod logderiv;
pub(crate) mod miller;
pub(crate) mod modified;
pub(crate) mod neumann;

pub(crate) use logderiv::logderiv_j;

/// Largest order the scalar interface accepts.
pub const ORDER_CAP: i32 = 512;

/// Largest argument magnitude the scalar interface accepts.
pub const ARG_BOUND: f64 = 5.0e4;

/// Largest `|Im z|`; beyond this `J_n(z)` overflows double precision.
pub const IMAG_BOUND: f64 = 600.0;

/// Which cylinder function a derivative refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylFamily {
    /// Regular Bessel function `J_n`.
    J,
    /// Outgoing Hankel function `H^(1)_n`.
    H1,
}

fn validate(n: i32, z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain { what: "argument must be finite" });
    }
    if n.abs() > ORDER_CAP {
        return Err(Error::OrderCap { cap: ORDER_CAP, got: n });
    }
    if z.norm() > ARG_BOUND {
        return Err(Error::Range { what: "|z|", limit: ARG_BOUND, got: z.norm() });
    }
    if z.im.abs() > IMAG_BOUND {
        return Err(Error::Range { what: "|Im z|", limit: IMAG_BOUND, got: z.im.abs() });
    }
    Ok(())
}

fn finite_or_range(v: Complex64, what: &'static str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range { what, limit: f64::MAX, got: f64::INFINITY })
    }
}

/// Regular cylindrical Bessel function `J_n(z)`.
///
/// Negative orders fold through `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i32, z: Complex64) -> Result<Complex64> {
    validate(n, z)?;
    let m = n.unsigned_abs() as usize;
    let sign = if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };

    if z.im == 0.0 {
        let x = z.re;
        if x == 0.0 {
            return Ok(Complex64::new(if m == 0 { 1.0 } else { 0.0 }, 0.0));
        }
        // J_n(-x) = (-1)^n J_n(x)
        let refl = if x < 0.0 && m % 2 != 0 { -1.0 } else { 1.0 };
        let j = miller::j_array_real(m, x.abs());
        return Ok(Complex64::new(sign * refl * j[m].to_f64(), 0.0));
    }

    let j = miller::j_array_complex(m, z);
    finite_or_range(j[m].to_c64() * sign, "bessel_j magnitude")
}

/// Outgoing Hankel function `H^(1)_n(z) = J_n(z) + i Y_n(z)`.
///
/// Negative orders fold through `H^(1)_{-n} = (-1)^n H^(1)_n`. The origin
/// is a branch point and is rejected; on the negative real axis the
/// principal-branch value (continued from above) is returned.
pub fn hankel1(n: i32, z: Complex64) -> Result<Complex64> {
    validate(n, z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain { what: "hankel1 is singular at z = 0" });
    }
    let m = n.unsigned_abs() as usize;
    let sign = if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };
    let h = hankel1_abs_order(m, z)?;
    finite_or_range(h * sign, "hankel1 magnitude")
}

fn hankel1_abs_order(m: usize, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        let x = z.re;
        if x > 0.0 {
            let (j, y) = jy_arrays(m, x);
            return Ok(Complex64::new(j[m].to_f64(), y[m].to_f64()));
        }
        // Continuation onto the cut from above:
        // H1_n(-x) = -(-1)^n conj(H1_n(x)) for x > 0.
        let h = hankel1_abs_order(m, Complex64::new(-x, 0.0))?;
        let refl = if m % 2 == 0 { -1.0 } else { 1.0 };
        return Ok(refl * h.conj());
    }

    if z.im > 2.0 {
        // Deep upper half plane: H decays while J and Y explode, so the
        // J/Y route would cancel catastrophically. Route through K at
        // w = -iz (Re w > 2): H1_n(z) = -(2i/pi) i^{-n} K_n(-iz).
        let w = Complex64::new(z.im, -z.re);
        let karr = modified::k_array_complex(m, w)?;
        let phase = match m % 4 {
            0 => Complex64::new(0.0, -1.0),
            1 => Complex64::new(-1.0, 0.0),
            2 => Complex64::new(0.0, 1.0),
            _ => Complex64::new(1.0, 0.0),
        }; // -i * i^{-m}
        return Ok(karr[m].mul_c64(phase * core::f64::consts::FRAC_2_PI).to_c64());
    }

    // Moderate Im z > 0, or lower half plane (where H grows and the
    // series route is well conditioned).
    let n_arr = m.max(neumann::series_orders(z.norm()));
    let j = miller::j_array_complex(n_arr, z);
    let (y0, y1) = neumann::y01_complex(z, &j);
    let y = neumann::y_forward_complex(m, z, y0, y1);
    Ok(j[m].to_c64() + Complex64::new(0.0, 1.0) * y[m].to_c64())
}

/// Derivative of `J_n` or `H^(1)_n` at `z`.
pub fn cyl_derivative(family: CylFamily, n: i32, z: Complex64) -> Result<Complex64> {
    validate(n, z)?;
    // f'_{-n} = (-1)^n f'_n, same folding as the functions themselves
    let m = n.unsigned_abs() as i32;
    let sign = if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };

    if z.re == 0.0 && z.im == 0.0 {
        return match family {
            CylFamily::J => {
                let v = if m == 1 { 0.5 } else { 0.0 };
                Ok(Complex64::new(sign * v, 0.0))
            }
            CylFamily::H1 => Err(Error::Domain { what: "hankel1 is singular at z = 0" }),
        };
    }

    let eval = |k: i32| -> Result<Complex64> {
        match family {
            CylFamily::J => bessel_j(k, z),
            CylFamily::H1 => hankel1(k, z),
        }
    };
    let fm = eval(m)?;
    let d = if m == 0 {
        -eval(1)?
    } else {
        eval(m - 1)? - (m as f64) * fm / z
    };
    finite_or_range(d * sign, "cylinder function derivative magnitude")
}

/// `(J_0..J_ntop, Y_0..Y_ntop)` at real `x > 0`, exponent-tracked.
pub(crate) fn jy_arrays(n_top: usize, x: f64) -> (Vec<Scaled>, Vec<Scaled>) {
    debug_assert!(x > 0.0);
    let n_arr = n_top.max(neumann::series_orders(x));
    let j_full = miller::j_array_real(n_arr, x);
    let (y0, y1) = neumann::y01_real(x, &j_full);
    let y = neumann::y_forward_real(n_top, x, y0, y1);
    let mut j = j_full;
    j.truncate(n_top + 1);
    (j, y)
}

/// `(e^{-x} I, e^x K)` arrays at real `x > 0`, exponent-tracked.
pub(crate) fn ik_arrays(n_top: usize, x: f64) -> (Vec<Scaled>, Vec<Scaled>) {
    (modified::ive_array(n_top, x), modified::kve_array(n_top, x))
}

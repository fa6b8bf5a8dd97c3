//! Neumann functions `Y_n` from the `J` array.
//!
//! `Y_0` comes from the classical logarithm-plus-series identity
//!
//! ```text
//! Y_0(z) = (2/pi) (ln(z/2) + gamma) J_0(z) - (4/pi) sum_{k>=1} (-1)^k J_{2k}(z) / k
//! ```
//!
//! and `Y_1 = -dY_0/dz` termwise, using `J_0' = -J_1` and
//! `J_{2k}' = (J_{2k-1} - J_{2k+1})/2`. Higher orders follow from the
//! upward recurrence, which is stable for `Y`; it is run exponent-tracked
//! because `Y_n` overflows `f64` already at moderate order for small
//! arguments.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::FRAC_2_PI;
use num_complex::Complex64;

use crate::constants::EULER_GAMMA;
use crate::scaled::{Scaled, ScaledC};

/// Number of `J` orders the series needs at argument magnitude `a`.
pub(crate) fn series_orders(a: f64) -> usize {
    (a + 6.0 * a.cbrt() + 42.0) as usize
}

/// `(Y_0, Y_1)` at real `x > 0`, given `J_0..` covering [`series_orders`].
pub(crate) fn y01_real(x: f64, j: &[Scaled]) -> (f64, f64) {
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let j0 = j[0].to_f64();
    let j1 = j[1].to_f64();

    let mut sum0 = 0.0; // sum (-1)^k J_{2k} / k
    let mut sum1 = 0.0; // sum (-1)^k (J_{2k-1} - J_{2k+1}) / (2k)
    let mut sign = -1.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let j2k = j[2 * k].to_f64();
        let jm = j[2 * k - 1].to_f64();
        let jp = j[2 * k + 1].to_f64();
        sum0 += sign * j2k / k as f64;
        sum1 += sign * (jm - jp) / (2.0 * k as f64);
        if 2.0 * k as f64 > x && jm.abs().max(j2k.abs()).max(jp.abs()) < 1e-20 {
            break;
        }
        sign = -sign;
        k += 1;
    }

    let y0 = FRAC_2_PI * lg * j0 - 2.0 * FRAC_2_PI * sum0;
    let y1 = -FRAC_2_PI / x * j0 + FRAC_2_PI * lg * j1 + 2.0 * FRAC_2_PI * sum1;
    (y0, y1)
}

/// `(Y_0, Y_1)` at complex `z` off the negative real axis.
pub(crate) fn y01_complex(z: Complex64, j: &[ScaledC]) -> (Complex64, Complex64) {
    let lg = (0.5 * z).ln() + EULER_GAMMA;
    let j0 = j[0].to_c64();
    let j1 = j[1].to_c64();

    let mut sum0 = Complex64::new(0.0, 0.0);
    let mut sum1 = Complex64::new(0.0, 0.0);
    let mut sign = -1.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let j2k = j[2 * k].to_c64();
        let jm = j[2 * k - 1].to_c64();
        let jp = j[2 * k + 1].to_c64();
        sum0 += sign * j2k / k as f64;
        sum1 += sign * (jm - jp) / (2.0 * k as f64);
        if 2.0 * k as f64 > z.norm()
            && jm.norm().max(j2k.norm()).max(jp.norm()) < 1e-20
        {
            break;
        }
        sign = -sign;
        k += 1;
    }

    let y0 = FRAC_2_PI * lg * j0 - 2.0 * FRAC_2_PI * sum0;
    let y1 = -FRAC_2_PI * z.finv() * j0 + FRAC_2_PI * lg * j1 + 2.0 * FRAC_2_PI * sum1;
    (y0, y1)
}

/// `Y_0..=Y_ntop` by upward recurrence at real `x > 0`.
pub(crate) fn y_forward_real(n_top: usize, x: f64, y0: f64, y1: f64) -> Vec<Scaled> {
    let mut out = Vec::with_capacity(n_top + 1);
    out.push(Scaled::new(y0));
    if n_top == 0 {
        return out;
    }
    out.push(Scaled::new(y1));
    let inv_x = 1.0 / x;
    for n in 1..n_top {
        let next = out[n].mul_f64(2.0 * n as f64 * inv_x).sub(out[n - 1]);
        out.push(next);
    }
    out
}

/// `Y_0..=Y_ntop` by upward recurrence at complex `z`.
pub(crate) fn y_forward_complex(
    n_top: usize,
    z: Complex64,
    y0: Complex64,
    y1: Complex64,
) -> Vec<ScaledC> {
    let mut out = Vec::with_capacity(n_top + 1);
    out.push(ScaledC::new(y0));
    if n_top == 0 {
        return out;
    }
    out.push(ScaledC::new(y1));
    let inv_z = z.finv();
    for n in 1..n_top {
        let coef = inv_z * (2.0 * n as f64);
        let next = out[n].mul_c64(coef).add(out[n - 1].neg());
        out.push(next);
    }
    out
}

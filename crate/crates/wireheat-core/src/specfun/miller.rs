//! Regular Bessel functions `J_n` by backward recurrence.
//!
//! The three-term recurrence is unstable upward for `J` but stable
//! downward, so the whole array `J_0..J_ntop` comes from one downward
//! sweep started above the turning point, normalized afterwards with a
//! series identity (Miller's algorithm). Mantissas are exponent-tracked,
//! which removes the usual mid-sweep rescaling dance and lets the same
//! code run at arguments as small as the branch-point slivers need.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::scaled::{Scaled, ScaledC};

/// Starting order high enough that the downward sweep has converged onto
/// the minimal solution by the time it reaches `n_top`.
fn start_order(abs_z: f64, n_top: usize) -> usize {
    let base = abs_z + 6.0 * abs_z.cbrt() + 30.0;
    base as usize + n_top + 2
}

/// Below this argument a two-term power series is exact to double
/// precision for every order; the recurrence is pointless there.
const TINY_ARG: f64 = 1e-40;

/// `J_0..=J_ntop` at real `x >= 0`.
pub(crate) fn j_array_real(n_top: usize, x: f64) -> Vec<Scaled> {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        let mut out = vec![Scaled::ZERO; n_top + 1];
        out[0] = Scaled::new(1.0);
        return out;
    }
    if x < TINY_ARG {
        return j_series_tiny_real(n_top, x);
    }

    let m_start = start_order(x, n_top);
    let mut out = vec![Scaled::ZERO; n_top + 1];
    let inv_x = 1.0 / x;

    let mut w_up = Scaled::ZERO; // order n + 1
    let mut w = Scaled { m: 0.5, e: -996 }; // order n
    let mut norm = Scaled::ZERO; // J_0 + 2 sum_{k>=1} J_{2k}
    let mut n = m_start;
    loop {
        if n <= n_top {
            out[n] = w;
        }
        if n % 2 == 0 {
            norm = norm.add(if n == 0 { w } else { w.mul_f64(2.0) });
        }
        if n == 0 {
            break;
        }
        let w_down = w.mul_f64(2.0 * n as f64 * inv_x).sub(w_up);
        w_up = w;
        w = w_down;
        n -= 1;
    }

    for v in out.iter_mut() {
        *v = v.div(norm);
    }
    out
}

/// `J_0..=J_ntop` at complex `z`, exponent-tracked.
pub(crate) fn j_array_complex(n_top: usize, z: Complex64) -> Vec<ScaledC> {
    let abs_z = z.norm();
    if abs_z == 0.0 {
        let mut out = vec![ScaledC::ZERO; n_top + 1];
        out[0] = ScaledC::new(Complex64::new(1.0, 0.0));
        return out;
    }
    if abs_z < TINY_ARG {
        return j_series_tiny_complex(n_top, z);
    }

    let m_start = start_order(abs_z, n_top);
    let mut out = vec![ScaledC::ZERO; n_top + 1];
    let inv_z = z.finv();

    // Normalization: sum_n (i s)^n eps_n J_n(z) = exp(i s z) with eps_0 = 1,
    // eps_n = 2. The sign s is chosen so the right-hand side is the large
    // exponential, keeping the division well conditioned.
    let s = if z.im <= 0.0 { 1.0 } else { -1.0 };
    let phases = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, s),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -s),
    ];

    let mut w_up = ScaledC::ZERO;
    let mut w = ScaledC { m: Complex64::new(0.5, 0.0), e: -996 };
    let mut norm = ScaledC::ZERO;
    let mut n = m_start;
    loop {
        if n <= n_top {
            out[n] = w;
        }
        let term = w.mul_c64(phases[n % 4]);
        norm = norm.add(if n == 0 { term } else { term.mul_c64(Complex64::new(2.0, 0.0)) });
        if n == 0 {
            break;
        }
        let coef = inv_z * (2.0 * n as f64);
        let w_down = w.mul_c64(coef).add(w_up.neg());
        w_up = w;
        w = w_down;
        n -= 1;
    }

    // J_n = (w_n / norm) * exp(i s z); the exponential is split into its
    // unit-modulus part and a pure magnitude handled by the exponent.
    let unit = Complex64::from_polar(1.0, s * z.re);
    for v in out.iter_mut() {
        *v = v.div(norm).mul_c64(unit).mul_exp(-s * z.im);
    }
    out
}

fn j_series_tiny_real(n_top: usize, x: f64) -> Vec<Scaled> {
    let mut out = Vec::with_capacity(n_top + 1);
    let half = Scaled::new(0.5 * x);
    let mut lead = Scaled::new(1.0); // (x/2)^n / n!
    for n in 0..=n_top {
        if n > 0 {
            lead = lead.mul(half).mul_f64(1.0 / n as f64);
        }
        let corr = 1.0 - 0.25 * x * x / (n as f64 + 1.0);
        out.push(lead.mul_f64(corr));
    }
    out
}

fn j_series_tiny_complex(n_top: usize, z: Complex64) -> Vec<ScaledC> {
    let mut out = Vec::with_capacity(n_top + 1);
    let half = ScaledC::new(0.5 * z);
    let mut lead = ScaledC::new(Complex64::new(1.0, 0.0));
    for n in 0..=n_top {
        if n > 0 {
            lead = lead.mul(half).mul_c64(Complex64::new(1.0 / n as f64, 0.0));
        }
        let corr = Complex64::new(1.0, 0.0) - 0.25 * z * z / (n as f64 + 1.0);
        out.push(lead.mul_c64(corr));
    }
    out
}

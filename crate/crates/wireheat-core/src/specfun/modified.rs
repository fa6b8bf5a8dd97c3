//! Modified Bessel functions, exponentially scaled.
//!
//! Everything here works in the scaled pair `ive = e^{-x} I_n(x)`,
//! `kve = e^{x} K_n(x)`; the exponential factors that would dwarf `f64`
//! are reattached analytically by the callers. Real arguments cover the
//! evanescent part of the mode integrals; complex `K_0`, `K_1` (via a
//! continued fraction) back the Hankel function in the upper half plane.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};
use crate::scaled::{Scaled, ScaledC};

const TINY_ARG: f64 = 1e-40;

/// `e^{-x} I_n(x)` at real `x >= 0`.
pub(crate) fn ive(n: usize, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 20.0 {
        return ive_series(n, x);
    }
    if (4 * n * n) as f64 <= x {
        return ive_asymptotic(n, x);
    }
    // Large order comparable to the argument: fall back on the
    // backward-recurrence array, which is uniformly stable.
    ive_array(n, x)[n].to_f64()
}

fn ive_series(n: usize, x: f64) -> f64 {
    // log of the leading coefficient (x/2)^n / n!, times e^{-x}
    let mut ln_fact = 0.0;
    for k in 1..=n {
        ln_fact += (k as f64).ln();
    }
    let ln_lead = n as f64 * (0.5 * x).ln() - ln_fact - x;
    if ln_lead < -745.0 {
        return 0.0;
    }
    let mut term = ln_lead.exp();
    let mut sum = term;
    let q = 0.25 * x * x;
    for k in 1..400 {
        term *= q / (k as f64 * (n as f64 + k as f64));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

fn ive_asymptotic(n: usize, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..40 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= prev {
            break; // asymptotic tail started growing; stop at the optimum
        }
        sum += term;
        prev = term.abs();
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `(e^x K_0(x), e^x K_1(x))` at real `x > 0`.
pub(crate) fn kve01(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    if x < 2.0 {
        kve01_series(x)
    } else {
        (kve_integral(0.0, x), kve_integral(1.0, x))
    }
}

fn kve01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    // I_0, I_1 by plain power series (fast for x < 2)
    let (mut i0, mut i1) = (1.0, 0.5 * x);
    let (mut t0, mut t1) = (1.0, 0.5 * x);
    for k in 1..60 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        i0 += t0;
        i1 += t1;
        if t0 < i0 * 1e-18 && t1.abs() < i1.abs() * 1e-18 {
            break;
        }
    }
    let lg = (0.5 * x).ln();

    // K_0 = -(ln(x/2) + gamma) I_0 + sum_{k>=1} h_k q^k / (k!)^2
    let mut k0 = -(lg + EULER_GAMMA) * i0;
    let mut h = 0.0;
    let mut t = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        h += 1.0 / kf;
        t *= q / (kf * kf);
        let add = h * t;
        k0 += add;
        if add.abs() < k0.abs() * 1e-18 {
            break;
        }
    }

    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_{k>=0} (psi(k+1)+psi(k+2)) q^k / (k! (k+1)!)
    let mut sum = 0.0;
    let mut t = 1.0; // q^k / (k! (k+1)!)
    let mut psi_a = -EULER_GAMMA; // psi(k+1)
    let mut psi_b = 1.0 - EULER_GAMMA; // psi(k+2)
    for k in 0..60 {
        let add = (psi_a + psi_b) * t;
        sum += add;
        if k > 2 && add.abs() < sum.abs() * 1e-18 {
            break;
        }
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (kf + 2.0));
        psi_a += 1.0 / (kf + 1.0);
        psi_b += 1.0 / (kf + 2.0);
    }
    let k1 = 1.0 / x + lg * i1 - 0.25 * x * sum;

    let ex = x.exp();
    (k0 * ex, k1 * ex)
}

/// Trapezoid rule on `K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt`,
/// scaled by `e^x`. The integrand is even and decays double-exponentially,
/// so a uniform grid is spectrally accurate.
fn kve_integral(nu: f64, x: f64) -> f64 {
    let t_max = (1.0 + 800.0 / x).acosh();
    let n_steps = ((t_max / 0.1).ceil() as usize).max(80) + 1;
    let h = t_max / n_steps as f64;
    let mut sum = 0.5; // t = 0 term: e^0 * cosh(0), half weight
    for i in 1..=n_steps {
        let t = i as f64 * h;
        sum += (-x * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
    }
    sum * h
}

/// `e^{-x} I_n(x)` for `n = 0..=n_top`, exponent-tracked.
pub(crate) fn ive_array(n_top: usize, x: f64) -> Vec<Scaled> {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        let mut out = vec![Scaled::ZERO; n_top + 1];
        out[0] = Scaled::new(1.0);
        return out;
    }
    if x < TINY_ARG {
        // leading power series term per order, e^{-x} folded in
        let mut out = Vec::with_capacity(n_top + 1);
        let half = Scaled::new(0.5 * x);
        let mut lead = Scaled::new(1.0);
        for n in 0..=n_top {
            if n > 0 {
                lead = lead.mul(half).mul_f64(1.0 / n as f64);
            }
            out.push(lead.mul_f64(1.0 + 0.25 * x * x / (n as f64 + 1.0)).mul_exp(-x));
        }
        return out;
    }

    let m_start = (x + 6.0 * x.cbrt() + 30.0) as usize + n_top + 2;
    let mut out = vec![Scaled::ZERO; n_top + 1];
    let inv_x = 1.0 / x;
    let mut w_up = Scaled::ZERO;
    let mut w = Scaled { m: 0.5, e: -996 };
    let mut n = m_start;
    loop {
        if n <= n_top {
            out[n] = w;
        }
        if n == 0 {
            break;
        }
        let w_down = w.mul_f64(2.0 * n as f64 * inv_x).add(w_up);
        w_up = w;
        w = w_down;
        n -= 1;
    }
    // Normalize against the directly computed order-zero value.
    let ratio = Scaled::new(ive0_direct(x)).div(out[0]);
    for v in out.iter_mut() {
        *v = v.mul(ratio);
    }
    out
}

fn ive0_direct(x: f64) -> f64 {
    if x < 20.0 {
        ive_series(0, x)
    } else {
        ive_asymptotic(0, x)
    }
}

/// `e^x K_n(x)` for `n = 0..=n_top`, exponent-tracked (upward recurrence
/// is stable for `K`).
pub(crate) fn kve_array(n_top: usize, x: f64) -> Vec<Scaled> {
    debug_assert!(x > 0.0);
    let (k0, k1) = kve01(x);
    let mut out = Vec::with_capacity(n_top + 1);
    out.push(Scaled::new(k0));
    if n_top == 0 {
        return out;
    }
    out.push(Scaled::new(k1));
    let inv_x = 1.0 / x;
    for n in 1..n_top {
        let next = out[n].mul_f64(2.0 * n as f64 * inv_x).add(out[n - 1]);
        out.push(next);
    }
    out
}

/// `K_0(w)` and `K_1(w)` for complex `w` with `Re w >= 2`, by the
/// Thompson–Barnett continued fraction (modified Lentz evaluation).
pub(crate) fn k01_complex(w: Complex64) -> Result<(ScaledC, ScaledC)> {
    debug_assert!(w.re >= 2.0);
    let one = Complex64::new(1.0, 0.0);
    let a1 = Complex64::new(0.25, 0.0); // 1/4 - mu^2 at mu = 0

    let mut b = 2.0 * (one + w);
    let mut d = b.finv();
    let mut delh = d;
    let mut h = d;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;

    let mut converged = false;
    for i in 2..4000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / (i as f64);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (a * d + b).finv();
        delh = (b * d - one) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < s.norm() * 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "continued fraction for complex K_0" });
    }
    h = a1 * h;

    // K_0 = sqrt(pi/(2w)) e^{-w} / s ; K_1 = K_0 (w + 1/2 - h) / w
    let root = (PI / (2.0 * w)).sqrt();
    let phase = Complex64::from_polar(1.0, -w.im);
    let k0 = ScaledC::new(root * phase / s).mul_exp(-w.re);
    let k1 = k0.mul_c64((w + Complex64::new(0.5, 0.0) - h) / w);
    Ok((k0, k1))
}

/// `K_0..=K_ntop` at complex `w`, upward recurrence from [`k01_complex`].
pub(crate) fn k_array_complex(n_top: usize, w: Complex64) -> Result<Vec<ScaledC>> {
    let (k0, k1) = k01_complex(w)?;
    let mut out = Vec::with_capacity(n_top + 1);
    out.push(k0);
    if n_top == 0 {
        return Ok(out);
    }
    out.push(k1);
    let inv_w = w.finv();
    for n in 1..n_top {
        let coef = inv_w * (2.0 * n as f64);
        let next = out[n].mul_c64(coef).add(out[n - 1]);
        out.push(next);
    }
    Ok(out)
}

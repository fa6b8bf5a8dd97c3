//! Logarithmic derivative `J_n'(z) / J_n(z)` by continued fraction.
//!
//! The dielectric cylinder only ever needs this ratio at the (complex)
//! interior argument, never `J_n` itself, so the continued fraction
//!
//! ```text
//! J_{n+1}(z) / J_n(z) = 1 / (2(n+1)/z - 1 / (2(n+2)/z - ...))
//! ```
//!
//! evaluated by the modified Lentz algorithm is the whole story.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `J_n'(z) / J_n(z)` for complex `z != 0`.
pub(crate) fn logderiv_j(n: usize, z: Complex64) -> Result<Complex64> {
    // Complex division goes through norm_sqr, so the Lentz floor must keep
    // its square above the subnormal range or 1/tiny turns into NaN.
    let tiny = Complex64::new(1e-150, 0.0);
    let floor = 1e-300;
    let inv_z = z.finv();

    // Lentz for the ratio J_{n+1}/J_n: a_1 = 1, a_m = -1 (m >= 2),
    // b_m = 2(n + m)/z.
    let mut f = tiny;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    let max_iter = 2 * (z.norm() as usize + n) + 2000;
    let mut converged = false;
    for m in 1..=max_iter {
        let a = if m == 1 { 1.0 } else { -1.0 };
        let b = inv_z * 2.0 * (n + m) as f64;
        d = b + a * d;
        if d.norm_sqr() < floor {
            d = tiny;
        }
        c = b + a / c;
        if c.norm_sqr() < floor {
            c = tiny;
        }
        d = d.finv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "continued fraction for J ratio" });
    }
    Ok(inv_z * n as f64 - f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(n: usize, z: Complex64, want: Complex64, tol: f64) {
        // reference points are tabulated as J'/(z J)
        let got = logderiv_j(n, z).unwrap() / z;
        let err = (got - want).norm() / want.norm();
        assert!(err < tol, "n={n} z={z}: got {got}, want {want}, rel {err:.2e}");
    }

    #[test]
    fn ratio_matches_reference_points() {
        let z = Complex64::new(5.1365478014, 44.805511901);
        check(0, z, Complex64::new(-2.178839841858e-2, -2.469339928611e-3), 1e-11);
        check(1, z, Complex64::new(-2.179364457745e-2, -2.471225589241e-3), 1e-11);
        check(
            1,
            Complex64::new(0.78051361183, 294.864369),
            Complex64::new(-3.385630027247e-3, -8.946705779447e-6),
            1e-11,
        );
        check(0, Complex64::new(300.0, 0.0), Complex64::new(-3.192073599585e-3, 0.0), 1e-11);
        check(
            3,
            Complex64::new(45.0, 30.0),
            Complex64::new(-1.029465274934e-2, -1.523177835592e-2),
            1e-11,
        );
    }

    #[test]
    fn ratio_agrees_with_small_order_series() {
        // J_0'(z)/J_0(z) = -z/2 + O(z^3) near the origin
        let z = Complex64::new(1e-4, 2e-5);
        let got = logderiv_j(0, z).unwrap();
        let err = (got + z / 2.0).norm() / z.norm();
        assert!(err < 1e-8, "got {got}, rel {err:.2e}");
    }
}

//! Exponent-tracked floating point.
//!
//! Bessel recurrences and evanescent mode products routinely pass through
//! magnitudes like 1e±5000 even though every final, physical quantity is a
//! tame `f64`. Values here are kept as `m * 2^e` with the mantissa
//! renormalized into [0.5, 1) after each operation, so intermediate growth
//! only moves the integer exponent.

use libm::{exp, frexp, ldexp};
use num_complex::Complex64;

const LN_2: f64 = core::f64::consts::LN_2;

/// Real value `m * 2^e`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Scaled {
    pub m: f64,
    pub e: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: 0.0, e: 0 };

    pub fn new(m: f64) -> Self {
        Scaled { m, e: 0 }.norm()
    }

    fn norm(self) -> Self {
        if self.m == 0.0 || !self.m.is_finite() {
            return Scaled { m: self.m, e: 0 };
        }
        let (fr, ex) = frexp(self.m);
        Scaled { m: fr, e: self.e + ex as i64 }
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub fn mul(self, rhs: Scaled) -> Self {
        Scaled { m: self.m * rhs.m, e: self.e + rhs.e }.norm()
    }

    pub fn div(self, rhs: Scaled) -> Self {
        Scaled { m: self.m / rhs.m, e: self.e - rhs.e }.norm()
    }

    pub fn mul_f64(self, rhs: f64) -> Self {
        Scaled { m: self.m * rhs, e: self.e }.norm()
    }

    pub fn neg(self) -> Self {
        Scaled { m: -self.m, e: self.e }
    }

    pub fn add(self, rhs: Scaled) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let shift = lo.e - hi.e;
        if shift < -1080 {
            return hi;
        }
        Scaled { m: hi.m + ldexp(lo.m, shift as i32), e: hi.e }.norm()
    }

    pub fn sub(self, rhs: Scaled) -> Self {
        self.add(rhs.neg())
    }

    /// Multiply by `exp(t)` without leaving the representable band.
    pub fn mul_exp(self, t: f64) -> Self {
        let k = (t / LN_2).round();
        let rem = t - k * LN_2;
        Scaled { m: self.m * exp(rem), e: self.e + k as i64 }.norm()
    }

    /// Collapse to `f64`; saturates to ±inf / 0 outside the exponent range.
    pub fn to_f64(self) -> f64 {
        if self.m == 0.0 || !self.m.is_finite() {
            return self.m;
        }
        if self.e > 1100 {
            return f64::INFINITY.copysign(self.m);
        }
        if self.e < -1120 {
            return 0.0f64.copysign(self.m);
        }
        ldexp(self.m, self.e as i32)
    }
}

/// Complex value `m * 2^e`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ScaledC {
    pub m: Complex64,
    pub e: i64,
}

impl ScaledC {
    pub const ZERO: ScaledC = ScaledC { m: Complex64::new(0.0, 0.0), e: 0 };

    pub fn new(m: Complex64) -> Self {
        ScaledC { m, e: 0 }.norm()
    }

    pub fn from_scaled(re: Scaled) -> Self {
        ScaledC { m: Complex64::new(re.m, 0.0), e: re.e }
    }

    fn norm(self) -> Self {
        let mag = self.m.re.abs().max(self.m.im.abs());
        if mag == 0.0 || !mag.is_finite() {
            return ScaledC { m: self.m, e: 0 };
        }
        let (_, ex) = frexp(mag);
        ScaledC {
            m: Complex64::new(ldexp(self.m.re, -ex), ldexp(self.m.im, -ex)),
            e: self.e + ex as i64,
        }
    }

    pub fn is_zero(self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    pub fn mul(self, rhs: ScaledC) -> Self {
        ScaledC { m: self.m * rhs.m, e: self.e + rhs.e }.norm()
    }

    pub fn div(self, rhs: ScaledC) -> Self {
        ScaledC { m: self.m / rhs.m, e: self.e - rhs.e }.norm()
    }

    pub fn mul_c64(self, rhs: Complex64) -> Self {
        ScaledC { m: self.m * rhs, e: self.e }.norm()
    }

    pub fn mul_scaled(self, rhs: Scaled) -> Self {
        ScaledC { m: self.m * rhs.m, e: self.e + rhs.e }.norm()
    }

    pub fn neg(self) -> Self {
        ScaledC { m: -self.m, e: self.e }
    }

    pub fn add(self, rhs: ScaledC) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let shift = lo.e - hi.e;
        if shift < -1080 {
            return hi;
        }
        let lm = Complex64::new(ldexp(lo.m.re, shift as i32), ldexp(lo.m.im, shift as i32));
        ScaledC { m: hi.m + lm, e: hi.e }.norm()
    }

    pub fn mul_exp(self, t: f64) -> Self {
        let k = (t / LN_2).round();
        let rem = t - k * LN_2;
        ScaledC { m: self.m * exp(rem), e: self.e + k as i64 }.norm()
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(
            Scaled { m: self.m.re, e: self.e }.to_f64(),
            Scaled { m: self.m.im, e: self.e }.to_f64(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_handles_wide_exponent_gaps() {
        let a = Scaled::new(1.0);
        let b = Scaled { m: 0.5, e: -2000 };
        let s = a.add(b);
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn mul_exp_tracks_large_arguments() {
        let x = Scaled::new(3.0).mul_exp(2000.0).mul_exp(-2000.0);
        assert!((x.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn complex_products_far_outside_f64_range_cancel_back() {
        let big = ScaledC::new(Complex64::new(1.0, 2.0)).mul_exp(5000.0);
        let tiny = ScaledC::new(Complex64::new(0.25, 0.0)).mul_exp(-5000.0);
        let p = big.mul(tiny).to_c64();
        assert!((p.re - 0.25).abs() < 1e-12);
        assert!((p.im - 0.5).abs() < 1e-12);
    }
}

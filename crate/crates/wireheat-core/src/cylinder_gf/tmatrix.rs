//! Scattering coefficients of an infinite circular cylinder.
//!
//! A cylindrical wave of azimuthal order `n` and axial wavenumber `kz`
//! hitting the cylinder scatters into outgoing waves of the same `(n,
//! kz)` with amplitudes `T^MM`, `T^NN` (co-polarized) and `T^MN`
//! (cross-polarized, present only for a penetrable cylinder at `n >
//! 0`). Arguments are real: propagating modes (`kz < k`) evaluate the
//! cylinder functions at `x = qR` on the real axis, evanescent modes
//! (`kz > k`) at `x = i kappa R`, which is rewritten in terms of
//! modified Bessel functions so every building block is real and its
//! exponential envelope is tracked explicitly.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scaled::{Scaled, ScaledC};
use crate::specfun::{ik_arrays, jy_arrays, logderiv_j};

const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;
const FRAC_2_PI: f64 = core::f64::consts::FRAC_2_PI;

/// Electromagnetic response of the cylinder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CylinderKind {
    /// Perfect electric conductor.
    Pec,
    /// Homogeneous nonmagnetic material with the given relative
    /// permittivity. Requires `Im eps >= 0` (passive medium).
    Dielectric(Complex64),
}

/// Scattering amplitudes at one `(n, kz)`.
#[derive(Clone, Copy, Debug)]
pub struct TmatrixElements {
    /// M wave scattered into an M wave.
    pub mm: Complex64,
    /// N wave scattered into an N wave.
    pub nn: Complex64,
    /// Cross coupling between M and N waves.
    pub mn: Complex64,
}

/// Radial wavenumber on one side of the light line.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Radial {
    /// `kz < k`: transverse wavenumber `q = sqrt(k^2 - kz^2)` is real.
    Prop { q: f64 },
    /// `kz > k`: `q = i kappa` with `kappa = sqrt(kz^2 - k^2)`.
    Evan { kappa: f64 },
}

/// All scattering amplitudes `n = 0..=n_top` at one `kz` node,
/// exponent-tracked so deep evanescent values cannot overflow.
pub(crate) struct TmatNode {
    pub mm: Vec<ScaledC>,
    pub nn: Vec<ScaledC>,
    pub mn: Vec<ScaledC>,
}

/// Scattering amplitudes of the cylinder at `(n, kz)`.
///
/// `k` is the vacuum wavenumber. The branch point `kz = k` itself is
/// rejected; the mode integrals treat its neighborhood analytically and
/// never ask for it.
pub fn tmatrix(
    kind: CylinderKind,
    n: i32,
    k: f64,
    kz: f64,
    radius: f64,
) -> Result<TmatrixElements> {
    if n < 0 {
        return Err(Error::Domain { what: "azimuthal order must be nonnegative" });
    }
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain { what: "wavenumber must be positive and finite" });
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Domain { what: "radius must be positive and finite" });
    }
    if !(kz >= 0.0) || !kz.is_finite() {
        return Err(Error::Domain { what: "kz must be nonnegative and finite" });
    }
    if kz == k {
        return Err(Error::Domain { what: "kz = k sits on the branch point" });
    }
    let radial = if kz < k {
        Radial::Prop { q: ((k - kz) * (k + kz)).sqrt() }
    } else {
        Radial::Evan { kappa: ((kz - k) * (kz + k)).sqrt() }
    };
    let m = n as usize;
    let node = tmat_node(kind, m, k, kz, radial, radius)?;
    Ok(TmatrixElements {
        mm: node.mm[m].to_c64(),
        nn: node.nn[m].to_c64(),
        mn: node.mn[m].to_c64(),
    })
}

/// Scattering amplitudes for every order `0..=n_top` at one node.
///
/// The caller supplies `radial` computed from its own integration
/// variable so that near the branch point `q` keeps full precision
/// (computing it from `kz` would cancel).
pub(crate) fn tmat_node(
    kind: CylinderKind,
    n_top: usize,
    k: f64,
    kz: f64,
    radial: Radial,
    radius: f64,
) -> Result<TmatNode> {
    match kind {
        CylinderKind::Pec => match radial {
            Radial::Prop { q } => pec_prop(n_top, q * radius),
            Radial::Evan { kappa } => pec_evan(n_top, kappa * radius),
        },
        CylinderKind::Dielectric(eps) => {
            if !(eps.im >= 0.0) {
                return Err(Error::Domain { what: "permittivity must have Im eps >= 0" });
            }
            dielectric(n_top, eps, k, kz, radial, radius)
        }
    }
}

/// Scaled derivative arrays `f'_n = (f_{n-1} - f_{n+1}) / 2`, with
/// `f'_0 = -f_1` (J, Y, H) handled by the sign of the reflected term.
fn deriv_real(f: &[Scaled], n: usize) -> Scaled {
    if n == 0 {
        f[1].neg()
    } else {
        f[n - 1].sub(f[n + 1]).mul_f64(0.5)
    }
}

/// Same for modified Bessel I: `I'_0 = I_1`, `I'_n = (I_{n-1} + I_{n+1}) / 2`.
fn deriv_modified_i(f: &[Scaled], n: usize) -> Scaled {
    if n == 0 {
        f[1]
    } else {
        f[n - 1].add(f[n + 1]).mul_f64(0.5)
    }
}

/// And for K: `K'_0 = -K_1`, `K'_n = -(K_{n-1} + K_{n+1}) / 2`.
pub(crate) fn deriv_modified_k(f: &[Scaled], n: usize) -> Scaled {
    if n == 0 {
        f[1].neg()
    } else {
        f[n - 1].add(f[n + 1]).mul_f64(-0.5)
    }
}

fn pec_prop(n_top: usize, x: f64) -> Result<TmatNode> {
    let (j, y) = jy_arrays(n_top + 1, x);
    let i = Complex64::new(0.0, 1.0);
    let h: Vec<ScaledC> = j
        .iter()
        .zip(y.iter())
        .map(|(jj, yy)| ScaledC::from_scaled(*jj).add(ScaledC::from_scaled(*yy).mul_c64(i)))
        .collect();
    let mut mm = Vec::with_capacity(n_top + 1);
    let mut nn = Vec::with_capacity(n_top + 1);
    for n in 0..=n_top {
        let jp = deriv_real(&j, n);
        let hp = if n == 0 {
            h[1].neg()
        } else {
            h[n - 1].add(h[n + 1].neg()).mul_c64(Complex64::new(0.5, 0.0))
        };
        mm.push(ScaledC::from_scaled(jp).div(hp).neg());
        nn.push(ScaledC::from_scaled(j[n]).div(h[n]).neg());
    }
    Ok(TmatNode { mm, nn, mn: vec![ScaledC::ZERO; n_top + 1] })
}

fn pec_evan(n_top: usize, x: f64) -> Result<TmatNode> {
    // Continuation to q = i kappa: J_n(ix) = i^n I_n(x), H_n(ix) =
    // (2/pi) i^{-(n+1)} K_n(x), so
    //   T^NN = -J_n/H_n = -(pi/2) (-1)^n i I_n(x)/K_n(x)
    //   T^MM = -J'_n/H'_n = -(pi/2) (-1)^n i I'_n(x)/K'_n(x)
    // The I/K ratio carries e^{2x}, folded into the tracked exponent.
    let (iv, kv) = ik_arrays(n_top + 1, x);
    let mut mm = Vec::with_capacity(n_top + 1);
    let mut nn = Vec::with_capacity(n_top + 1);
    for n in 0..=n_top {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let phase = Complex64::new(0.0, -FRAC_PI_2 * sign);
        let rnn = iv[n].div(kv[n]).mul_exp(2.0 * x);
        let rmm = deriv_modified_i(&iv, n).div(deriv_modified_k(&kv, n)).mul_exp(2.0 * x);
        nn.push(ScaledC::from_scaled(rnn).mul_c64(phase));
        mm.push(ScaledC::from_scaled(rmm).mul_c64(phase));
    }
    Ok(TmatNode { mm, nn, mn: vec![ScaledC::ZERO; n_top + 1] })
}

fn dielectric(
    n_top: usize,
    eps: Complex64,
    k: f64,
    kz: f64,
    radial: Radial,
    radius: f64,
) -> Result<TmatNode> {
    // Interior transverse wavenumber; principal sqrt keeps Im >= 0 for
    // any passive eps, selecting waves that decay into the cylinder.
    let qeps2 = eps * (k * k) - Complex64::new(kz * kz, 0.0);
    let zeps = qeps2.sqrt() * radius;
    let sqeps = eps.sqrt();

    // Exterior factors shared by all orders at this node.
    let q2: Complex64 = match radial {
        Radial::Prop { q } => Complex64::new(q * q, 0.0),
        Radial::Evan { kappa } => Complex64::new(-kappa * kappa, 0.0),
    };
    let inv_q_diff = qeps2.finv() - q2.finv();

    let mut mm = Vec::with_capacity(n_top + 1);
    let mut nn = Vec::with_capacity(n_top + 1);
    let mut mn = Vec::with_capacity(n_top + 1);

    match radial {
        Radial::Prop { q } => {
            let x = q * radius;
            let (j, y) = jy_arrays(n_top + 1, x);
            let i = Complex64::new(0.0, 1.0);
            let h: Vec<ScaledC> = j
                .iter()
                .zip(y.iter())
                .map(|(jj, yy)| {
                    ScaledC::from_scaled(*jj).add(ScaledC::from_scaled(*yy).mul_c64(i))
                })
                .collect();
            let xs = Scaled::new(x);
            for n in 0..=n_top {
                let a_eps = logderiv_j(n, zeps)? / zeps;
                let hp = if n == 0 {
                    h[1].neg()
                } else {
                    h[n - 1].add(h[n + 1].neg()).mul_c64(Complex64::new(0.5, 0.0))
                };
                let b_h = hp.div(h[n]).to_c64() / x;
                let b_j = Complex64::new(deriv_real(&j, n).div(j[n]).to_f64() / x, 0.0);
                let pref = ScaledC::from_scaled(j[n]).div(h[n]).neg();
                let xh2 = {
                    let xh = h[n].mul_scaled(xs);
                    xh.mul(xh)
                };
                let (tm, tn, tx) =
                    t_ratios(n, eps, sqeps, kz, k, radius, inv_q_diff, a_eps, b_h, b_j);
                mm.push(pref.mul_c64(tm));
                nn.push(pref.mul_c64(tn));
                mn.push(if n == 0 { ScaledC::ZERO } else { ScaledC::new(tx).div(xh2) });
            }
        }
        Radial::Evan { kappa } => {
            let x = kappa * radius;
            let (iv, kv) = ik_arrays(n_top + 1, x);
            for n in 0..=n_top {
                let a_eps = logderiv_j(n, zeps)? / zeps;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                // J'/(xJ) and H'/(xH) continued to q = i kappa are real:
                //   B_J = -I'_n/(x I_n), B_H = -K'_n/(x K_n)
                let b_j = Complex64::new(
                    -deriv_modified_i(&iv, n).div(iv[n]).to_f64() / x,
                    0.0,
                );
                let b_h = Complex64::new(
                    -deriv_modified_k(&kv, n).div(kv[n]).to_f64() / x,
                    0.0,
                );
                let pref = ScaledC::from_scaled(iv[n].div(kv[n]).mul_exp(2.0 * x))
                    .mul_c64(Complex64::new(0.0, -FRAC_PI_2 * sign));
                // [qR H_n(qR)]^2 = (4/pi^2) (-1)^n x^2 K_n(x)^2
                let xh2 = ScaledC::from_scaled(kv[n].mul(kv[n]).mul_exp(-2.0 * x))
                    .mul_c64(Complex64::new(FRAC_2_PI * FRAC_2_PI * sign * x * x, 0.0));
                let (tm, tn, tx) =
                    t_ratios(n, eps, sqeps, kz, k, radius, inv_q_diff, a_eps, b_h, b_j);
                mm.push(pref.mul_c64(tm));
                nn.push(pref.mul_c64(tn));
                mn.push(if n == 0 { ScaledC::ZERO } else { ScaledC::new(tx).div(xh2) });
            }
        }
    }
    Ok(TmatNode { mm, nn, mn })
}

/// The order-dependent rational factors of the penetrable-cylinder
/// amplitudes: returns `(Tmm/pref, Tnn/pref, Tmn * [qR H_n]^2)` where
/// `pref = -J_n(qR)/H_n(qR)`.
#[allow(clippy::too_many_arguments)]
fn t_ratios(
    n: usize,
    eps: Complex64,
    sqeps: Complex64,
    kz: f64,
    k: f64,
    radius: f64,
    inv_q_diff: Complex64,
    a_eps: Complex64,
    b_h: Complex64,
    b_j: Complex64,
) -> (Complex64, Complex64, Complex64) {
    let kk = if n == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        inv_q_diff * (n as f64 * kz) / (sqeps * k * radius * radius)
    };
    let kk2 = kk * kk;
    let d1 = a_eps - b_h / eps;
    let d2 = a_eps - b_h;
    let d3 = a_eps - b_j / eps;
    let d4 = a_eps - b_j;
    let den = d1 * d2 - kk2;
    let tm = (d1 * d4 - kk2) / den;
    let tn = (d2 * d3 - kk2) / den;
    let tx = Complex64::new(0.0, FRAC_2_PI) * kk / (sqeps * den);
    (tm, tn, tx)
}

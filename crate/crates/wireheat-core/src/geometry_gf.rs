//! Closed-form dyadic Green's functions: vacuum and flat mirror.
//!
//! Both particles sit on the line parallel to the waveguide axis (the
//! `z` axis), so the dyadic between them is diagonal in the
//! `(rho, phi, z)` frame apart from the `(1,3)` element, which vanishes
//! in vacuum and for the plate. Conventions: Green's functions carry
//! units of 1/m (the `k^2/eps_0` prefactor of the field response lives
//! in the transfer formulas, not here), and the trace combinations used
//! by the transfer integrals are `Tr(G G^dagger)` between the two
//! particle positions and `Tr Im G` at coincident positions.

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Particle placement relative to the scatterer.
///
/// `radius` is the cylinder (or sphere-of-curvature) radius `R`; `height`
/// is the surface-to-particle gap `h`, so both particles sit at distance
/// `R + h` from the axis; `separation` is the axial distance `d` between
/// the two particles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometry {
    pub radius: f64,
    pub height: f64,
    pub separation: f64,
}

impl Geometry {
    pub fn new(radius: f64, height: f64, separation: f64) -> Result<Self> {
        if !(radius > 0.0) || !(height > 0.0) || separation < 0.0 {
            return Err(Error::Domain {
                what: "geometry needs radius > 0, height > 0, separation >= 0",
            });
        }
        Ok(Geometry { radius, height, separation })
    }

    /// Distance of each particle from the cylinder axis.
    pub fn axis_distance(&self) -> f64 {
        self.radius + self.height
    }
}

/// The diagonal of the axial vacuum dyadic between two points separated
/// by `d` along `z`: `(transverse, transverse, longitudinal)`.
///
/// `G_t = e^{ikd}/(4 pi d) (1 + i/(kd) - 1/(kd)^2)`,
/// `G_l = e^{ikd}/(4 pi d) (-2i/(kd) + 2/(kd)^2)`.
pub fn vacuum_gf_axial(k: f64, d: f64) -> Result<(Complex64, Complex64)> {
    if !(k > 0.0) || !(d > 0.0) {
        return Err(Error::Domain { what: "vacuum_gf_axial needs k > 0 and d > 0" });
    }
    let kd = k * d;
    let pref = Complex64::from_polar(1.0, kd) / (4.0 * core::f64::consts::PI * d);
    let i = Complex64::new(0.0, 1.0);
    let gt = pref * (1.0 + i / kd - 1.0 / (kd * kd));
    let gl = pref * (-2.0 * i / kd + 2.0 / (kd * kd));
    Ok((gt, gl))
}

/// `Tr(G0 G0^dagger)` between the two particles in vacuum:
/// `(1/(8 pi^2 d^2)) (1 + 1/(kd)^2 + 3/(kd)^4)`.
pub fn vacuum_trace(k: f64, d: f64) -> Result<f64> {
    if !(k > 0.0) || !(d > 0.0) {
        return Err(Error::Domain { what: "vacuum_trace needs k > 0 and d > 0" });
    }
    let kd = k * d;
    let kd2 = kd * kd;
    Ok((1.0 + 1.0 / kd2 + 3.0 / (kd2 * kd2)) / (8.0 * core::f64::consts::PI * core::f64::consts::PI * d * d))
}

/// Full 3x3 dyadic of a point source at `src` observed at `obs` in
/// vacuum, in a fixed Cartesian frame:
/// `g0 = e^{ikr}/(4 pi r) [ a(kr) I + b(kr) rhat rhat ]` with
/// `a = 1 + i/(kr) - 1/(kr)^2`, `b = -1 - 3i/(kr) + 3/(kr)^2`.
fn free_dyadic(k: f64, dx: [f64; 3]) -> [[Complex64; 3]; 3] {
    let r = (dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2]).sqrt();
    let kr = k * r;
    let i = Complex64::new(0.0, 1.0);
    let pref = Complex64::from_polar(1.0, kr) / (4.0 * core::f64::consts::PI * r);
    let a = 1.0 + i / kr - 1.0 / (kr * kr);
    let b = -1.0 - 3.0 * i / kr + 3.0 / (kr * kr);
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for p in 0..3 {
        for q in 0..3 {
            let unit = if p == q { 1.0 } else { 0.0 };
            out[p][q] = pref * (a * unit + b * dx[p] * dx[q] / (r * r));
        }
    }
    out
}

/// Green's dyadic between the two particles above a perfect mirror,
/// by the image construction. Frame: `x` normal to the plate, `z` along
/// the particle line; both particles hover at height `h`.
///
/// Returns the 3x3 matrix (units 1/m). The direct term is diagonal; the
/// image term adds off-diagonal `xz` elements.
pub fn plate_gf(k: f64, h: f64, d: f64) -> Result<[[Complex64; 3]; 3]> {
    if !(k > 0.0) || !(h > 0.0) || !(d > 0.0) {
        return Err(Error::Domain { what: "plate_gf needs k > 0, h > 0, d > 0" });
    }
    let (gt, gl) = vacuum_gf_axial(k, d)?;
    let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
    g[0][0] = gt;
    g[1][1] = gt;
    g[2][2] = gl;

    // Image source at depth h behind the mirror: displacement from image
    // to observer is (2h, 0, d). A perfect electric mirror flips the
    // tangential components of the source dipole: M = diag(1, -1, -1)
    // acting on the source index.
    let gi = free_dyadic(k, [2.0 * h, 0.0, d]);
    let mirror = [1.0, -1.0, -1.0];
    for p in 0..3 {
        for q in 0..3 {
            g[p][q] += gi[p][q] * mirror[q];
        }
    }
    Ok(g)
}

/// `Tr(G G^dagger)` for the plate geometry.
pub fn plate_trace(k: f64, h: f64, d: f64) -> Result<f64> {
    let g = plate_gf(k, h, d)?;
    let mut tr = 0.0;
    for row in &g {
        for v in row {
            tr += v.norm_sqr();
        }
    }
    Ok(tr)
}

/// Far-field limit of the plate trace: the image doubles the solid angle,
/// so `Tr(G G^dagger) -> 2 x` vacuum at `d >> h, 1/k`.
pub fn plate_trace_farfield(k: f64, d: f64) -> Result<f64> {
    Ok(2.0 * vacuum_trace(k, d)?)
}

/// `Tr Im G` at the position of a single particle above the mirror:
/// vacuum part `k/(2 pi)` plus the image reflection.
pub fn plate_im_trace_onepoint(k: f64, h: f64) -> Result<f64> {
    if !(k > 0.0) || !(h > 0.0) {
        return Err(Error::Domain { what: "plate_im_trace_onepoint needs k > 0, h > 0" });
    }
    let gi = free_dyadic(k, [2.0 * h, 0.0, 0.0]);
    let mirror = [1.0, -1.0, -1.0];
    let mut tr = k / (2.0 * core::f64::consts::PI);
    for p in 0..3 {
        tr += (gi[p][p] * mirror[p]).im;
    }
    Ok(tr)
}

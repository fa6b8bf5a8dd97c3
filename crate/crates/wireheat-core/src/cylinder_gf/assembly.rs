//! Scattered part of the dyadic Green function outside the cylinder.
//!
//! Each azimuthal order `n` contributes an integral over the axial
//! wavenumber `kz` from 0 to infinity. The integration variable is
//! `u`, with `kz = k(1 - u)` on the propagating side and `kz = k(1 +
//! u)` on the evanescent side, so the transverse wavenumber `q = k
//! sqrt(u(2 -/+ u))` keeps full precision near the light line `kz =
//! k`. The evanescent side is cut off where `e^{-2 kappa h}` drops
//! below the configured tail tolerance.
//!
//! A perfectly conducting cylinder scatters the `n = 0` mode with an
//! amplitude that decays only logarithmically toward the light line,
//! so the window `|kz - k| < k u_min` cannot be dropped: it is folded
//! over the branch point (`u = e^{-s}`, both sides paired) and
//! integrated in `s`, with the remainder past `s = 140` summed from
//! the asymptotic form of the pair. Penetrable cylinders lose their
//! scattering amplitude fast enough at the light line that the same
//! window is negligible.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::cylinder_gf::tmatrix::{deriv_modified_k, tmat_node, CylinderKind, Radial};
use crate::error::{Error, Result};
use crate::quadrature::{oscillatory_segmented, OscillationKind, QuadratureSpec};
use crate::scaled::{Scaled, ScaledC};
use crate::specfun::{ik_arrays, jy_arrays};

const FRAC_2_PI: f64 = core::f64::consts::FRAC_2_PI;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Start of the analytic remainder in the folded branch-point window,
/// in `s = ln(1/u)`.
const SHELL_S_MAX: f64 = 140.0;

/// Relative size below which an azimuthal term counts as converged;
/// two consecutive such terms end the mode sum.
const TRUNC_REL: f64 = 1e-12;

/// The four independent entries of the scattered Green dyadic on the
/// cylinder axis side, in cylindrical components (radial, azimuthal,
/// axial). The full matrix is antisymmetric in the off-diagonal pair.
#[derive(Clone, Copy, Debug, Default)]
pub struct GtElements {
    pub g11: Complex64,
    pub g22: Complex64,
    pub g33: Complex64,
    pub g13: Complex64,
}

impl GtElements {
    pub fn zero() -> Self {
        GtElements::default()
    }

    /// The full 3x3 dyadic; the lower off-diagonal entry carries the
    /// opposite sign of the upper one.
    pub fn matrix(&self) -> [[Complex64; 3]; 3] {
        let z = Complex64::new(0.0, 0.0);
        [[self.g11, z, self.g13], [z, self.g22, z], [-self.g13, z, self.g33]]
    }

    fn add(self, o: GtElements) -> Self {
        GtElements {
            g11: self.g11 + o.g11,
            g22: self.g22 + o.g22,
            g33: self.g33 + o.g33,
            g13: self.g13 + o.g13,
        }
    }

    fn scale(self, w: Complex64) -> Self {
        GtElements { g11: w * self.g11, g22: w * self.g22, g33: w * self.g33, g13: w * self.g13 }
    }

    fn from_channels(v: [Complex64; 4]) -> Self {
        GtElements { g11: v[0], g22: v[1], g33: v[2], g13: v[3] }
    }
}

#[derive(Clone, Copy, Debug)]
enum Side {
    Prop,
    Evan,
}

/// Mode-integral engine for one cylinder at one vacuum wavenumber.
///
/// Both dipoles sit at the same height `h` above the surface, so the
/// evaluation radius is `r = radius + h` for source and observer
/// alike; `d` is their axial separation.
pub struct GtEngine {
    kind: CylinderKind,
    k: f64,
    radius: f64,
    r: f64,
    u_min: f64,
    u_max: f64,
    spec: QuadratureSpec,
}

impl GtEngine {
    pub fn new(
        kind: CylinderKind,
        k: f64,
        radius: f64,
        height: f64,
        spec: QuadratureSpec,
    ) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain { what: "wavenumber must be positive and finite" });
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain { what: "radius must be positive and finite" });
        }
        if !(height > 0.0) || !height.is_finite() {
            return Err(Error::Domain { what: "height must be positive and finite" });
        }
        if let CylinderKind::Dielectric(eps) = kind {
            if !(eps.im >= 0.0) || !eps.re.is_finite() || !eps.im.is_finite() {
                return Err(Error::Domain { what: "permittivity must have Im eps >= 0" });
            }
        }
        if !(spec.evanescent_tail_tol > 0.0 && spec.evanescent_tail_tol < 1.0) {
            return Err(Error::Domain { what: "evanescent_tail_tol must lie in (0, 1)" });
        }
        let kappa_max = (1.0 / spec.evanescent_tail_tol).ln() / (2.0 * height);
        // u_max = sqrt(1 + (kappa/k)^2) - 1 without cancellation.
        let c2 = (kappa_max / k) * (kappa_max / k);
        let u_max = c2 / ((1.0 + c2).sqrt() + 1.0);
        let engine = GtEngine {
            kind,
            k,
            radius,
            r: radius + height,
            u_min: 1e-9,
            u_max,
            spec,
        };
        if engine.u_max <= engine.u_min {
            return Err(Error::Domain { what: "evanescent window shorter than branch window" });
        }
        Ok(engine)
    }

    /// Height of the dipoles above the surface.
    pub fn height(&self) -> f64 {
        self.r - self.radius
    }

    /// Shrink or widen the window `|kz - k| < k u_min` treated by the
    /// folded branch-point integral. The result must not depend on the
    /// choice; the default is `1e-9`.
    pub fn with_branch_window(mut self, u_min: f64) -> Result<Self> {
        if !(u_min > 0.0 && u_min <= 1e-3) {
            return Err(Error::Domain { what: "branch window must lie in (0, 1e-3]" });
        }
        if self.u_max <= u_min {
            return Err(Error::Domain { what: "evanescent window shorter than branch window" });
        }
        self.u_min = u_min;
        Ok(self)
    }

    /// Scattered Green dyadic at axial separation `d`, summed over
    /// azimuthal orders until two consecutive terms fall below
    /// `1e-12` of every entry.
    pub fn gt(&self, d: f64) -> Result<GtElements> {
        let mut total = GtElements::zero();
        let mut small = 0usize;
        for n in 0..=self.spec.n_max_cap {
            let term = self.gt_mode(n, d)?;
            total = total.add(term);
            let negligible = [
                (term.g11, total.g11),
                (term.g22, total.g22),
                (term.g33, total.g33),
                (term.g13, total.g13),
            ]
            .iter()
            .all(|(t, tot)| t.norm() <= TRUNC_REL * tot.norm());
            small = if negligible { small + 1 } else { 0 };
            if small >= 2 {
                return Ok(total);
            }
        }
        Err(Error::NoConvergence { what: "azimuthal mode sum" })
    }

    /// Contribution of a single azimuthal order. For a perfectly
    /// conducting cylinder the `n = 0` term includes the folded
    /// branch-point window.
    pub fn gt_mode(&self, n: usize, d: f64) -> Result<GtElements> {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(Error::Domain { what: "separation must be nonnegative and finite" });
        }
        let prop = self.side_integral(n, d, Side::Prop)?;
        let evan = self.side_integral(n, d, Side::Evan)?;
        let w = if n == 0 { 0.25 } else { 0.5 } / core::f64::consts::PI;
        let iwk = Complex64::new(0.0, w * self.k);
        let mut out = GtElements::from_channels([
            prop[0] + evan[0],
            prop[1] + evan[1],
            prop[2] + evan[2],
            prop[3] + evan[3],
        ])
        .scale(iwk);
        if n == 0 {
            out = out.add(self.branch_shell(d)?);
        }
        Ok(out)
    }

    /// The `n = 0` contribution of the window `|kz - k| < k u_min`,
    /// folded over the branch point and integrated in `s = ln(1/u)`.
    /// Zero for a penetrable cylinder, whose amplitudes vanish at the
    /// light line fast enough for the window not to matter.
    pub fn branch_shell(&self, d: f64) -> Result<GtElements> {
        if self.kind != CylinderKind::Pec {
            return Ok(GtElements::zero());
        }
        if !(d >= 0.0) || !d.is_finite() {
            return Err(Error::Domain { what: "separation must be nonnegative and finite" });
        }
        let k = self.k;
        let s0 = (1.0 / self.u_min).ln();
        let mut g = |s: f64| -> Result<[Complex64; 4]> {
            let u = (-s).exp();
            let p = self.node(0, u, Side::Prop)?;
            let e = self.node(0, u, Side::Evan)?;
            let (sp, cp) = (k * (1.0 - u) * d).sin_cos();
            let (se, ce) = (k * (1.0 + u) * d).sin_cos();
            let m = k * u;
            Ok([
                m * (p[0] * cp + e[0] * ce),
                m * (p[1] * cp + e[1] * ce),
                m * (p[2] * cp + e[2] * ce),
                m * (p[3] * sp + e[3] * se),
            ])
        };
        let kinds = [OscillationKind::Cosine; 4];
        let (mut vals, converged) =
            oscillatory_segmented::<4, _>(&mut g, 0.0, 0.0, kinds, &[s0, SHELL_S_MAX], &self.spec)?;
        if !converged {
            return Err(Error::NoConvergence { what: "branch-point window integral" });
        }
        // Past s_max the paired integrand follows its asymptotic form;
        // only the radial-radial entry decays slowly enough to matter.
        let l0 = 0.5 * SHELL_S_MAX + (core::f64::consts::SQRT_2 / (k * self.radius)).ln()
            - EULER_GAMMA;
        let tail = Complex64::new(2.0 / l0, -core::f64::consts::FRAC_PI_2 / (l0 * l0))
            / (2.0 * k * self.r * self.r)
            * (k * d).cos();
        vals[0] += tail;
        let iw = Complex64::new(0.0, 0.25 / core::f64::consts::PI);
        Ok(GtElements::from_channels(vals).scale(iw))
    }

    /// Integral of the four entry integrands times their axial phase
    /// factors over one side of the light line, without weights.
    fn side_integral(&self, n: usize, d: f64, side: Side) -> Result<[Complex64; 4]> {
        let edges = self.edges(side);
        let kd = self.k * d;
        let rate = match side {
            Side::Prop => -kd,
            Side::Evan => kd,
        };
        let kinds = [
            OscillationKind::Cosine,
            OscillationKind::Cosine,
            OscillationKind::Cosine,
            OscillationKind::Sine,
        ];
        let mut f = |u: f64| self.node(n, u, side);
        let (sum, converged) =
            oscillatory_segmented::<4, _>(&mut f, rate, kd, kinds, &edges, &self.spec)?;
        if !converged {
            return Err(Error::NoConvergence { what: "axial mode integral" });
        }
        Ok(sum)
    }

    /// Segment edges in `u`. Geometric decades confine the steep
    /// light-line approach; the evanescent side continues to the
    /// configured cutoff.
    fn edges(&self, side: Side) -> Vec<f64> {
        let mut edges = Vec::new();
        let top = match side {
            Side::Prop => 1.0,
            Side::Evan => self.u_max,
        };
        let knee = f64::min(1e-2, top);
        let mut u = self.u_min;
        while u < knee {
            edges.push(u);
            u = (u * 10.0).min(knee);
        }
        edges.push(knee);
        for stop in [0.1, 0.5, 1.0] {
            if top > stop {
                edges.push(stop);
            }
        }
        if top > *edges.last().unwrap() {
            edges.push(top);
        }
        edges
    }

    /// The four entry integrands at one `u` node, without the axial
    /// phase factor and without weights. Everything is assembled in
    /// exponent-tracked arithmetic; on the evanescent side the net
    /// envelope `e^{-2 kappa h}` is all that survives into the result.
    fn node(&self, n: usize, u: f64, side: Side) -> Result<[Complex64; 4]> {
        let k = self.k;
        let r = self.r;
        let (kz, radial, y, hy, hpy, q_over_k) = match side {
            Side::Prop => {
                let kz = k * (1.0 - u);
                let qk = (u * (2.0 - u)).sqrt();
                let q = k * qk;
                let y = q * r;
                let (j, yv) = jy_arrays(n + 1, y);
                let hy = hankel(&j, &yv, n);
                let hpy = if n == 0 {
                    hankel(&j, &yv, 1).neg()
                } else {
                    hankel(&j, &yv, n - 1)
                        .add(hankel(&j, &yv, n + 1).neg())
                        .mul_c64(Complex64::new(0.5, 0.0))
                };
                (kz, Radial::Prop { q }, Complex64::new(y, 0.0), hy, hpy, Complex64::new(qk, 0.0))
            }
            Side::Evan => {
                let kz = k * (1.0 + u);
                let qk = (u * (2.0 + u)).sqrt();
                let kappa = k * qk;
                let y = kappa * r;
                let (_, kv) = ik_arrays(n + 1, y);
                // H_n(i y) = (2/pi) i^{-(n+1)} K_n(y),
                // H'_n(i y) = -(2/pi) i^{-n} K'_n(y); the K factors keep
                // e^{-y} in the tracked exponent.
                let hy = ScaledC::from_scaled(kv[n])
                    .mul_c64(ipow(-(n as i32) - 1) * FRAC_2_PI)
                    .mul_exp(-y);
                let hpy = ScaledC::from_scaled(deriv_modified_k(&kv, n))
                    .mul_c64(ipow(-(n as i32)) * -FRAC_2_PI)
                    .mul_exp(-y);
                (
                    kz,
                    Radial::Evan { kappa },
                    Complex64::new(0.0, y),
                    hy,
                    hpy,
                    Complex64::new(0.0, qk),
                )
            }
        };
        let t = tmat_node(self.kind, n, k, kz, radial, self.radius)?;
        let (tmm, tnn, tmn) = (t.mm[n], t.nn[n], t.mn[n]);

        let inv_y = y.finv();
        let nf = n as f64;
        let kzk = kz / k;
        let hy2 = hy.mul(hy);
        let hh = hy.mul(hpy);
        let hp2 = hpy.mul(hpy);

        let i11 = hy2
            .mul(tmm)
            .mul_c64(inv_y * inv_y * (nf * nf))
            .add(hh.mul(tmn).mul_c64(inv_y * (2.0 * nf * kzk)))
            .add(hp2.mul(tnn).mul_c64(Complex64::new(kzk * kzk, 0.0)));
        let i22 = hp2
            .mul(tmm)
            .add(hh.mul(tmn).mul_c64(inv_y * (2.0 * nf * kzk)))
            .add(hy2.mul(tnn).mul_c64(inv_y * inv_y * (nf * nf * kzk * kzk)));
        let i33 = hy2.mul(tnn).mul_c64(q_over_k * q_over_k);
        let i13 = hy2
            .mul(tmn)
            .mul_c64(Complex64::new(nf / (k * r), 0.0))
            .add(hh.mul(tnn).mul_c64(q_over_k * kzk));

        Ok([i11.to_c64(), i22.to_c64(), i33.to_c64(), i13.to_c64()])
    }
}

/// `H_m = J_m + i Y_m` from the scaled real-argument arrays.
fn hankel(j: &[Scaled], y: &[Scaled], m: usize) -> ScaledC {
    ScaledC::from_scaled(j[m]).add(ScaledC::from_scaled(y[m]).mul_c64(Complex64::new(0.0, 1.0)))
}

/// `i^p` for any integer `p`.
fn ipow(p: i32) -> Complex64 {
    match p.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

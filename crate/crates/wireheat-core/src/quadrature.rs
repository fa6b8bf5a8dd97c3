//! Adaptive quadrature for the mode and frequency integrals.
//!
//! Three integrators cover everything in this crate:
//!
//! * [`integrate_adaptive`] — Gauss–Kronrod 15(7) with depth-first
//!   bisection. Used for smooth (possibly peaked) integrands such as the
//!   frequency integrals and the branch-point shell.
//! * [`integrate_oscillatory`] — Filon-type panels for integrands of the
//!   form `envelope(x) * cos(rate * x)` (or `sin`). The envelope is
//!   interpolated quadratically on each panel and the trigonometric
//!   moments are integrated exactly, so the panel count tracks the
//!   envelope's structure, not the oscillation count. This is what makes
//!   axial-wavenumber integrals affordable at large separations.
//! * `oscillatory_segmented` (crate-internal) — the workhorse behind the
//!   mode integrals: several channels sharing abscissae over a chain of
//!   segments, Filon where a segment spans at least a period and
//!   Gauss–Kronrod otherwise, refined globally by worst error-to-budget
//!   ratio so that stretches contributing little receive little work.
//!
//! All are deterministic: the same inputs produce bit-identical results.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and budgets shared by the integrators and mode sums.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// Target relative accuracy of a full integral.
    pub rel_tol: f64,
    /// Absolute floor below which contributions are considered zero.
    pub abs_tol: f64,
    /// Hard cap on the number of panels one integral may spend.
    pub max_panels: usize,
    /// Fraction of an evanescent integral allowed past the cutoff.
    pub evanescent_tail_tol: f64,
    /// Hard cap on azimuthal mode order in the cylinder sums.
    pub n_max_cap: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-6,
            abs_tol: 1e-30,
            max_panels: 200_000,
            evanescent_tail_tol: 1e-12,
            n_max_cap: 512,
        }
    }
}

/// Multiple of machine epsilon below which a panel's halving error is
/// attributed to floating-point noise rather than quadrature error. The
/// reference scale is the panel's L1 content (`resabs` for Gauss–Kronrod,
/// envelope times moment magnitudes for Filon), never the possibly
/// cancelled panel value.
const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

/// Outcome of one integral.
#[derive(Clone, Copy, Debug)]
pub struct IntegralResult {
    pub value: Complex64,
    /// Accumulated local error estimates (conservative).
    pub error_estimate: f64,
    pub panels_used: usize,
    /// Whether the error estimate met the requested tolerances.
    pub converged: bool,
}

/// Which trigonometric factor multiplies the envelope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OscillationKind {
    Cosine,
    Sine,
}

// 15-point Kronrod abscissae (non-negative half), embedding 7-point Gauss.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_2,
    0.063_092_092_629_978_6,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn check_finite(v: Complex64, x: f64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::PoisonedIntegrand { x })
    }
}

/// One Gauss–Kronrod 15(7) panel over `[a, b]` for `N` integrands sharing
/// abscissae, with per-channel error estimates and L1 norms (`resabs`).
fn gk15_multi<const N: usize, F>(
    f: &mut F,
    a: f64,
    b: f64,
) -> Result<([Complex64; N], [f64; N], [f64; N])>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let zero = Complex64::new(0.0, 0.0);

    let f0 = f(c)?;
    for v in &f0 {
        check_finite(*v, c)?;
    }
    let mut resk = [zero; N];
    let mut resg = [zero; N];
    let mut resabs = [0.0; N];
    for ch in 0..N {
        resk[ch] = WGK[7] * f0[ch];
        resg[ch] = WG[3] * f0[ch];
        resabs[ch] = WGK[7] * f0[ch].norm();
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        for (v, x) in [(f1, c - dx), (f2, c + dx)] {
            for u in &v {
                check_finite(*u, x)?;
            }
        }
        for ch in 0..N {
            resk[ch] += WGK[j] * (f1[ch] + f2[ch]);
            resabs[ch] += WGK[j] * (f1[ch].norm() + f2[ch].norm());
            if j % 2 == 1 {
                resg[ch] += WG[j / 2] * (f1[ch] + f2[ch]);
            }
        }
    }
    let mut errs = [0.0; N];
    for ch in 0..N {
        errs[ch] = (resk[ch] - resg[ch]).norm() * h.abs();
        resk[ch] *= h;
        resabs[ch] *= h.abs();
    }
    Ok((resk, errs, resabs))
}

struct AdaptiveOutcome<const N: usize> {
    values: [Complex64; N],
    error: f64,
    panels: usize,
    converged: bool,
}

/// Depth-first adaptive driver shared by the scalar and multi-channel
/// entry points. Panels receive error budgets proportional to their
/// length; every channel carries its own budget scale, so a panel is
/// accepted only once all channels meet their targets.
///
/// Budget scales use the L1 norm of the panel contributions rather than
/// the possibly cancelled sum, and a panel whose halving error has sunk
/// to the floating-point floor of its own L1 content is accepted as
/// roundoff-limited.
fn adaptive_driver<const N: usize, F>(
    f: &mut F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(AdaptiveOutcome<N>, Vec<(f64, f64)>)>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    let zero = Complex64::new(0.0, 0.0);
    if a == b {
        return Ok((
            AdaptiveOutcome { values: [zero; N], error: 0.0, panels: 0, converged: true },
            Vec::new(),
        ));
    }

    const INIT: usize = 16;
    let width = b - a;
    let step = width / INIT as f64;
    let mut stack: Vec<(f64, f64, [Complex64; N], [f64; N], [f64; N])> = Vec::new();
    let mut scale = [0.0; N];
    let mut panels = INIT;
    for i in (0..INIT).rev() {
        let x0 = a + i as f64 * step;
        let x1 = if i == INIT - 1 { b } else { a + (i + 1) as f64 * step };
        let (vals, errs, fabs) = gk15_multi(f, x0, x1)?;
        for ch in 0..N {
            scale[ch] += vals[ch].norm();
        }
        stack.push((x0, x1, vals, errs, fabs));
    }
    let tol_of = |s: f64| -> f64 { (spec.rel_tol * s).max(spec.abs_tol) };

    let mut values = [zero; N];
    let mut error = 0.0;
    let mut grid: Vec<(f64, f64)> = Vec::new();
    let mut converged = true;
    while let Some((x0, x1, vals, errs, fabs)) = stack.pop() {
        let frac = ((x1 - x0) / width).abs();
        let ok = (0..N).all(|ch| {
            errs[ch] <= tol_of(scale[ch]) * frac || errs[ch] <= ROUNDOFF_FLOOR * fabs[ch]
        });
        if ok || panels >= spec.max_panels {
            if !ok {
                converged = false;
            }
            for ch in 0..N {
                values[ch] += vals[ch];
            }
            error += errs[0];
            grid.push((x0, x1));
            continue;
        }
        let mid = 0.5 * (x0 + x1);
        let (vl, el, al) = gk15_multi(f, x0, mid)?;
        let (vr, er, ar) = gk15_multi(f, mid, x1)?;
        panels += 2;
        // Replace the parent's L1 contribution with that of its halves.
        for ch in 0..N {
            scale[ch] += vl[ch].norm() + vr[ch].norm() - vals[ch].norm();
        }
        stack.push((mid, x1, vr, er, ar));
        stack.push((x0, mid, vl, el, al));
    }

    Ok((AdaptiveOutcome { values, error, panels, converged }, grid))
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut wrapped = |x: f64| -> Result<[Complex64; 1]> { Ok([f(x)?]) };
    let (out, _) = adaptive_driver::<1, _>(&mut wrapped, a, b, spec)?;
    Ok(IntegralResult {
        value: out.values[0],
        error_estimate: out.error,
        panels_used: out.panels,
        converged: out.converged,
    })
}

/// Exact trigonometric moments of a quadratic envelope on one panel.
///
/// With `t = rate * halfwidth` and `alpha = rate * center`:
/// `C0 = int cos(t u) du`, `S1 = int u sin(t u) du`,
/// `C2 = int u^2 cos(t u) du` over `u` in `[-1, 1]`.
fn filon_moments(t: f64) -> (f64, f64, f64) {
    if t.abs() < 0.35 {
        let t2 = t * t;
        let c0 = 2.0 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
            + t2 * t2 * t2 * t2 / 362_880.0);
        let s1 = 2.0 * t
            * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0 - t2 * t2 * t2 / 45_360.0
                + t2 * t2 * t2 * t2 / 3_991_680.0);
        let c2 = 2.0
            * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0 - t2 * t2 * t2 / 6480.0
                + t2 * t2 * t2 * t2 / 443_520.0);
        (c0, s1, c2)
    } else {
        let (s, c) = t.sin_cos();
        let g = s - t * c;
        let c0 = 2.0 * s / t;
        let s1 = 2.0 * g / (t * t);
        let c2 = 2.0 * (t * t * s - 2.0 * g) / (t * t * t);
        (c0, s1, c2)
    }
}

/// One Filon panel: quadratic envelope through `(x0, e0)`, midpoint
/// `(x1, em)`, `(x2, e1)`, times `cos(phase0 + rate x)` or
/// `sin(phase0 + rate x)`.
pub(crate) fn filon_panel(
    kind: OscillationKind,
    rate: f64,
    phase0: f64,
    x0: f64,
    x2: f64,
    e0: Complex64,
    em: Complex64,
    e1: Complex64,
) -> Complex64 {
    let x1 = 0.5 * (x0 + x2);
    let hw = 0.5 * (x2 - x0);
    let t = rate * hw;
    let alpha = phase0 + rate * x1;
    let c1 = 0.5 * (e1 - e0);
    let c2 = 0.5 * (e1 - 2.0 * em + e0);
    let (m0, m1, m2) = filon_moments(t);
    let even = em * m0 + c2 * m2;
    let odd = c1 * m1;
    let (sa, ca) = alpha.sin_cos();
    let combined = match kind {
        OscillationKind::Cosine => ca * even - sa * odd,
        OscillationKind::Sine => sa * even + ca * odd,
    };
    combined * hw
}

/// Integrate `envelope(x) * trig(rate * x)` over `[a, b]`.
///
/// The envelope should be smooth and non-oscillatory; all oscillation
/// belongs in the `rate` argument. When the whole interval spans less
/// than one period the plain adaptive integrator is used directly.
pub fn integrate_oscillatory<F>(
    mut envelope: F,
    rate: f64,
    kind: OscillationKind,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let (res, _) = oscillatory_with_grid(&mut envelope, rate, kind, a, b, spec)?;
    Ok(res)
}

/// [`integrate_oscillatory`], also reporting the final panel edges so
/// mode-sum callers can reuse the grid for many phase rates.
pub(crate) fn oscillatory_with_grid<F>(
    envelope: &mut F,
    rate: f64,
    kind: OscillationKind,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(IntegralResult, Vec<(f64, f64)>)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let zero = Complex64::new(0.0, 0.0);
    if a == b {
        return Ok((
            IntegralResult { value: zero, error_estimate: 0.0, panels_used: 0, converged: true },
            Vec::new(),
        ));
    }

    if (rate * (b - a)).abs() < core::f64::consts::TAU {
        // Less than a full period: no benefit over plain adaptive.
        let mut g = |x: f64| -> Result<[Complex64; 1]> {
            let tr = match kind {
                OscillationKind::Cosine => (rate * x).cos(),
                OscillationKind::Sine => (rate * x).sin(),
            };
            Ok([envelope(x)? * tr])
        };
        let (out, grid) = adaptive_driver::<1, _>(&mut g, a, b, spec)?;
        return Ok((
            IntegralResult {
                value: out.values[0],
                error_estimate: out.error,
                panels_used: out.panels,
                converged: out.converged,
            },
            grid,
        ));
    }

    let mut eval = |x: f64| -> Result<Complex64> { check_finite(envelope(x)?, x) };

    // Panel = (x0, x2, e0, em, e1, filon value). Error is judged by
    // comparing a panel against its two halves when splitting.
    const INIT: usize = 8;
    let width = b - a;
    let step = width / INIT as f64;
    struct Panel {
        x0: f64,
        x2: f64,
        e0: Complex64,
        em: Complex64,
        e1: Complex64,
        val: Complex64,
    }
    let mut stack: Vec<Panel> = Vec::new();
    let mut scale = 0.0;
    let mut panels = INIT;
    for i in (0..INIT).rev() {
        let x0 = a + i as f64 * step;
        let x2 = if i == INIT - 1 { b } else { a + (i + 1) as f64 * step };
        let e0 = eval(x0)?;
        let em = eval(0.5 * (x0 + x2))?;
        let e1 = eval(x2)?;
        let val = filon_panel(kind, rate, 0.0, x0, x2, e0, em, e1);
        scale += val.norm();
        stack.push(Panel { x0, x2, e0, em, e1, val });
    }

    let mut value = zero;
    let mut error = 0.0;
    let mut grid: Vec<(f64, f64)> = Vec::new();
    let mut converged = true;
    while let Some(p) = stack.pop() {
        let xm = 0.5 * (p.x0 + p.x2);
        let el = eval(0.5 * (p.x0 + xm))?;
        let er = eval(0.5 * (xm + p.x2))?;
        let left = filon_panel(kind, rate, 0.0, p.x0, xm, p.e0, el, p.em);
        let right = filon_panel(kind, rate, 0.0, xm, p.x2, p.em, er, p.e1);
        let err = (p.val - left - right).norm();
        let hw = 0.5 * (p.x2 - p.x0);
        let budget = (spec.rel_tol * scale).max(spec.abs_tol) * ((p.x2 - p.x0) / width).abs();
        let floor = ROUNDOFF_FLOOR * filon_l1_content(rate, hw, p.e0, p.em, p.e1);
        if err <= budget || err <= floor || panels >= spec.max_panels {
            if err > budget && err > floor {
                converged = false;
            }
            // The two halves are the better estimate; keep them.
            value += left + right;
            error += err;
            grid.push((p.x0, xm));
            grid.push((xm, p.x2));
            continue;
        }
        panels += 2;
        scale += left.norm() + right.norm() - p.val.norm();
        stack.push(Panel { x0: xm, x2: p.x2, e0: p.em, em: er, e1: p.e1, val: right });
        stack.push(Panel { x0: p.x0, x2: xm, e0: p.e0, em: el, e1: p.em, val: left });
    }

    Ok((
        IntegralResult { value, error_estimate: error, panels_used: panels, converged },
        grid,
    ))
}

/// L1 magnitude of the terms combined inside a Filon panel; the scale
/// against which the halving error is judged to be floating-point noise.
fn filon_l1_content(rate: f64, hw: f64, e0: Complex64, em: Complex64, e1: Complex64) -> f64 {
    let (m0, m1, m2) = filon_moments(rate * hw);
    (e0.norm() + em.norm() + e1.norm()) * hw * (m0.abs() + m1.abs() + m2.abs())
}

/// One panel of the segmented oscillatory driver. Gauss–Kronrod panels
/// carry the trig factors inside their values; Filon panels keep the
/// envelope at five equally spaced nodes so either half can be split
/// further without re-evaluating what is already known. In both cases
/// `vals` is the panel's best estimate and `errs` its per-channel error,
/// already clamped to zero when it has sunk to floating-point noise.
enum SegPanel<const N: usize> {
    Gk {
        x0: f64,
        x1: f64,
        vals: [Complex64; N],
        errs: [f64; N],
    },
    Filon {
        x0: f64,
        x2: f64,
        e: [[Complex64; N]; 5],
        vals: [Complex64; N],
        errs: [f64; N],
    },
}

impl<const N: usize> SegPanel<N> {
    fn vals(&self) -> &[Complex64; N] {
        match self {
            SegPanel::Gk { vals, .. } | SegPanel::Filon { vals, .. } => vals,
        }
    }

    fn errs(&self) -> &[f64; N] {
        match self {
            SegPanel::Gk { errs, .. } | SegPanel::Filon { errs, .. } => errs,
        }
    }
}

struct SegEntry<const N: usize> {
    pri: f64,
    panel: SegPanel<N>,
}

impl<const N: usize> PartialEq for SegEntry<N> {
    fn eq(&self, other: &Self) -> bool {
        self.pri == other.pri
    }
}
impl<const N: usize> Eq for SegEntry<N> {}
impl<const N: usize> PartialOrd for SegEntry<N> {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for SegEntry<N> {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.pri.total_cmp(&other.pri)
    }
}

fn gk_trig_panel<const N: usize, F>(
    f: &mut F,
    rate: f64,
    phase0: f64,
    kinds: [OscillationKind; N],
    x0: f64,
    x1: f64,
) -> Result<SegPanel<N>>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    let mut g = |x: f64| -> Result<[Complex64; N]> {
        let (s, c) = (phase0 + rate * x).sin_cos();
        let mut v = f(x)?;
        for ch in 0..N {
            v[ch] *= match kinds[ch] {
                OscillationKind::Cosine => c,
                OscillationKind::Sine => s,
            };
        }
        Ok(v)
    };
    let (vals, mut errs, fabs) = gk15_multi(&mut g, x0, x1)?;
    for ch in 0..N {
        if errs[ch] <= ROUNDOFF_FLOOR * fabs[ch] {
            errs[ch] = 0.0;
        }
    }
    Ok(SegPanel::Gk { x0, x1, vals, errs })
}

/// Build a Filon panel over `[x0, x2]` from envelope values at its ends
/// and midpoint, evaluating the two quarter points. The panel value is the
/// sum of the two halves; the error is the parent-versus-halves defect.
fn filon_refined_panel<const N: usize, F>(
    f: &mut F,
    rate: f64,
    phase0: f64,
    kinds: [OscillationKind; N],
    x0: f64,
    x2: f64,
    e0: [Complex64; N],
    e2: [Complex64; N],
    e4: [Complex64; N],
) -> Result<SegPanel<N>>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    let zero = Complex64::new(0.0, 0.0);
    let xm = 0.5 * (x0 + x2);
    let hw = 0.5 * (x2 - x0);
    let e1 = f(x0 + 0.5 * hw)?;
    let e3 = f(xm + 0.5 * hw)?;
    for (v, x) in [(&e1, x0 + 0.5 * hw), (&e3, xm + 0.5 * hw)] {
        for u in v {
            check_finite(*u, x)?;
        }
    }
    let mut vals = [zero; N];
    let mut errs = [0.0; N];
    for ch in 0..N {
        let parent = filon_panel(kinds[ch], rate, phase0, x0, x2, e0[ch], e2[ch], e4[ch]);
        let left = filon_panel(kinds[ch], rate, phase0, x0, xm, e0[ch], e1[ch], e2[ch]);
        let right = filon_panel(kinds[ch], rate, phase0, xm, x2, e2[ch], e3[ch], e4[ch]);
        vals[ch] = left + right;
        let err = (parent - vals[ch]).norm();
        let floor = ROUNDOFF_FLOOR * filon_l1_content(rate, hw, e0[ch], e2[ch], e4[ch]);
        errs[ch] = if err <= floor { 0.0 } else { err };
    }
    Ok(SegPanel::Filon { x0, x2, e: [e0, e1, e2, e3, e4], vals, errs })
}

fn split_seg_panel<const N: usize, F>(
    f: &mut F,
    rate: f64,
    phase0: f64,
    kinds: [OscillationKind; N],
    panel: SegPanel<N>,
) -> Result<(SegPanel<N>, SegPanel<N>)>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    match panel {
        SegPanel::Gk { x0, x1, .. } => {
            let mid = 0.5 * (x0 + x1);
            Ok((
                gk_trig_panel(f, rate, phase0, kinds, x0, mid)?,
                gk_trig_panel(f, rate, phase0, kinds, mid, x1)?,
            ))
        }
        SegPanel::Filon { x0, x2, e, .. } => {
            let xm = 0.5 * (x0 + x2);
            Ok((
                filon_refined_panel(f, rate, phase0, kinds, x0, xm, e[0], e[1], e[2])?,
                filon_refined_panel(f, rate, phase0, kinds, xm, x2, e[2], e[3], e[4])?,
            ))
        }
    }
}

/// Integrate `envelope_ch(x) * trig_ch(phase0 + rate * x)` over the union
/// of the segments `[edges[i], edges[i+1]]` for `N` channels sharing
/// abscissae, under one global error budget per channel.
///
/// Segments spanning at least one period of the phase are seeded with
/// Filon panels, the rest with Gauss–Kronrod panels carrying the trig
/// factors pointwise. Refinement is global: the panel with the worst
/// error-to-budget ratio anywhere is split until every channel's total
/// error falls below `rel_tol` times its L1 content. Panel errors that
/// have sunk to the floating-point noise of their own content are
/// excluded from the accounting, so internal cancellation in the
/// integrand (severe near the light line) cannot stall convergence on
/// stretches that contribute nothing.
pub(crate) fn oscillatory_segmented<const N: usize, F>(
    envelope: &mut F,
    rate: f64,
    phase0: f64,
    kinds: [OscillationKind; N],
    edges: &[f64],
    spec: &QuadratureSpec,
) -> Result<([Complex64; N], bool)>
where
    F: FnMut(f64) -> Result<[Complex64; N]>,
{
    use alloc::collections::BinaryHeap;

    let zero = Complex64::new(0.0, 0.0);
    if edges.len() < 2 {
        return Ok(([zero; N], true));
    }

    let mut seeds: Vec<SegPanel<N>> = Vec::new();
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b {
            continue;
        }
        if (rate * (b - a)).abs() >= core::f64::consts::TAU {
            const FINIT: usize = 8;
            let step = (b - a) / FINIT as f64;
            let mut nodes: Vec<[Complex64; N]> = Vec::with_capacity(2 * FINIT + 1);
            for j in 0..=2 * FINIT {
                let x = if j == 2 * FINIT { b } else { a + 0.5 * step * j as f64 };
                let v = envelope(x)?;
                for u in &v {
                    check_finite(*u, x)?;
                }
                nodes.push(v);
            }
            for i in 0..FINIT {
                let x0 = a + i as f64 * step;
                let x2 = if i == FINIT - 1 { b } else { a + (i + 1) as f64 * step };
                seeds.push(filon_refined_panel(
                    envelope,
                    rate,
                    phase0,
                    kinds,
                    x0,
                    x2,
                    nodes[2 * i],
                    nodes[2 * i + 1],
                    nodes[2 * i + 2],
                )?);
            }
        } else {
            const GINIT: usize = 4;
            let step = (b - a) / GINIT as f64;
            for i in 0..GINIT {
                let x0 = a + i as f64 * step;
                let x1 = if i == GINIT - 1 { b } else { a + (i + 1) as f64 * step };
                seeds.push(gk_trig_panel(envelope, rate, phase0, kinds, x0, x1)?);
            }
        }
    }

    let mut l1 = [0.0; N];
    let mut tot_err = [0.0; N];
    for p in &seeds {
        for ch in 0..N {
            l1[ch] += p.vals()[ch].norm();
            tot_err[ch] += p.errs()[ch];
        }
    }
    // Fixed per-channel scales for heap priorities; the convergence test
    // below always uses the current L1 content instead.
    let mut scale0 = [0.0; N];
    for ch in 0..N {
        scale0[ch] = (spec.rel_tol * l1[ch]).max(spec.abs_tol);
    }
    let priority = |errs: &[f64; N]| -> f64 {
        let mut p = 0.0f64;
        for ch in 0..N {
            p = p.max(errs[ch] / scale0[ch]);
        }
        p
    };

    let mut heap: BinaryHeap<SegEntry<N>> = BinaryHeap::with_capacity(seeds.len() * 2);
    let mut panels = seeds.len();
    for panel in seeds {
        heap.push(SegEntry { pri: priority(panel.errs()), panel });
    }

    let mut converged = true;
    let mut since_rescan = 0usize;
    loop {
        let need = (0..N).any(|ch| tot_err[ch] > (spec.rel_tol * l1[ch]).max(spec.abs_tol));
        if !need {
            break;
        }
        if panels >= spec.max_panels {
            converged = false;
            break;
        }
        let Some(top) = heap.pop() else {
            converged = false;
            break;
        };
        if !(top.pri > 0.0) {
            // Every remaining error is at the roundoff floor; nothing a
            // split could improve.
            heap.push(top);
            converged = false;
            break;
        }
        for ch in 0..N {
            l1[ch] = (l1[ch] - top.panel.vals()[ch].norm()).max(0.0);
            tot_err[ch] = (tot_err[ch] - top.panel.errs()[ch]).max(0.0);
        }
        let (c1, c2) = split_seg_panel(envelope, rate, phase0, kinds, top.panel)?;
        panels += 1;
        for c in [&c1, &c2] {
            for ch in 0..N {
                l1[ch] += c.vals()[ch].norm();
                tot_err[ch] += c.errs()[ch];
            }
        }
        heap.push(SegEntry { pri: priority(c1.errs()), panel: c1 });
        heap.push(SegEntry { pri: priority(c2.errs()), panel: c2 });

        // The incremental error and L1 tallies drift after many updates;
        // rebuild them from the live panels now and then.
        since_rescan += 1;
        if since_rescan >= 256 {
            since_rescan = 0;
            l1 = [0.0; N];
            tot_err = [0.0; N];
            for entry in heap.iter() {
                for ch in 0..N {
                    l1[ch] += entry.panel.vals()[ch].norm();
                    tot_err[ch] += entry.panel.errs()[ch];
                }
            }
        }
    }

    let mut values = [zero; N];
    for entry in heap.iter() {
        for ch in 0..N {
            values[ch] += entry.panel.vals()[ch];
        }
    }
    Ok((values, converged))
}

/// Axial wavenumber beyond which evanescent contributions are below
/// `evanescent_tail_tol`: modes decay as `e^{-2 kappa h}`, so the cutoff
/// solves `e^{-2 kappa h} = tol`.
pub fn evanescent_cutoff(k: f64, h: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(k > 0.0) || !(h > 0.0) {
        return Err(Error::Domain { what: "evanescent_cutoff needs k > 0 and h > 0" });
    }
    if !(spec.evanescent_tail_tol > 0.0 && spec.evanescent_tail_tol < 1.0) {
        return Err(Error::Domain { what: "evanescent_tail_tol must lie in (0, 1)" });
    }
    let kappa = (1.0 / spec.evanescent_tail_tol).ln() / (2.0 * h);
    Ok((k * k + kappa * kappa).sqrt())
}

/// Integrate `f` over `[0, inf)` through the map `w = scale * t/(1-t)`.
/// The Gauss–Kronrod nodes are interior, so `t = 1` is never evaluated.
pub(crate) fn integrate_semi_infinite<F>(
    mut f: F,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    debug_assert!(scale > 0.0);
    integrate_adaptive(
        |t: f64| -> Result<Complex64> {
            let om = 1.0 - t;
            let w = scale * t / om;
            Ok(f(w)? * (scale / (om * om)))
        },
        0.0,
        1.0,
        spec,
    )
}

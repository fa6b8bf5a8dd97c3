//! Scattered Green's function of a perfectly conducting cylinder, checked
//! entry by entry against frozen reference values computed with an
//! independent implementation (adaptive QAWO in the axial wavenumber,
//! series-accelerated mode sums).
//!
//! All cases run at k = 5.8297e5 rad/m (the resonance frequency of the
//! silicon carbide model divided by c), with the two particles at height
//! h above the surface and axial separation d.

use num_complex::Complex64;
use wireheat_core::cylinder_gf::{CylinderKind, GtEngine};
use wireheat_core::geometry_gf::vacuum_gf_axial;
use wireheat_core::quadrature::QuadratureSpec;

const W0: f64 = 1.7476982089e14;
const K0: f64 = W0 / 299_792_458.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// The integrator's relative tolerance is measured against the L1 content of
// each integral, not the cancelled value.  At kd ~ 6e2 the oscillatory
// suppression puts four orders of magnitude between the two, so hitting the
// reference values to 1e-7 takes an L1-relative tolerance near 1e-12.
fn spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 3e-12,
        evanescent_tail_tol: 1e-24,
        ..QuadratureSpec::default()
    }
}

fn pec(radius: f64, height: f64) -> GtEngine {
    GtEngine::new(CylinderKind::Pec, K0, radius, height, spec()).unwrap()
}

fn check(label: &str, got: Complex64, want: Complex64, tol: f64) {
    let err = (got - want).norm() / want.norm();
    assert!(
        err <= tol,
        "{label}: got {got:?}, want {want:?}, rel err {err:.2e} > {tol:.0e}"
    );
}

fn check_f(label: &str, got: f64, want: f64, tol: f64) {
    let err = ((got - want) / want).abs();
    assert!(
        err <= tol,
        "{label}: got {got:.10e}, want {want:.10e}, rel err {err:.2e} > {tol:.0e}"
    );
}

/// Moving the switchover between the branch-point shell and the main
/// integral must not move the n = 0 result.
#[test]
fn branch_window_choice_does_not_move_the_result() {
    let want = c(-9.4860690629e5, 8.3344139970e5);
    let mut seen = Vec::new();
    for u_min in [1e-6, 1e-9, 1e-12] {
        let engine = pec(1e-7, 1e-7).with_branch_window(u_min).unwrap();
        let g = engine.gt_mode(0, 1e-6).unwrap();
        check(&format!("GT11 n=0, u_min={u_min:e}"), g.g11, want, 1e-8);
        seen.push(g.g11);
    }
    for pair in seen.windows(2) {
        check("window consistency", pair[0], pair[1], 1e-9);
    }
}

/// Individual azimuthal terms at R = h = 100 nm, d = 1 um. The n = 0 term
/// includes the branch-point shell.
#[test]
fn mode_terms_match_reference_values() {
    let engine = pec(1e-7, 1e-7);
    let rows: [(usize, [Complex64; 4]); 6] = [
        (
            0,
            [
                c(-9.4860690629e5, 8.3344139970e5),
                c(-7.9243484719e2, -4.4764738417e1),
                c(-3.8463647094e5, -2.8523246024e4),
                c(2.6863122503e5, 3.6985171576e3),
            ],
        ),
        (
            1,
            [
                c(-9.0398572493e4, 1.6391523237e4),
                c(8.8081945435e4, -1.2548182942e4),
                c(-4.4941494246e4, -7.2358398505e1),
                c(-3.9787746687e3, -1.3664181168e1),
            ],
        ),
        (
            2,
            [
                c(-2.7557738548e3, 7.8121718260e0),
                c(3.5880848992e3, -7.3181122095e0),
                c(-1.0884631596e3, -1.4566460912e-2),
                c(-1.4681649217e2, -8.0232933589e-4),
            ],
        ),
        (
            3,
            [
                c(-5.1634192403e1, 1.2498885946e-3),
                c(6.9731970400e1, -1.2290686762e-3),
                c(-1.7784474661e1, -1.2552858517e-6),
                c(-2.1780445963e0, -1.9033806724e-8),
            ],
        ),
        (
            4,
            [
                c(-8.0114878291e-1, 9.8401614093e-8),
                c(1.0645407296e0, -9.7952368066e-8),
                c(-2.4467833215e-1, -6.1090584302e-11),
                c(-2.5043688359e-2, -2.4994609269e-13),
            ],
        ),
        (
            5,
            [
                c(-1.1214696069e-2, 4.5726210967e-12),
                c(1.4524830363e-2, -4.5661508732e-12),
                c(-3.1064639474e-3, -1.9225216331e-15),
                c(-2.5718910901e-4, -2.1397262986e-18),
            ],
        ),
    ];
    for (n, want) in rows {
        let g = engine.gt_mode(n, 1e-6).unwrap();
        let got = [g.g11, g.g22, g.g33, g.g13];
        let names = ["GT11", "GT22", "GT33", "GT13"];
        // The 13 entry is the smallest of each row by several orders and is
        // assembled from near-cancelling travelling and evanescent parts, so
        // both this integrator and the reference one leave it with a larger
        // relative wobble than the diagonal entries.  The same applies to
        // whole rows once n is large enough that the row has dropped some
        // eight orders below the leading one.
        let diag_tol = if n >= 4 { 3e-7 } else { 1e-8 };
        let tols = [diag_tol, diag_tol, diag_tol, 1e-6];
        for ch in 0..4 {
            check(&format!("{} n={n}", names[ch]), got[ch], want[ch], tols[ch]);
        }
    }
}

/// The branch-point shell on its own (entry 11).
#[test]
fn branch_shell_matches_reference_values() {
    let rows = [
        (1e-7, 1e-7, 1e-6, c(1.3198309030e4, 2.1854432842e5)),
        (1e-8, 1e-7, 1e-5, c(3.3953335834e4, 6.6155703993e5)),
        (1e-7, 1e-7, 0.0, c(1.5809545123e4, 2.6178250562e5)),
    ];
    for (radius, height, d, want) in rows {
        let g = pec(radius, height).branch_shell(d).unwrap();
        check(&format!("shell11 R={radius:e} d={d:e}"), g.g11, want, 1e-8);
    }
}

struct TotalRow {
    radius: f64,
    d: f64,
    g11: Complex64,
    g22: Complex64,
    g33: Complex64,
    g13: Complex64,
    trace: f64,
}

/// Summed scattered Green's function over all azimuthal modes, plus the
/// two-point trace Tr(G G^dagger) with the vacuum part added back in.
/// Height is 100 nm throughout.
#[test]
fn summed_gt_matches_reference_values() {
    let rows = [
        TotalRow {
            radius: 1e-7,
            d: 1e-6,
            g11: c(-1.0418136994e6, 8.4984073636e5),
            g22: c(9.0948406704e4, -1.2600267021e4),
            g33: c(-4.3068446064e5, -2.8595618991e4),
            g13: c(2.6450343052e5, 3.6848521741e3),
            trace: 2.4899114967e12,
        },
        TotalRow {
            radius: 1e-8,
            d: 1e-5,
            g11: c(9.6260303512e5, 1.5459630640e6),
            g22: c(-1.2421715338e2, 3.5520005877e1),
            g33: c(5.4315525290e2, 2.2412927309e3),
            g13: c(-3.7315903647e3, -6.9003721389e3),
            trace: 3.3247002630e12,
        },
        TotalRow {
            radius: 1e-8,
            d: 1e-4,
            g11: c(-1.5334295599e6, -1.1224285170e5),
            g22: c(2.5326373313e0, -1.2849954614e1),
            g33: c(-2.3514718466e1, -5.3618053941e0),
            g13: c(5.4797006107e2, -7.3278889690e0),
            trace: 2.3643032152e12,
        },
        TotalRow {
            radius: 1e-8,
            d: 1e-3,
            g11: c(1.3227194653e6, 1.4867282704e5),
            g22: c(-2.6750195873e-1, 1.2822927546e0),
            g33: c(2.4303327634e-1, 5.5420105200e-2),
            g13: c(-4.1138398172e1, -9.3851323309e-1),
            trace: 1.7717102340e12,
        },
        TotalRow {
            radius: 1e-7,
            d: 1e-5,
            g11: c(4.9906192895e5, 7.0513522458e5),
            g22: c(-3.3026411065e3, 9.4441224962e2),
            g33: c(7.0946007165e2, 2.5751883585e3),
            g13: c(-1.7979094313e3, -2.4952653364e3),
            trace: 7.5086364733e11,
        },
        TotalRow {
            radius: 1e-7,
            d: 1e-4,
            g11: c(-6.7128645232e5, -1.8562558553e4),
            g22: c(6.7304464493e1, -3.4153796771e2),
            g33: c(-2.6200814298e1, -5.3569005403e0),
            g13: c(1.7904478170e2, -1.8722421363e1),
            trace: 4.5114858583e11,
        },
        TotalRow {
            radius: 1e-7,
            d: 1e-3,
            g11: c(5.4809854090e5, 4.3347259306e4),
            g22: c(-7.1094622304e0, 3.4081544549e1),
            g33: c(2.6337588537e-1, 5.5974299544e-2),
            g13: c(-1.2113172975e1, 5.0443005367e-1),
            trace: 3.0230206367e11,
        },
    ];
    for row in rows {
        let tag = format!("R={:e} d={:e}", row.radius, row.d);
        let g = pec(row.radius, 1e-7).gt(row.d).unwrap();
        check(&format!("GT11 {tag}"), g.g11, row.g11, 1e-7);
        check(&format!("GT22 {tag}"), g.g22, row.g22, 1e-7);
        check(&format!("GT33 {tag}"), g.g33, row.g33, 1e-7);
        check(&format!("GT13 {tag}"), g.g13, row.g13, 1e-7);

        let (g0t, g0l) = vacuum_gf_axial(K0, row.d).unwrap();
        let trace = (g0t + g.g11).norm_sqr()
            + (g0t + g.g22).norm_sqr()
            + (g0l + g.g33).norm_sqr()
            + 2.0 * g.g13.norm_sqr();
        check_f(&format!("trace {tag}"), trace, row.trace, 1e-8);
    }
}

/// Coincident points (d = 0): the scattered dyadic at one particle, and
/// the local density of states combination k/2pi + Im Tr GT.
#[test]
fn one_point_values_match_reference() {
    let rows = [
        (
            1e-7,
            c(5.1338031572e7, 1.0010122118e6),
            c(1.2487913992e7, -1.3502848978e4),
            c(2.2918132166e7, -2.9593884111e4),
            1.0506979359e6,
        ),
        (
            1e-6,
            c(3.2064224430e4, 3.0686687552e4),
            c(1.9437952568e2, -5.3990645409e2),
            c(1.6376180823e4, -1.2831688583e4),
            1.1009754970e5,
        ),
    ];
    for (height, w11, w22, w33, want_ldos) in rows {
        let tag = format!("h={height:e}");
        let g = pec(1e-7, height).gt(0.0).unwrap();
        check(&format!("GT11(0) {tag}"), g.g11, w11, 1e-8);
        check(&format!("GT22(0) {tag}"), g.g22, w22, 1e-8);
        check(&format!("GT33(0) {tag}"), g.g33, w33, 1e-8);
        assert!(
            g.g13.norm() == 0.0,
            "GT13 must vanish at d = 0, got {:?}",
            g.g13
        );
        let ldos = K0 / (2.0 * std::f64::consts::PI) + (g.g11 + g.g22 + g.g33).im;
        check_f(&format!("TrImG {tag}"), ldos, want_ldos, 1e-8);
    }
}

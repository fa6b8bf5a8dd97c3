//! Vacuum and flat-mirror Green's functions against frozen reference
//! values (independent implementation, image construction for the plate).
//!
//! k = 5.8297e5 rad/m throughout, matching the other Green's function
//! test suites.

use num_complex::Complex64;
use wireheat_core::geometry_gf::{
    plate_gf, plate_im_trace_onepoint, plate_trace, plate_trace_farfield, vacuum_gf_axial,
    vacuum_trace,
};

const K0: f64 = 1.7476982089e14 / 299_792_458.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
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

#[test]
fn vacuum_axial_closed_form() {
    let rows = [
        (
            1e-6,
            c(-2.041900715221e5, 2.886327741249e4),
            c(5.412477312329e5, 2.988908258935e4),
        ),
        (
            1e-5,
            c(7.540948187659e3, -2.156696959109e3),
            c(-7.750941487496e2, -2.659293451491e3),
        ),
        (
            1e-2,
            c(3.594870896467e0, -7.099481752274e0),
            c(-2.435627772385e-3, -1.233296696714e-3),
        ),
    ];
    for (d, want_t, want_l) in rows {
        let (gt, gl) = vacuum_gf_axial(K0, d).unwrap();
        check(&format!("G0t d={d:e}"), gt, want_t, 1e-10);
        check(&format!("G0l d={d:e}"), gl, want_l, 1e-10);
    }
}

#[test]
fn vacuum_trace_equals_square_sum_of_the_dyadic() {
    for d in [1e-6, 1e-5, 1e-3, 1e-2] {
        let (gt, gl) = vacuum_gf_axial(K0, d).unwrap();
        let direct = 2.0 * gt.norm_sqr() + gl.norm_sqr();
        let closed = vacuum_trace(K0, d).unwrap();
        check_f(&format!("vacuum trace d={d:e}"), closed, direct, 1e-12);
    }
    check_f(
        "vacuum trace d=1e-5",
        vacuum_trace(K0, 1e-5).unwrap(),
        1.3070709529e8,
        1e-9,
    );
}

#[test]
fn plate_dyadic_matches_image_reference() {
    let g = plate_gf(K0, 1e-7, 1e-5).unwrap();
    check("Gpl[0][0]", g[0][0], c(1.5079538123e4, -4.3046623880e3), 1e-9);
    check("Gpl[0][2]", g[0][2], c(1.6620717608e2, 1.0222505556e1), 1e-9);
    check("Gpl[1][1]", g[1][1], c(-9.6589160161e-1, -8.9359803038e0), 1e-9);
    check("Gpl[2][0]", g[2][0], c(-1.6620717608e2, -1.0222505556e1), 1e-9);
    check("Gpl[2][2]", g[2][2], c(-6.6494238612e0, -4.0719488605e-1), 1e-9);
    for (p, q) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
        assert!(
            g[p][q].norm() == 0.0,
            "Gpl[{p}][{q}] must vanish by symmetry, got {:?}",
            g[p][q]
        );
    }
}

#[test]
fn plate_trace_values_and_far_field_doubling() {
    let rows = [
        (1e-7, 1e-5, 2.4597817211e8, 1.881904),
        (1e-7, 1e-2, 2.5330295155e2, 2.000000),
        (1e-6, 1e-3, 2.5330120059e4, 1.999980),
    ];
    for (h, d, want, want_ratio) in rows {
        let tag = format!("h={h:e} d={d:e}");
        let tr = plate_trace(K0, h, d).unwrap();
        check_f(&format!("plate trace {tag}"), tr, want, 1e-9);
        let ratio = tr / vacuum_trace(K0, d).unwrap();
        check_f(&format!("plate/vacuum ratio {tag}"), ratio, want_ratio, 1e-6);
    }
    // Far from the mirror the image contribution decorrelates and the
    // trace doubles.
    let far = plate_trace_farfield(K0, 1e-2).unwrap();
    let full = plate_trace(K0, 1e-7, 1e-2).unwrap();
    check_f("far-field doubling", full, far, 1e-6);
}

#[test]
fn plate_one_point_trace_values() {
    check_f(
        "TrImG plate h=1e-7",
        plate_im_trace_onepoint(K0, 1e-7).unwrap(),
        6.1980999123e4,
        1e-9,
    );
    check_f(
        "TrImG plate h=1e-6",
        plate_im_trace_onepoint(K0, 1e-6).unwrap(),
        7.3482596442e4,
        1e-9,
    );
    check_f(
        "vacuum k/2pi",
        K0 / (2.0 * std::f64::consts::PI),
        9.2782457182e4,
        1e-10,
    );
}

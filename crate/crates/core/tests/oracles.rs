//! Library values against the independent references in `common`.

#![allow(clippy::excessive_precision)]

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use stickdist::montecarlo::stream;
use stickdist::quadrature::integrate_endpoint_singular;
use stickdist::roots::{triangle_cubic_roots, TRIANGLE_Z_MAX};
use stickdist::specfun::{ellip_e, ellip_k, ellip_pi};
use stickdist::triangle::{self, ZETA_MAX};
use stickdist::{ngon, quadrilateral as quad};

#[test]
fn elliptic_integrals_match_trapezoid_oracle() {
    for i in 0..=40 {
        let m = -0.5 + 1.49 * i as f64 / 40.0;
        let k = ellip_k(m).unwrap();
        let e = ellip_e(m).unwrap();
        assert!((k - common::k_oracle(m)).abs() <= 1e-10, "K[{m}]");
        assert!((e - common::e_oracle(m)).abs() <= 1e-10, "E[{m}]");
        assert!((k - common::agm_k(m)).abs() <= 1e-14 * k, "K[{m}] vs AGM");
        for n in [-2.0, -0.3, 0.0, 0.4, 0.9] {
            let p = ellip_pi(n, m).unwrap();
            assert!((p - common::pi_oracle(n, m)).abs() <= 1e-10, "Pi[{n}, {m}]");
        }
    }
}

#[test]
fn elliptic_reference_values() {
    assert!((ellip_k(0.5).unwrap() - 1.854_074_677_301_372).abs() < 1e-15);
    assert!((ellip_e(0.25).unwrap() - common::e_oracle(0.25)).abs() < 1e-14);
    assert!((ellip_e(1.0).unwrap() - 1.0).abs() < 1e-15);
    assert!((ellip_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
}

#[test]
fn cubic_roots_match_bisection() {
    for i in 1..200 {
        let z = TRIANGLE_Z_MAX * i as f64 / 200.0;
        let r = triangle_cubic_roots(z).unwrap();
        let (c, a, b) = common::w_roots(z);
        assert!((r.c - c).abs() < 1e-14, "c at {z}");
        assert!((r.a - a).abs() < 1e-12, "a at {z}");
        assert!((r.b - b).abs() < 1e-12, "b at {z}");
    }
}

#[test]
fn density_of_squared_area_matches_w_integral() {
    let mut rng = stream(5, 0);
    for _ in 0..50 {
        let z = rng.random_range(1e-6..TRIANGLE_Z_MAX * (1.0 - 1e-6));
        let closed = triangle::density_area_squared(z).unwrap();
        let direct = common::w_integral(z);
        assert!(
            (closed - direct).abs() <= 1e-9 * closed.max(1.0),
            "z = {z}: {closed} vs {direct}"
        );
    }
    let zeta = 0.125;
    let direct = 2.0 * zeta * common::w_integral(zeta * zeta);
    assert!((triangle::pdf(zeta).unwrap() - direct).abs() < 1e-9);
}

#[test]
fn survival_matches_direct_integral() {
    let mut rng = stream(6, 0);
    for _ in 0..50 {
        let zeta = rng.random_range(1e-4..ZETA_MAX * (1.0 - 1e-6));
        let closed = triangle::survival(zeta).unwrap();
        let direct = common::survival_by_quadrature(zeta);
        assert!(
            (closed - direct).abs() <= 1e-10,
            "zeta = {zeta}: {closed} vs {direct}"
        );
    }
}

#[test]
fn triangle_moments_match_closed_forms() {
    let total = integrate_endpoint_singular(triangle::pdf_or_zero, 0.0, ZETA_MAX, 1e-13)
        .unwrap()
        .value;
    assert!((total - 1.0).abs() < 1e-9);
    assert!((triangle::moment(1).unwrap() - 4.0 * PI / 105.0).abs() < 1e-9);
    assert!((triangle::moment(2).unwrap() - 1.0 / 60.0).abs() < 1e-9);
}

#[test]
fn triangle_median_digits() {
    let m = triangle::median(1e-15).unwrap();
    assert!((m - 0.125_833_843_138_651_059_2).abs() < 1e-15);
    let unit = triangle::median_for(triangle::StickConvention::new(1.0).unwrap(), 1e-15).unwrap();
    assert!((unit / 0.031_458_460_784_662_764_8 - 1.0).abs() < 5e-15);
    assert_eq!(unit, m * 0.25);
}

#[test]
fn angle_density_moments() {
    let f = |x: f64| quad::angle_density(x).unwrap();
    let q = |g: &dyn Fn(f64) -> f64| {
        integrate_endpoint_singular(g, 0.0, PI, 1e-13)
            .unwrap()
            .value
    };
    assert!((q(&f) - 1.0).abs() < 1e-7);
    assert!((q(&|x| x * f(x)) - FRAC_PI_2).abs() < 1e-8);
    assert!((q(&|x| x * x * f(x)) - 3.025_250_034_406_714_3).abs() < 1e-9);
}

#[test]
fn tent_marginal_matches_angle_density() {
    for i in 1..=20 {
        let x = PI * i as f64 / 21.0;
        let marginal =
            integrate_endpoint_singular(|y| quad::tent_density(x, y).unwrap(), 0.0, PI, 1e-10)
                .unwrap()
                .value;
        let direct = quad::angle_density(x).unwrap();
        assert!(
            (marginal - direct).abs() < 1e-6,
            "x = {x}: {marginal} vs {direct}"
        );
    }
}

#[test]
fn omega_endpoints_from_bisection() {
    let r1 = 0.03;
    let omega = quad::omega_interval(r1, 1e-14).unwrap();
    let (lo, hi) = omega.bounds.unwrap();
    // a(r1, r2) changes sign where the cubic has a root at r3 = 0
    let at_zero = |r2: f64| (1.0 - r2) * r2 * r2 - 4.0 * r1;
    let lo_ref = common::bisect(at_zero, 0.0, 2.0 / 3.0);
    let hi_ref = common::bisect(at_zero, 2.0 / 3.0, 1.0);
    assert!((lo - lo_ref).abs() < 1e-12 && (hi - hi_ref).abs() < 1e-12);
    assert!((lo - 0.4807).abs() < 5e-5 && (hi - 0.8227).abs() < 5e-5);
}

#[test]
fn cyclic_solver_matches_inscribed_area() {
    let mut rng = stream(8, 0);
    let mut checked = 0;
    while checked < 500 {
        let n = rng.random_range(3..9);
        let Some(pv) = ngon::draw(&mut rng, n).filter(ngon::PieceVector::is_formable) else {
            continue;
        };
        let sol = ngon::cyclic_polygon_area(&pv, 1e-12).unwrap();
        assert!(sol.chord_residual(&pv) <= 1e-10);
        if sol.center_inside {
            let direct = common::inscribed_area(pv.pieces(), sol.circumradius);
            assert!((sol.area - direct).abs() < 1e-12, "{:?}", pv.pieces());
        }
        checked += 1;
    }
}

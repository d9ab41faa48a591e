//! Slow, independently coded reference computations shared by the
//! integration tests. Nothing here calls the closed forms under test.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use stickdist::quadrature::{integrate_endpoint_singular_dist, Abscissa};

/// Root of `f` on a sign-changing bracket, bisected until the midpoint no
/// longer moves.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    assert!(f_lo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    let rising = f_lo < 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        if (f(mid) < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Roots `c < a < b` of `(1 − w)w² = 4z`, by bisection.
pub fn w_roots(z: f64) -> (f64, f64, f64) {
    let p = |w: f64| (1.0 - w) * w * w - 4.0 * z;
    let c = bisect(p, -1.0, 0.0);
    let a = bisect(p, 0.0, 2.0 / 3.0);
    let b = bisect(p, 2.0 / 3.0, 1.0);
    (c, a, b)
}

/// Density of `z = area²` as the integral over the second variable of the
/// joint density, `∫_a^b 4 dw / (√(1 − w)·√((1 − w)w² − 4z))`.
pub fn w_integral(z: f64) -> f64 {
    let (c, a, b) = w_roots(z);
    integrate_endpoint_singular_dist(
        |p: Abscissa| {
            // (1 − w)w² − 4z = (w − a)(b − w)(w − c)
            let cubic = p.from_lo * p.to_hi * (p.x - c);
            4.0 / ((1.0 - p.x).sqrt() * cubic.sqrt())
        },
        a,
        b,
        1e-13,
    )
    .expect("w-integral converges")
    .value
}

/// `P{area > ζ}` as four times the area under `√((1 − t²)²t² − 4ζ²)`
/// between the roots of `t(1 − t²) = 2ζ`.
pub fn survival_by_quadrature(zeta: f64) -> f64 {
    let g = |t: f64| t * (1.0 - t * t) - 2.0 * zeta;
    let peak = 1.0 / 3f64.sqrt();
    let alpha = bisect(g, 0.0, peak);
    let beta = bisect(g, peak, 1.0);
    let integral = integrate_endpoint_singular_dist(
        |p: Abscissa| {
            let s = p.x * (1.0 - p.x * p.x);
            ((s - 2.0 * zeta) * (s + 2.0 * zeta)).max(0.0).sqrt()
        },
        alpha,
        beta,
        1e-14,
    )
    .expect("survival integral converges")
    .value;
    4.0 * integral
}

/// Trapezoid rule for a smooth π-periodic even integrand on `[0, π/2]`,
/// where it converges geometrically.
fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, panels: usize) -> f64 {
    let h = FRAC_PI_2 / panels as f64;
    let inner: f64 = (1..panels).map(|i| f(i as f64 * h)).sum();
    h * (0.5 * f(0.0) + inner + 0.5 * f(FRAC_PI_2))
}

const TRAPEZOID_PANELS: usize = 4000;

/// `K[m]` from `∫₀^{π/2} dθ/√(1 − m sin²θ)`.
pub fn k_oracle(m: f64) -> f64 {
    periodic_trapezoid(
        |t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
        TRAPEZOID_PANELS,
    )
}

/// `E[m]` from `∫₀^{π/2} √(1 − m sin²θ) dθ`.
pub fn e_oracle(m: f64) -> f64 {
    periodic_trapezoid(|t| (1.0 - m * t.sin().powi(2)).sqrt(), TRAPEZOID_PANELS)
}

/// `Π[n, m]` from `∫₀^{π/2} dθ/((1 − n sin²θ)√(1 − m sin²θ))`.
pub fn pi_oracle(n: f64, m: f64) -> f64 {
    periodic_trapezoid(
        |t| {
            let s2 = t.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - m * s2).sqrt())
        },
        TRAPEZOID_PANELS,
    )
}

/// `K[m]` by the arithmetic–geometric mean.
pub fn agm_k(m: f64) -> f64 {
    let (mut a, mut g) = (1.0, (1.0 - m).sqrt());
    for _ in 0..64 {
        if (a - g).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = next;
    }
    FRAC_PI_2 / a
}

/// Two-sided Kolmogorov–Smirnov statistic of sorted samples against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let p = cdf(x);
            (p - i as f64 / n).abs().max(((i + 1) as f64 / n - p).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}

/// Central difference with one Richardson step.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// Area of the polygon with these sides inscribed in a circle of radius `r`,
/// with the centre inside; used to cross-check maximal areas.
pub fn inscribed_area(sides: &[f64], r: f64) -> f64 {
    sides
        .iter()
        .map(|s| {
            let half = (s / (2.0 * r)).asin();
            0.5 * r * r * (2.0 * half).sin()
        })
        .sum()
}

//! Distribution of the area of the triangle formed by a twice-broken stick.
//!
//! Canonical units: the stick has length 2, so sides satisfy `a + b + c = 2`,
//! each side is below 1, and the area `ζ` lies in `(0, 1/(3√3))`. With
//! `z = ζ²` and `c < a < b` the roots of `(1 − w)w² − 4z`,
//!
//! ```text
//! g(z) = 8 / √((1−a)(b−c)) · K[(b−a)(1−c) / ((1−a)(b−c))]     (density of z)
//! f(ζ) = 2ζ · g(ζ²)                                           (density of ζ)
//! ```
//!
//! and the survival function has a closed form in `E`, `K` and `Π` with
//! `α = √(1−b)`, `β = √(1−a)`, `γ = √(1−c)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::montecarlo::{self, SampleStats};
use crate::quadrature::{integrate_endpoint_singular, QuadratureResult};
use crate::roots::{find_root_bracketed, triangle_cubic_roots, CubicRoots, TRIANGLE_Z_MAX};
use crate::specfun::EllipticArgs;

/// Largest triangle area for a stick of length 2 (the equilateral triangle).
pub const ZETA_MAX: f64 = 0.192_450_089_729_875_26; // 1/(3√3)

/// Bracket for the median; survival is above 1/2 at the left end and below at
/// the right.
pub const MEDIAN_BRACKET: (f64, f64) = (0.05, 0.19);

/// Stick length convention. Everything is computed for length 2 and scaled on
/// output: lengths by `L/2`, areas by `(L/2)²`, squared areas by `(L/2)⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StickConvention {
    pub length: f64,
}

impl Default for StickConvention {
    fn default() -> Self {
        StickConvention { length: 2.0 }
    }
}

impl StickConvention {
    pub fn new(length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::domain("stick length", length, "L > 0"));
        }
        Ok(StickConvention { length })
    }

    pub fn length_factor(&self) -> f64 {
        self.length / 2.0
    }

    pub fn area_factor(&self) -> f64 {
        let s = self.length_factor();
        s * s
    }

    /// Canonical area to this convention.
    pub fn scale_area(&self, area: f64) -> f64 {
        area * self.area_factor()
    }

    /// Area in this convention back to canonical units.
    pub fn to_canonical_area(&self, area: f64) -> f64 {
        area / self.area_factor()
    }

    /// Densities of area scale inversely to the area.
    pub fn scale_area_density(&self, density: f64) -> f64 {
        density / self.area_factor()
    }
}

/// An area value with its square, in canonical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaPoint {
    pub zeta: f64,
    pub z: f64,
}

impl AreaPoint {
    /// Requires `0 < ζ < 1/(3√3)`.
    pub fn new(zeta: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta < ZETA_MAX) {
            return Err(Error::domain("zeta", zeta, "0 < zeta < 1/(3*sqrt(3))"));
        }
        Ok(AreaPoint {
            zeta,
            z: (zeta * zeta).min(TRIANGLE_Z_MAX),
        })
    }

    pub fn roots(&self) -> Result<CubicRoots> {
        triangle_cubic_roots(self.z)
    }
}

/// Side lengths of a triangle cut from a stick of length 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSides {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleSides {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let sides = TriangleSides { a, b, c };
        if (a + b + c - 2.0).abs() > 1e-12 {
            return Err(Error::domain("side sum", a + b + c, "sides sum to 2"));
        }
        if !sides.is_strict_triangle() {
            return Err(Error::domain(
                "longest side",
                a.max(b).max(c),
                "every side strictly between 0 and 1",
            ));
        }
        Ok(sides)
    }

    /// Pieces of `[0, 2]` cut at `u` and `v`, in stick order, if they form a
    /// triangle. Ties in the triangle inequality count as failure.
    pub fn from_breaks(u: f64, v: f64) -> Option<Self> {
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        let sides = TriangleSides {
            a: lo,
            b: hi - lo,
            c: 2.0 - hi,
        };
        sides.is_strict_triangle().then_some(sides)
    }

    fn is_strict_triangle(&self) -> bool {
        let TriangleSides { a, b, c } = *self;
        a > 0.0 && b > 0.0 && c > 0.0 && a < 1.0 && b < 1.0 && c < 1.0
    }

    /// Heron's formula in the cancellation-free sorted form
    /// `¼√((p+(q+r))(r−(p−q))(r+(p−q))(p+(q−r)))` with `p ≥ q ≥ r`.
    pub fn area(&self) -> f64 {
        heron_area(self.a, self.b, self.c)
    }
}

pub fn heron_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [p, q, r] = s;
    let prod = (p + (q + r)) * (r - (p - q)) * (r + (p - q)) * (p + (q - r));
    0.25 * prod.max(0.0).sqrt()
}

/// `1 − m` for the K-argument, `(a−c)(1−b) / ((1−a)(b−c))`, free of the
/// cancellation in `1 − m` when `m → 1`.
fn k_argument(r: &CubicRoots) -> Result<EllipticArgs> {
    let mc = (r.a - r.c) * r.one_minus_b / ((1.0 - r.a) * (r.b - r.c));
    EllipticArgs::from_complements(mc, 1.0)
}

/// Density of `z = area²` at `0 < z < 1/27`.
pub fn density_area_squared(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < TRIANGLE_Z_MAX) {
        return Err(Error::domain("z", z, "0 < z < 1/27"));
    }
    let r = triangle_cubic_roots(z)?;
    let k = k_argument(&r)?.k()?;
    Ok(8.0 / ((1.0 - r.a) * (r.b - r.c)).sqrt() * k)
}

/// Density of the triangle area at `0 < ζ < 1/(3√3)`.
pub fn pdf(zeta: f64) -> Result<f64> {
    let p = AreaPoint::new(zeta)?;
    let r = p.roots()?;
    let k = k_argument(&r)?.k()?;
    Ok(2.0 * p.zeta * 8.0 / ((1.0 - r.a) * (r.b - r.c)).sqrt() * k)
}

/// [`pdf`] extended by zero outside the support, for tabulation. Tiny
/// positive arguments are clamped to `1e-12`.
pub fn pdf_or_zero(zeta: f64) -> f64 {
    if !(zeta > 0.0 && zeta < ZETA_MAX) {
        return 0.0;
    }
    pdf(zeta.max(1e-12)).unwrap_or(0.0)
}

/// `P{area > ζ}` for `0 ≤ ζ ≤ 1/(3√3)`.
pub fn survival(zeta: f64) -> Result<f64> {
    if !(0.0..=ZETA_MAX).contains(&zeta) {
        return Err(Error::domain("zeta", zeta, "0 <= zeta <= 1/(3*sqrt(3))"));
    }
    if zeta == 0.0 {
        return Ok(1.0);
    }
    if zeta == ZETA_MAX {
        return Ok(0.0);
    }
    let z = (zeta * zeta).min(TRIANGLE_Z_MAX);
    let r = triangle_cubic_roots(z)?;
    Ok(0.5 * eight_j(&r)?)
}

/// `8J` in terms of the cubic roots.
fn eight_j(r: &CubicRoots) -> Result<f64> {
    let alpha2 = r.one_minus_b;
    let beta2 = 1.0 - r.a;
    let gamma2 = 1.0 - r.c;
    let (alpha, beta, gamma) = (alpha2.sqrt(), beta2.sqrt(), gamma2.sqrt());
    // γ² − α² = b − c, β² − α² = b − a
    let root_ga = (r.b - r.c).sqrt();
    let mc = (r.a - r.c) * r.one_minus_b / ((1.0 - r.a) * (r.b - r.c));
    let nc = r.one_minus_b / (1.0 - r.a);
    let args = EllipticArgs::from_complements(mc, nc)?;
    let (e, k, pi) = (args.e()?, args.k()?, args.pi()?);

    let four_factor = (alpha + beta - gamma)
        * (alpha - beta - gamma)
        * (alpha - beta + gamma)
        * (alpha + beta + gamma);
    let term_e = beta * root_ga * (alpha2 + beta2 + gamma2) * e;
    let term_k = alpha2 * beta / root_ga * (alpha2 + beta2 - 5.0 * gamma2) * k;
    let term_pi = alpha2 / (beta * root_ga) * four_factor * pi;
    Ok(term_e + term_k - term_pi)
}

/// `P{area ≤ ζ}`.
pub fn cdf(zeta: f64) -> Result<f64> {
    Ok(1.0 - survival(zeta)?)
}

/// Median area in canonical units, from `survival(μ) = 1/2`.
pub fn median(tol: f64) -> Result<f64> {
    let (lo, hi) = MEDIAN_BRACKET;
    let x = find_root_bracketed(|x| survival(x).map_or(f64::NAN, |s| s - 0.5), lo, hi, tol)?;
    // one Newton polish; S' = −pdf
    let r = survival(x)? - 0.5;
    if r.abs() <= 8.0 * f64::EPSILON {
        return Ok(x);
    }
    let polished = x + r / pdf(x)?;
    Ok(
        if (polished - x).abs() <= tol && (lo..=hi).contains(&polished) {
            polished
        } else {
            x
        },
    )
}

/// Median area for a stick of the given length (scaled from the canonical one).
pub fn median_for(convention: StickConvention, tol: f64) -> Result<f64> {
    Ok(convention.scale_area(median(tol)?))
}

/// `E(areaᵏ)` in canonical units, `k ≥ 1`.
pub fn moment(k: u32) -> Result<f64> {
    Ok(moment_quadrature(k)?.value)
}

pub fn moment_quadrature(k: u32) -> Result<QuadratureResult> {
    if k == 0 {
        return Err(Error::domain("k", 0.0, "k >= 1"));
    }
    integrate_endpoint_singular(|x| x.powi(k as i32) * pdf_or_zero(x), 0.0, ZETA_MAX, 1e-13)
}

/// Histogram layout used by the triangle samplers.
pub fn area_histogram() -> SampleStats {
    SampleStats::new(0.0, 0.2, 2000)
}

/// One broken-stick draw: two uniform breaks on `[0, 2]`.
pub fn draw<R: Rng + ?Sized>(rng: &mut R) -> Option<TriangleSides> {
    let u: f64 = rng.random::<f64>() * 2.0;
    let v: f64 = rng.random::<f64>() * 2.0;
    TriangleSides::from_breaks(u, v)
}

/// Draws `count` broken sticks and records the areas of those that form
/// triangles.
pub fn sample<R: Rng + ?Sized>(rng: &mut R, count: u64) -> SampleStats {
    let mut stats = area_histogram();
    for _ in 0..count {
        match draw(rng) {
            Some(t) => stats.push(t.area()),
            None => stats.reject(),
        }
    }
    stats
}

/// [`sample`] split over `workers` deterministic streams.
pub fn sample_parallel(seed: u64, count: u64, workers: usize) -> SampleStats {
    montecarlo::run_parallel(seed, count, workers, sample)
}

/// Areas of the accepted draws among `count` trials.
pub fn sample_areas<R: Rng + ?Sized>(rng: &mut R, count: u64) -> Vec<f64> {
    (0..count)
        .filter_map(|_| draw(rng).map(|t| t.area()))
        .collect()
}

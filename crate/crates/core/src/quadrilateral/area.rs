//! Numeric marginal density of the squared cyclic-quadrilateral area.
//!
//! With `r₁ = area²`, `r₂ = s₂` and `r₃ = s₃`, the two-to-one map from
//! `(s₁, s₂, s₃)` to `(r₁, r₂, r₃)` gives the joint density
//!
//! ```text
//! 3 / ((1 − r₂) √((r₃ − c)(r₃ − a)(b − r₃)(1 − r₃)))
//! ```
//!
//! where `c < a < b` are the roots in `r₃` of `(1 − r₂)(1 − r₃)(r₂ + r₃)² − 4r₁`.
//! The support in `r₃` is `(max(0, a), b)`, except that for `r₂` in the
//! interval Ω where `a < 0` the band between the roots of
//! `(1 − r₃)(r₂ + r₃ − 1) = r₁/(1 − r₂)` carries no mass (one of the recovered
//! sides would be negative there).

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_endpoint_singular, integrate_endpoint_singular_dist, Abscissa};
use crate::roots::{find_root_bracketed, quad_cubic_roots_complement, triangle_cubic_roots};
use crate::specfun::EllipticArgs;

/// Largest squared area, attained by the square of side 1/2.
pub const R1_MAX: f64 = 1.0 / 16.0;
/// Largest area.
pub const AREA_MAX: f64 = 0.25;
/// Above this squared area Ω is empty and the `r₂` range no longer starts at 0.
const R1_SPLIT: f64 = 1.0 / 27.0;

/// The `r₂` interval on which the middle root `a(r₁, r₂)` is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaInterval {
    pub r1: f64,
    /// `None` when `a(r₁, ·)` stays positive.
    pub bounds: Option<(f64, f64)>,
}

impl OmegaInterval {
    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn contains(&self, r2: f64) -> bool {
        self.bounds.is_some_and(|(lo, hi)| lo < r2 && r2 < hi)
    }
}

fn check_r1(r1: f64) -> Result<()> {
    if !(r1 > 0.0 && r1 < R1_MAX) {
        return Err(Error::domain("r1", r1, "0 < r1 < 1/16"));
    }
    Ok(())
}

/// Ω in terms of `v = 1 − r₂`: the roots of `v(1 − v)² = 4r₁` either side of
/// the maximum at `v = 1/3`.
fn omega_complement(r1: f64, tol: f64) -> Result<Option<(f64, f64)>> {
    if r1 >= R1_SPLIT {
        return Ok(None);
    }
    let g = |v: f64| v * (1.0 - v) * (1.0 - v) - 4.0 * r1;
    // the lower root is about 4r₁
    let lo = find_root_bracketed(g, 0.0, 1.0 / 3.0, tol * r1)?;
    let hi = find_root_bracketed(g, 1.0 / 3.0, 1.0, tol)?;
    Ok(Some((lo, hi)))
}

/// Endpoints of Ω for squared area `r1`.
///
/// `c < 0 < b`, so `a` has the sign of `−abc = 4r₁/(1 − r₂) − r₂²`; the
/// endpoints are the roots of `(1 − r₂)r₂² = 4r₁` on either side of its
/// maximum at `r₂ = 2/3`.
pub fn omega_interval(r1: f64, tol: f64) -> Result<OmegaInterval> {
    check_r1(r1)?;
    let bounds = omega_complement(r1, tol)?.map(|(vlo, vhi)| (1.0 - vhi, 1.0 - vlo));
    Ok(OmegaInterval { r1, bounds })
}

/// The three-root range in terms of `v = 1 − r₂`, where
/// `v(2 − v)³ > 27r₁`.
fn three_root_complement(r1: f64, tol: f64) -> Result<(f64, f64)> {
    let m = |v: f64| v * (2.0 - v).powi(3) - 27.0 * r1;
    // the lower root is about 27r₁/8
    let lo = find_root_bracketed(m, 0.0, 0.5, tol * r1)?;
    let hi = if m(1.0) > 0.0 {
        1.0
    } else {
        find_root_bracketed(m, 0.5, 1.0, tol)?
    };
    Ok((lo, hi))
}

/// The `r₂` range on which the r₃ cubic has three real roots.
///
/// The local maximum of `(1 − r₃)(r₂ + r₃)²` is `4(1 + r₂)³/27`, so the range
/// is where `(1 − r₂)(1 + r₂)³ > 27r₁`; that function rises on `[0, 1/2]` and
/// falls on `[1/2, 1]`.
pub fn three_root_range(r1: f64, tol: f64) -> Result<(f64, f64)> {
    check_r1(r1)?;
    let (vlo, vhi) = three_root_complement(r1, tol)?;
    Ok((1.0 - vhi, 1.0 - vlo))
}

/// Inner integral over `r₃` at fixed `r₁` and `k = 1 − r₂`, carried out in
/// `u = 1 − r₃` so that the band next to `r₃ = 1` keeps its precision.
fn inner(r1: f64, k: f64, in_omega: bool, tol: f64) -> Result<f64> {
    let roots = quad_cubic_roots_complement(r1, k)?;
    let (c, a, ub) = (roots.c, roots.a, roots.one_minus_b);
    let (ua, uc) = (1.0 - a, 1.0 - c);
    let r2 = 1.0 - k;
    if !in_omega || a >= 0.0 {
        // ∫_a^b dr/√((r−c)(r−a)(b−r)(1−r)) = 2/√((1−a)(b−c)) · K(m)
        let b_minus_c = uc - ub;
        let mc = (a - c) * ub / (ua * b_minus_c);
        let kk = EllipticArgs::from_complements(mc, 1.0)?.k()?;
        return Ok(3.0 / k * 2.0 / (ua * b_minus_c).sqrt() * kk);
    }
    // excluded band in r₃: roots e₁ < e₂ of r² − (2 − r₂)r + (1 − r₂) + C
    let cc = r1 / k;
    let root_d = (r2 * r2 - 4.0 * cc).max(0.0).sqrt();
    let e2 = 0.5 * ((2.0 - r2) + root_d);
    let u_e2 = 2.0 * cc / (r2 + root_d);
    let u_e1 = (0.5 * (r2 + root_d) - cc) / e2;
    // r₃ − c, r₃ − a, b − r₃, 1 − r₃
    let dens = |r3: f64, above_b: f64, u: f64| {
        // separate roots: the distances can be far below √MIN_POSITIVE
        3.0 / (k * ((r3 - c) * (r3 - a)).sqrt() * above_b.sqrt() * u.sqrt())
    };
    let mut total = 0.0;
    // r₃ from 0 up to e₁
    let lo = u_e1.max(ub);
    if lo < 1.0 {
        total += integrate_endpoint_singular_dist(
            |p: Abscissa| dens(p.to_hi, (lo - ub) + p.from_lo, p.x),
            lo,
            1.0,
            tol,
        )?
        .value;
    }
    // r₃ from e₂ up to b
    if u_e2 > ub {
        total += integrate_endpoint_singular_dist(
            |p: Abscissa| dens(1.0 - p.x, p.from_lo, p.x),
            ub,
            u_e2,
            tol,
        )?
        .value;
    }
    Ok(total)
}

/// Integrates `f` with tanh–sinh, turning the first error raised inside the
/// integrand into the result.
fn integrate_fallible<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let r = integrate_endpoint_singular(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        tol,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// Density of `r₁ = area²` at `0 < r1 < 1/16`.
///
/// The outer integral runs over `v = 1 − r₂`, split at the ends of the
/// three-root range and of Ω.
pub fn area_marginal_density(r1: f64, tol: f64) -> Result<f64> {
    check_r1(r1)?;
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    let (lo, hi) = three_root_complement(r1, 1e-17)?;
    let omega = omega_complement(r1, 1e-17)?;
    let mut cuts = vec![lo];
    if let Some((olo, ohi)) = omega {
        cuts.extend([olo, ohi]);
    }
    cuts.push(hi);
    let inner_tol = 0.1 * tol;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let in_omega = omega.is_some_and(|(olo, ohi)| olo < mid && mid < ohi);
        total += integrate_fallible(
            |v| inner(r1, v, in_omega, inner_tol).map_err(|e| e.context(format!("1 - r2 = {v}"))),
            w[0],
            w[1],
            tol,
        )
        .map_err(|e| e.context(format!("1 - r2 strip [{}, {}] at r1 = {r1}", w[0], w[1])))?;
    }
    Ok(total)
}

/// Density of the area itself, `2ζ·g(ζ²)`, at `0 < ζ < 1/4`.
pub fn area_density(area: f64, tol: f64) -> Result<f64> {
    if !(area > 0.0 && area < AREA_MAX) {
        return Err(Error::domain("area", area, "0 < area < 1/4"));
    }
    Ok(2.0 * area * area_marginal_density(area * area, tol)?)
}

/// `P{area ≤ ζ}` from the numeric marginal.
pub fn area_cdf(area: f64, tol: f64) -> Result<f64> {
    if !(0.0..=AREA_MAX).contains(&area) {
        return Err(Error::domain("area", area, "0 <= area <= 1/4"));
    }
    if area == 0.0 {
        return Ok(0.0);
    }
    if area == AREA_MAX {
        return Ok(1.0);
    }
    let top = area * area;
    let g = |r1: f64| area_marginal_density(r1, tol);
    let mut total = integrate_fallible(g, 0.0, top.min(R1_SPLIT), tol)?;
    if top > R1_SPLIT {
        total += integrate_fallible(g, R1_SPLIT, top, tol)?;
    }
    Ok(total)
}

/// `P(a0 < area <= a1)` for `0 <= a0 <= a1 <= 1/4`.
pub fn area_probability_between(a0: f64, a1: f64, tol: f64) -> Result<f64> {
    if !(0.0 <= a0 && a0 <= a1 && a1 <= AREA_MAX) {
        return Err(Error::domain("area", a1, "0 <= a0 <= a1 <= 1/4"));
    }
    if a0 == a1 {
        return Ok(0.0);
    }
    let g = |r1: f64| area_marginal_density(r1, tol);
    let (lo, hi) = (a0 * a0, a1 * a1);
    if lo < R1_SPLIT && R1_SPLIT < hi {
        return Ok(
            integrate_fallible(g, lo, R1_SPLIT, tol)? + integrate_fallible(g, R1_SPLIT, hi, tol)?
        );
    }
    integrate_fallible(g, lo, hi, tol)
}

/// Normalisation and first two area moments of the numeric marginal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaMoments {
    pub total: f64,
    pub mean_area: f64,
    pub mean_area_sq: f64,
}

/// Integrates the marginal against `1`, `√r₁` and `r₁`, sharing density
/// evaluations between the three integrals.
pub fn area_moments(tol: f64) -> Result<AreaMoments> {
    let cache: RefCell<HashMap<u64, f64>> = RefCell::new(HashMap::new());
    let g = |r1: f64| -> Result<f64> {
        if let Some(&v) = cache.borrow().get(&r1.to_bits()) {
            return Ok(v);
        }
        let v = area_marginal_density(r1, tol)?;
        cache.borrow_mut().insert(r1.to_bits(), v);
        Ok(v)
    };
    let over = |w: &dyn Fn(f64) -> f64| -> Result<f64> {
        Ok(
            integrate_fallible(|r| Ok(w(r) * g(r)?), 0.0, R1_SPLIT, tol)?
                + integrate_fallible(|r| Ok(w(r) * g(r)?), R1_SPLIT, R1_MAX, tol)?,
        )
    };
    Ok(AreaMoments {
        total: over(&|_| 1.0)?,
        mean_area: over(&f64::sqrt)?,
        mean_area_sq: over(&|r| r)?,
    })
}

/// Ω endpoints coincide with the triangle cubic roots at `z = r₁`.
#[allow(dead_code)]
pub(crate) fn omega_from_triangle_roots(r1: f64) -> Option<(f64, f64)> {
    if r1 >= R1_SPLIT {
        return None;
    }
    triangle_cubic_roots(r1).ok().map(|t| (t.a, t.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_adaptive;
    use crate::roots::{quad_cubic_margin, quad_cubic_roots};

    #[test]
    fn omega_reference_interval() {
        let o = omega_interval(0.03, 1e-14).unwrap();
        let (lo, hi) = o.bounds.unwrap();
        assert!((lo - 0.4807).abs() < 5e-5, "{lo}");
        assert!((hi - 0.8227).abs() < 5e-5, "{hi}");
        let (tlo, thi) = omega_from_triangle_roots(0.03).unwrap();
        assert!((lo - tlo).abs() < 1e-12 && (hi - thi).abs() < 1e-12);
    }

    #[test]
    fn omega_matches_sign_of_middle_root() {
        for &r1 in &[0.001, 0.01, 0.03, 0.036] {
            let o = omega_interval(r1, 1e-15).unwrap();
            let (lo, hi) = o.bounds.unwrap();
            let a = |r2: f64| quad_cubic_roots(r1, r2).unwrap().a;
            assert!(a(0.5 * (lo + hi)) < 0.0);
            let d = 1e-6;
            assert!(a(lo - d) > 0.0 && a(lo + d) < 0.0);
            assert!(a(hi + d) > 0.0 && a(hi - d) < 0.0);
        }
        assert!(quad_cubic_roots(0.03, 0.65).unwrap().a < 0.0);
        assert!(quad_cubic_roots(0.03, 0.45).unwrap().a > 0.0);
    }

    #[test]
    fn omega_empty_near_top() {
        // fine grid scan: a(r1, r2) never negative
        for &r1 in &[1.0 / 27.0, 0.04, 0.06, R1_MAX - 1e-12] {
            assert!(omega_interval(r1, 1e-14).unwrap().is_empty());
            let (lo, hi) = three_root_range(r1, 1e-15).unwrap();
            for i in 1..1000 {
                let r2 = lo + (hi - lo) * i as f64 / 1000.0;
                if let Ok(r) = quad_cubic_roots(r1, r2) {
                    assert!(r.a > -1e-12, "r1 {r1} r2 {r2} a {}", r.a);
                }
            }
        }
    }

    #[test]
    fn three_root_range_brackets() {
        let (lo, hi) = three_root_range(0.05, 1e-15).unwrap();
        assert!(lo > 0.0 && lo < 0.5 && hi > 0.5 && hi < 1.0);
        assert!(quad_cubic_margin(0.05, lo).abs() < 1e-13);
        assert!(quad_cubic_margin(0.05, hi).abs() < 1e-13);
        assert_eq!(three_root_range(0.01, 1e-15).unwrap().0, 0.0);
    }

    #[test]
    fn inner_closed_form_matches_quadrature() {
        // outside Ω the K-form must equal direct integration over (a, b)
        for &(r1, r2) in &[(0.01, 0.2), (0.03, 0.3), (0.05, 0.5), (0.03, 0.85)] {
            let r = quad_cubic_roots(r1, r2).unwrap();
            assert!(r.a > 0.0);
            let direct = integrate_endpoint_singular_dist(
                |p| 3.0 / ((1.0 - r2) * ((p.x - r.c) * p.from_lo * p.to_hi * (1.0 - p.x)).sqrt()),
                r.a,
                r.b,
                1e-13,
            )
            .unwrap()
            .value;
            let closed = inner(r1, 1.0 - r2, false, 1e-13).unwrap();
            assert!(
                (direct - closed).abs() < 1e-11 * closed,
                "{direct} {closed}"
            );
        }
    }

    #[test]
    fn density_domain() {
        assert!(area_marginal_density(0.0, 1e-8).is_err());
        assert!(area_marginal_density(R1_MAX, 1e-8).is_err());
        assert!(area_density(0.3, 1e-8).is_err());
        assert_eq!(area_cdf(0.0, 1e-8).unwrap(), 0.0);
        assert_eq!(area_cdf(AREA_MAX, 1e-8).unwrap(), 1.0);
    }

    #[test]
    fn density_positive_on_grid() {
        for i in 1..40 {
            let r1 = R1_MAX * i as f64 / 40.0;
            let g = area_marginal_density(r1, 1e-9).unwrap();
            assert!(g > 0.0 && g.is_finite(), "r1 {r1} g {g}");
        }
    }

    /// `P{area² ≤ r₁}` from the marginal against sampled Brahmagupta areas.
    #[test]
    fn cdf_matches_side_space_integral() {
        let r1 = 0.02;
        let from_marginal = integrate_adaptive(
            |t| area_marginal_density(t, 1e-10).unwrap(),
            1e-14,
            r1,
            1e-8,
        )
        .unwrap()
        .value;
        let mc = {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
            let s = super::super::sample(&mut rng, 2_000_000);
            let below: u64 = {
                let w = (s.hist_hi - s.hist_lo) / s.bins.len() as f64;
                let cut = (r1.sqrt() / w).round() as usize;
                s.bins[..cut].iter().sum()
            };
            below as f64 / s.accepted as f64
        };
        let se = (mc * (1.0 - mc) / 1e6).sqrt();
        assert!(
            (from_marginal - mc).abs() < 5.0 * se + 2e-4,
            "{from_marginal} {mc}"
        );
    }
}

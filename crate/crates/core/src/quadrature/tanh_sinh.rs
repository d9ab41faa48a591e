use std::f64::consts::FRAC_PI_2;

use super::QuadratureResult;
use crate::error::{Error, Result};

const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
// Beyond this the node distances to the endpoints drop below ~1e-270.
const T_MAX: f64 = 6.0;
// A side of the trapezoid sum is cut once two consecutive terms fall this far
// below the largest term seen.
const TAIL_RATIO: f64 = 1e-20;

/// A quadrature node together with its exact distances to both endpoints.
///
/// Near an endpoint `x` itself is rounded to the endpoint's ulp grid, while
/// `from_lo = x − lo` and `to_hi = hi − x` keep full relative precision. An
/// integrand with a singular factor such as `1/√(hi − x)` should build it from
/// `to_hi`, not from `hi − x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub to_hi: f64,
}

/// Node and weight data for `t ≥ 0`: tanh–sinh maps `t` to `u = tanh(π/2 sinh t)`.
#[derive(Debug, Clone, Copy)]
struct Node {
    /// `1 − u`, computed without cancellation.
    one_minus_u: f64,
    /// `du/dt`
    weight: f64,
}

fn node(t: f64) -> Node {
    let s = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * s).exp();
    let one_minus_u = 2.0 * e / (1.0 + e);
    let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    Node {
        one_minus_u,
        weight,
    }
}

/// Tanh–sinh integration of `f` over `[lo, hi]` where `f` receives the node
/// together with its endpoint distances.
pub fn integrate_endpoint_singular_dist<F: Fn(Abscissa) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain(
            "interval endpoint",
            if lo.is_finite() { hi } else { lo },
            "finite",
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    if lo == hi {
        return Ok(QuadratureResult::zero());
    }
    if lo > hi {
        let r = forward(
            |a: Abscissa| {
                f(Abscissa {
                    x: a.x,
                    from_lo: a.to_hi,
                    to_hi: a.from_lo,
                })
            },
            hi,
            lo,
            tol,
        )?;
        return Ok(QuadratureResult {
            value: -r.value,
            ..r
        });
    }
    forward(f, lo, hi, tol)
}

fn forward<F: Fn(Abscissa) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    let half = 0.5 * (hi - lo);
    let mid = lo + half;
    let mut evaluations = 0usize;

    let eval = |a: Abscissa, evaluations: &mut usize| -> Result<f64> {
        *evaluations += 1;
        let v = f(a);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x: a.x, value: v })
        }
    };

    // Pair of terms at ±t: weight · (f(right) + f(left)).
    let pair = |t: f64, evaluations: &mut usize| -> Result<(f64, f64)> {
        let nd = node(t);
        let near = half * nd.one_minus_u;
        if near == 0.0 {
            // distance underflowed; for an integrable singularity the term vanishes
            return Ok((0.0, 0.0));
        }
        let far = half * (2.0 - nd.one_minus_u);
        let right = Abscissa {
            x: hi - near,
            from_lo: far,
            to_hi: near,
        };
        let left = Abscissa {
            x: lo + near,
            from_lo: near,
            to_hi: far,
        };
        let fr = eval(right, evaluations)?;
        let fl = eval(left, evaluations)?;
        Ok((nd.weight * fr, nd.weight * fl))
    };

    // Level 0: unit step, which also fixes how far out each side is summed.
    let centre = FRAC_PI_2
        * eval(
            Abscissa {
                x: mid,
                from_lo: half,
                to_hi: half,
            },
            &mut evaluations,
        )?;
    let mut sum = centre;
    let mut abs_sum = centre.abs();
    let mut largest = centre.abs();
    let mut reach = [T_MAX; 2];
    let mut quiet = [0u8; 2];
    let mut done = [false; 2];
    let mut j = 1;
    while !(done[0] && done[1]) && (j as f64) <= T_MAX {
        let t = j as f64;
        let (r, l) = pair(t, &mut evaluations)?;
        for (side, term) in [(0usize, r), (1usize, l)] {
            if done[side] {
                continue;
            }
            sum += term;
            abs_sum += term.abs();
            largest = largest.max(term.abs());
            if term.abs() <= TAIL_RATIO * largest {
                quiet[side] += 1;
                if quiet[side] >= 2 {
                    done[side] = true;
                    reach[side] = t;
                }
            } else {
                quiet[side] = 0;
            }
        }
        j += 1;
    }

    let mut h = 1.0;
    let mut estimate = half * h * sum;
    let mut error = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut added = 0.0;
        let mut added_abs = 0.0;
        let mut k = 1u64;
        loop {
            let t = k as f64 * h;
            if t > reach[0] && t > reach[1] {
                break;
            }
            let (r, l) = pair(t, &mut evaluations)?;
            if t <= reach[0] {
                added += r;
                added_abs += r.abs();
            }
            if t <= reach[1] {
                added += l;
                added_abs += l.abs();
            }
            k += 2;
        }
        sum += added;
        abs_sum += added_abs;
        let next = half * h * sum;
        error = (next - estimate).abs();
        estimate = next;
        let floor = 8.0 * f64::EPSILON * half * h * abs_sum;
        if level >= MIN_LEVEL && error <= tol.max(floor) {
            return Ok(QuadratureResult {
                value: estimate,
                abs_error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::ToleranceNotMet {
        value: estimate,
        abs_error: error,
        tol,
        evaluations,
    })
}

/// Tanh–sinh integration of a plain integrand `f(x)` over `[lo, hi]`.
///
/// Nodes that round onto an endpoint are skipped. For a `1/√` singularity at
/// a nonzero endpoint this limits the attainable accuracy to about `√eps`;
/// use [`integrate_endpoint_singular_dist`] there.
pub fn integrate_endpoint_singular<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let (a, b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    integrate_endpoint_singular_dist(
        |p: Abscissa| {
            if p.x <= a || p.x >= b {
                0.0
            } else {
                f(p.x)
            }
        },
        lo,
        hi,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn arcsine_integral() {
        let exact = integrate_endpoint_singular_dist(
            |a| 1.0 / (a.from_lo * a.to_hi).sqrt(),
            0.0,
            1.0,
            1e-14,
        )
        .unwrap();
        assert!((exact.value - PI).abs() < 1e-13, "{}", exact.value - PI);

        let plain = integrate_endpoint_singular(|u| 1.0 / (u * (1.0 - u)).sqrt(), 0.0, 1.0, 1e-10);
        let plain = match plain {
            Ok(r) => r.value,
            Err(Error::ToleranceNotMet { value, .. }) => value,
            Err(e) => panic!("{e}"),
        };
        assert!((plain - PI).abs() < 1e-7);
    }

    #[test]
    fn log_over_sqrt() {
        let r = integrate_endpoint_singular(|u| u.ln() / u.sqrt(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value + 4.0).abs() < 1e-12, "{}", r.value + 4.0);
    }

    #[test]
    fn shifted_singularities_keep_precision() {
        // ∫_a^b dx / √((x−a)(b−x)) = π for any a < b
        let (a, b) = (0.3, 0.300001);
        let r =
            integrate_endpoint_singular_dist(|p| 1.0 / (p.from_lo * p.to_hi).sqrt(), a, b, 1e-14)
                .unwrap();
        assert!((r.value - PI).abs() < 1e-12);
    }

    #[test]
    fn strong_power_singularity() {
        // ∫₀¹ x^(-0.9) dx = 10
        let r =
            integrate_endpoint_singular_dist(|p| p.from_lo.powf(-0.9), 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value - 10.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn smooth_polynomial() {
        let r = integrate_endpoint_singular(|x| x * x * x - x, -1.0, 2.0, 1e-14).unwrap();
        assert!((r.value - (15.0 / 4.0 - 1.5)).abs() < 1e-13);
    }

    #[test]
    fn reversed_swaps_distances() {
        let r = integrate_endpoint_singular_dist(|p| p.to_hi.sqrt(), 1.0, 0.0, 1e-13).unwrap();
        // going from 1 down to 0, "to_hi" is the distance to 0
        assert!((r.value + 2.0 / 3.0).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn non_finite_interior_value() {
        let r = integrate_endpoint_singular(|x| 1.0 / (x - 0.5), 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }
}

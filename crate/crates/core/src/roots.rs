//! Real roots of the broken-stick cubics and a bracketed scalar solver.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest attainable squared triangle area for a stick of length 2.
pub const TRIANGLE_Z_MAX: f64 = 1.0 / 27.0;

/// Ordered real roots `c < a ≤ b` of `(1 − w)w² − 4z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub c: f64,
    pub a: f64,
    pub b: f64,
    /// Squared area that generated the cubic.
    pub z: f64,
    /// `1 − b`, kept separately since `b → 1` as `z → 0`.
    pub one_minus_b: f64,
}

/// Roots of `(1 − r₂)(1 − r₃)(r₂ + r₃)² − 4r₁` as a cubic in `r₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCubicRoots {
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    pub r2: f64,
    /// `1 − b`, accurate when `b` is close to 1 (small `r₁`).
    pub one_minus_b: f64,
}

impl QuadCubicRoots {
    /// The defining polynomial evaluated at `r3`.
    pub fn polynomial(&self, r3: f64) -> f64 {
        quad_cubic(self.r1, self.r2, r3)
    }
}

pub(crate) fn quad_cubic(r1: f64, r2: f64, r3: f64) -> f64 {
    let s = r2 + r3;
    (1.0 - r2) * (1.0 - r3) * s * s - 4.0 * r1
}

/// Solves `w³ − w² + 4z = 0` for `0 < z ≤ 1/27`.
///
/// With `w = 1/3 + s` the depressed cubic is `s³ − s/3 + 4z − 2/27`, whose
/// roots are `(2/3)·cos(φ/3 − 2πk/3)` with `cos φ = 1 − 54z`. The half angle
/// is taken from `atan2(√(27z), √(1 − 27z))` so that both `z → 0` and the
/// double root at `z = 1/27` are well conditioned. The two smaller roots come
/// from Vieta (`a + c = 1 − b`, `ac = −4z/b`) to keep `a` accurate when it is
/// tiny.
pub fn triangle_cubic_roots(z: f64) -> Result<CubicRoots> {
    if !(z > 0.0 && z <= TRIANGLE_Z_MAX) {
        return Err(Error::domain("z", z, "0 < z <= 1/27"));
    }
    let x = 27.0 * z;
    let half_phi = x.sqrt().atan2((1.0 - x).max(0.0).sqrt());
    // 1 − b = (2/3)(1 − cos(φ/3)) = (4/3)·sin²(φ/6)
    let sin6 = (half_phi / 3.0).sin();
    let one_minus_b = 4.0 / 3.0 * sin6 * sin6;
    let b = 1.0 - one_minus_b;
    let q = 4.0 * z / b;
    let a = 0.5 * (one_minus_b + (one_minus_b * one_minus_b + 4.0 * q).sqrt());
    let c = -q / a;
    // at the double root the Vieta pair can land a hair above b
    let a = a.min(b);
    Ok(CubicRoots {
        c,
        a,
        b,
        z,
        one_minus_b,
    })
}

/// Three-real-root condition for the r₃ cubic: the local maximum of
/// `(1 − r₃)(r₂ + r₃)²`, namely `4(1 + r₂)³/27`, must exceed `4r₁/(1 − r₂)`.
///
/// Returns `(1 − r₂)(1 + r₂)³ − 27r₁`; positive means three distinct roots.
pub fn quad_cubic_margin(r1: f64, r2: f64) -> f64 {
    let p = 1.0 + r2;
    (1.0 - r2) * p * p * p - 27.0 * r1
}

/// Roots of the r₃ cubic for `0 < r₂ < 1`.
///
/// The cubic is `−(1 − r₂)(r₃ − c)(r₃ − a)(r₃ − b)`; dividing out the leading
/// coefficient and shifting by the inflection point gives a depressed cubic
/// solved by the trigonometric method.
pub fn quad_cubic_roots(r1: f64, r2: f64) -> Result<QuadCubicRoots> {
    quad_cubic_roots_complement(r1, 1.0 - r2)
}

/// [`quad_cubic_roots`] parameterised by `k = 1 − r₂`, which keeps full
/// relative precision when `r₂` is close to 1.
pub fn quad_cubic_roots_complement(r1: f64, k: f64) -> Result<QuadCubicRoots> {
    let r2 = 1.0 - k;
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain("1 - r2", k, "0 < 1 - r2 < 1"));
    }
    if !(r1 > 0.0) || !r1.is_finite() {
        return Err(Error::domain("r1", r1, "r1 > 0"));
    }
    // monic: r³ + p2 r² + p1 r + p0
    let p2 = -(1.0 - 2.0 * r2);
    let p1 = -r2 * (2.0 - r2);
    let p0 = -(r2 * r2 - 4.0 * r1 / k);
    let shift = -p2 / 3.0;
    // depressed: s³ + p s + q
    let p = p1 - p2 * p2 / 3.0;
    let q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    if !(p < 0.0) {
        return Err(Error::NoRealTriple { r1, r2 });
    }
    let amp = 2.0 * (-p / 3.0).sqrt();
    let cos_arg = 3.0 * q / (p * amp);
    // cos_arg ∈ [−1, 1] ⇔ three real roots; the margin gives the sign robustly.
    let margin = k * (2.0 - k).powi(3) - 27.0 * r1;
    if margin < 0.0 && cos_arg.abs() > 1.0 + 1e-12 {
        return Err(Error::NoRealTriple { r1, r2 });
    }
    let theta = cos_arg.clamp(-1.0, 1.0).acos() / 3.0;
    let b = shift + amp * theta.cos();
    let a = shift + amp * (theta - 2.0 * PI / 3.0).cos();
    let c = shift + amp * (theta + 2.0 * PI / 3.0).cos();
    // near the Ω boundary a ≈ 0 and the cosine form loses relative accuracy;
    // the root product a·b·c = −p0 does not
    let product = -p0; // a·b·c
    let a = if a.abs() < 0.1 && b * c != 0.0 {
        product / (b * c)
    } else {
        a
    };
    // With u = 1 − r₃ the cubic reads k·u·(2 − k − u)² = 4r₁. For small u the
    // map u ↦ 4r₁/(k(2 − k − u)²) contracts by about 2u, so a few sweeps
    // recover 1 − b to full relative precision.
    let mut one_minus_b = 1.0 - b;
    if one_minus_b < 0.01 {
        let target = 4.0 * r1 / k;
        let mut u = one_minus_b.max(0.0);
        for _ in 0..60 {
            let d = 2.0 - k - u;
            let next = target / (d * d);
            let done = (next - u).abs() <= 1e-17 * next;
            u = next;
            if done {
                break;
            }
        }
        one_minus_b = u;
    }
    Ok(QuadCubicRoots {
        c,
        a: a.min(b),
        b,
        r1,
        r2,
        one_minus_b,
    })
}

/// Brent's method on a sign-changing bracket.
///
/// Returns `x` with the final bracket no wider than `tol` (or an exact zero).
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    const MAX_ITER: usize = 500;
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    let checked = |x: f64, v: f64| -> Result<f64> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut fa = checked(a, f(a))?;
    let mut fb = checked(b, f(b))?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0)),
                    (qa - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = checked(b, f(b))?;
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITER,
        residual: fb,
    })
}

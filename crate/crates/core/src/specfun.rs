//! Complete elliptic integrals of the first, second and third kind.
//!
//! All three are evaluated through Carlson's symmetric forms
//! `R_F`, `R_D` and `R_J` using the duplication theorem, so a single code
//! path serves K, E and Π.
//!
//! The parameter convention is the one where `m` multiplies `τ²` in the
//! integrand (`m = k²` for modulus `k`):
//!
//! ```text
//! K[m]    = ∫₀¹ dτ / (√(1−τ²) √(1−mτ²))
//! E[m]    = ∫₀¹ √(1−mτ²) / √(1−τ²) dτ
//! Π[n, m] = ∫₀¹ dτ / ((1−nτ²) √(1−τ²) √(1−mτ²))
//! ```
//!
//! Callers that know the complementary parameter `1 − m` (or `1 − n`) more
//! accurately than `m` itself should go through [`EllipticArgs::from_complements`],
//! which avoids the cancellation in `1 − m` near the logarithmic end.

use crate::error::{Error, Result};

/// Duplication stops once every argument is within this relative distance of
/// the running mean. With the fifth-order tails below the truncation error is
/// then ~`tol⁶`, i.e. below one ulp.
const RF_TOL: f64 = 2.0e-3;
const RDJ_TOL: f64 = 1.2e-3;

/// Carlson's symmetric integral of the first kind, `R_F(x, y, z)`.
///
/// Requires `x, y, z ≥ 0` with at most one of them zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let a = (x + y + z) / 3.0;
        let dx = (a - x) / a;
        let dy = (a - y) / a;
        let dz = (a - z) / a;
        if dx.abs().max(dy.abs()).max(dz.abs()) < RF_TOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / a.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
}

/// Carlson's `R_D(x, y, z) = R_J(x, y, z, z)`.
///
/// Requires `x, y ≥ 0` (at most one zero) and `z > 0`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut scale = 1.0;
    loop {
        let a = (x + y + 3.0 * z) / 5.0;
        let dx = (a - x) / a;
        let dy = (a - y) / a;
        let dz = (a - z) / a;
        if dx.abs().max(dy.abs()).max(dz.abs()) < RDJ_TOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let series = 1.0
                + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 9.0 / 52.0 * dz * ee)
                + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + scale * series / (a * a.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        sum += scale / (sz * (z + lambda));
        scale *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
}

/// `R_C(1, 1 + e)`, the degenerate integral that appears inside `R_J`.
fn carlson_rc_unit(e: f64) -> f64 {
    if e.abs() < 1e-4 {
        1.0 - e * (1.0 / 3.0 - e * (1.0 / 5.0 - e * (1.0 / 7.0 - e / 9.0)))
    } else if e > 0.0 {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}

/// Carlson's symmetric integral of the third kind, `R_J(x, y, z, p)`, for
/// `p > 0` and `x, y, z ≥ 0` with at most one zero.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let mut sum = 0.0;
    let mut scale = 1.0;
    // delta_n = (p−x)(p−y)(p−z) shrinks by 4^-3 per duplication step.
    let mut delta = (p - x) * (p - y) * (p - z);
    loop {
        let a = (x + y + z + 2.0 * p) / 5.0;
        let dx = (a - x) / a;
        let dy = (a - y) / a;
        let dz = (a - z) / a;
        let dp = (a - p) / a;
        if dx.abs().max(dy.abs()).max(dz.abs()).max(dp.abs()) < RDJ_TOL {
            let pp = -(dx + dy + dz) / 2.0;
            let e2 = dx * dy + dx * dz + dy * dz - 3.0 * pp * pp;
            let e3 = dx * dy * dz + 2.0 * e2 * pp + 4.0 * pp * pp * pp;
            let e4 = (2.0 * dx * dy * dz + e2 * pp + 3.0 * pp * pp * pp) * pp;
            let e5 = dx * dy * dz * pp * pp;
            let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
                - 3.0 * e4 / 22.0
                - 9.0 * e2 * e3 / 52.0
                + 3.0 * e5 / 26.0;
            return 6.0 * sum + scale * series / (a * a.sqrt());
        }
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = delta / (d * d);
        sum += scale * carlson_rc_unit(e) / d;
        scale *= 0.25;
        delta *= 1.0 / 64.0;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
    }
}

/// Parameter set for a complete elliptic integral.
///
/// Both the parameter `m` and its complement `mc = 1 − m` are stored; the
/// Carlson reductions only ever use the complements, so constructing from
/// accurately known complements keeps full relative precision as `m → 1`.
/// The characteristic `n` (with `nc = 1 − n`) is only used by Π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    pub m: f64,
    pub mc: f64,
    pub n: f64,
    pub nc: f64,
}

impl EllipticArgs {
    /// Parameter `m` with characteristic zero.
    pub fn new(m: f64) -> Result<Self> {
        Self::with_characteristic(0.0, m)
    }

    pub fn with_characteristic(n: f64, m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::domain("m", m, "finite"));
        }
        if !n.is_finite() {
            return Err(Error::domain("n", n, "finite"));
        }
        Ok(EllipticArgs {
            m,
            mc: 1.0 - m,
            n,
            nc: 1.0 - n,
        })
    }

    /// Builds the arguments from `mc = 1 − m` and `nc = 1 − n`.
    pub fn from_complements(mc: f64, nc: f64) -> Result<Self> {
        if !mc.is_finite() {
            return Err(Error::domain("1 - m", mc, "finite"));
        }
        if !nc.is_finite() {
            return Err(Error::domain("1 - n", nc, "finite"));
        }
        Ok(EllipticArgs {
            m: 1.0 - mc,
            mc,
            n: 1.0 - nc,
            nc,
        })
    }

    /// `K[m]`; requires `m < 1`.
    pub fn k(&self) -> Result<f64> {
        if !(self.mc > 0.0) {
            return Err(Error::domain("m", self.m, "m < 1 for K"));
        }
        Ok(carlson_rf(0.0, self.mc, 1.0))
    }

    /// `E[m]`; requires `m ≤ 1`.
    pub fn e(&self) -> Result<f64> {
        if !(self.mc >= 0.0) {
            return Err(Error::domain("m", self.m, "m <= 1 for E"));
        }
        if self.mc == 0.0 {
            return Ok(1.0);
        }
        Ok(carlson_rf(0.0, self.mc, 1.0) - self.m / 3.0 * carlson_rd(0.0, self.mc, 1.0))
    }

    /// `Π[n, m]`; requires `n < 1` and `m < 1`.
    pub fn pi(&self) -> Result<f64> {
        if !(self.mc > 0.0) {
            return Err(Error::domain("m", self.m, "m < 1 for Pi"));
        }
        if !(self.nc > 0.0) {
            return Err(Error::domain("n", self.n, "n < 1 for Pi"));
        }
        let rf = carlson_rf(0.0, self.mc, 1.0);
        if self.n == 0.0 {
            return Ok(rf);
        }
        Ok(rf + self.n / 3.0 * carlson_rj(0.0, self.mc, 1.0, self.nc))
    }
}

/// Complete elliptic integral of the first kind, `K[m]`, for `m < 1`.
pub fn ellip_k(m: f64) -> Result<f64> {
    EllipticArgs::new(m)?.k()
}

/// Complete elliptic integral of the second kind, `E[m]`, for `m ≤ 1`.
pub fn ellip_e(m: f64) -> Result<f64> {
    EllipticArgs::new(m)?.e()
}

/// Complete elliptic integral of the third kind, `Π[n, m]`, for `n < 1`, `m < 1`.
pub fn ellip_pi(n: f64, m: f64) -> Result<f64> {
    EllipticArgs::with_characteristic(n, m)?.pi()
}

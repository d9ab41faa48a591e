//! Angle densities of the cyclic quadrilateral.
//!
//! The univariate density
//!
//! ```text
//! [ψ₁(x) − 16ψ₂(x)·ln(sin(x)/2) + ψ₃(x)·ln(tan(x/2))] / (16 cos(x)³ sin(x)⁵)
//! ```
//!
//! is a ratio of vanishing quantities near `0`, `π/2` and `π`. There it is
//! evaluated from power series (generated by `scripts/gen_angle_series.py`):
//! near 0 as `P(x) + ln(x/2)·Q(x)`, around `π/2` as a series in `x − π/2`, and
//! near `π` through the symmetry `f(π − x) = f(x)`.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Below this the series at 0 is used.
const ZERO_BAND: f64 = 0.75;
/// Within this distance of π/2 the series there is used.
const HALF_PI_BAND: f64 = 0.6;

#[rustfmt::skip]
const NEAR_ZERO_POLY: [f64; 70] = [
    0.0,
    8.3333333333333333333e-1,
    0.0,
    1.5486111111111111111,
    0.0,
    1.2225694444444444444,
    0.0,
    7.5608465608465608466e-1,
    0.0,
    4.2398336456496178718e-1,
    0.0,
    2.2581675223005518144e-1,
    0.0,
    1.1621109831961430630e-1,
    0.0,
    5.8265179209864780852e-2,
    0.0,
    2.8607934497992986757e-2,
    0.0,
    1.3807003543836423488e-2,
    0.0,
    6.5686881245187973825e-3,
    0.0,
    3.0873076950396577652e-3,
    0.0,
    1.4360080686797640300e-3,
    0.0,
    6.6193056020695803642e-4,
    0.0,
    3.0271627088505607208e-4,
    0.0,
    1.3747671026565110474e-4,
    0.0,
    6.2047935062655379075e-5,
    0.0,
    2.7849158699450990511e-5,
    0.0,
    1.2437203102804406008e-5,
    0.0,
    5.5292269256928425422e-6,
    0.0,
    2.4480164982976406135e-6,
    0.0,
    1.0797585340749291573e-6,
    0.0,
    4.7460932875152785182e-7,
    0.0,
    2.0795149051126173809e-7,
    0.0,
    9.0846695022010507096e-8,
    0.0,
    3.9579574759675321381e-8,
    0.0,
    1.7200125760504800795e-8,
    0.0,
    7.4570258847804330864e-9,
    0.0,
    3.2258248719018666235e-9,
    0.0,
    1.3925734731686543062e-9,
    0.0,
    6.0000249449054735005e-10,
    0.0,
    2.5804533618127845788e-10,
    0.0,
    1.1078807023888814500e-10,
    0.0,
    4.7488243131514770027e-11,
    0.0,
    2.0324222901015538511e-11,
];
#[rustfmt::skip]
const NEAR_ZERO_LOG: [f64; 70] = [
    0.0,
    0.0,
    0.0,
    1.5000000000000000000,
    0.0,
    1.8750000000000000000,
    0.0,
    1.4750000000000000000,
    0.0,
    9.5362103174603174603e-1,
    0.0,
    5.5630828373015873016e-1,
    0.0,
    3.0501466487794612795e-1,
    0.0,
    1.6037105617871986920e-1,
    0.0,
    8.1764039734068565914e-2,
    0.0,
    4.0701754084367389021e-2,
    0.0,
    1.9874441476211392986e-2,
    0.0,
    9.5512882916144297374e-3,
    0.0,
    4.5290783360995387346e-3,
    0.0,
    2.1231931705643526241e-3,
    0.0,
    9.8554582160363188131e-4,
    0.0,
    4.5354259274857098943e-4,
    0.0,
    2.0713876348080116995e-4,
    0.0,
    9.3967763850467438703e-5,
    0.0,
    4.2372405301005544863e-5,
    0.0,
    1.9003736865550147135e-5,
    0.0,
    8.4815094886865940761e-6,
    0.0,
    3.7686069311210722011e-6,
    0.0,
    1.6677524519570670927e-6,
    0.0,
    7.3531506119291545150e-7,
    0.0,
    3.2309971172268049921e-7,
    0.0,
    1.4152587520555232428e-7,
    0.0,
    6.1812076197068924158e-8,
    0.0,
    2.6924026577748954601e-8,
    0.0,
    1.1698155205067755074e-8,
    0.0,
    5.0708259619191373250e-9,
    0.0,
    2.1932599319171737726e-9,
    0.0,
    9.4669796223511590502e-10,
    0.0,
    4.0784683447487008981e-10,
    0.0,
    1.7538667993905898809e-10,
    0.0,
    7.5293110360128567178e-11,
];
#[rustfmt::skip]
const NEAR_HALF_PI: [f64; 72] = [
    4.2368822229245828401e-1,
    0.0,
    -6.9714777391479437950e-2,
    0.0,
    -3.1178386860850445695e-2,
    0.0,
    -4.8238735388102569969e-3,
    0.0,
    -3.0838187310369753808e-4,
    0.0,
    5.6406933900683936122e-5,
    0.0,
    2.7334603209087634544e-5,
    0.0,
    7.4776350819028259169e-6,
    0.0,
    1.7860904754864038086e-6,
    0.0,
    4.1708860907326739140e-7,
    0.0,
    9.9950182901102739631e-8,
    0.0,
    2.5074468180112919716e-8,
    0.0,
    6.6104562602104689946e-9,
    0.0,
    1.8234803005205147136e-9,
    0.0,
    5.2262029084597602238e-10,
    0.0,
    1.5456709315771837719e-10,
    0.0,
    4.6908363044214442715e-11,
    0.0,
    1.4544557210792376142e-11,
    0.0,
    4.5923308982668014867e-12,
    0.0,
    1.4728048515858346902e-12,
    0.0,
    4.7881815344173796901e-13,
    0.0,
    1.5754840084825968509e-13,
    0.0,
    5.2396883997705125621e-14,
    0.0,
    1.7594210178016940963e-14,
    0.0,
    5.9594345110956435051e-15,
    0.0,
    2.0345455862145892838e-15,
    0.0,
    6.9961612340182313901e-16,
    0.0,
    2.4217170558204856727e-16,
    0.0,
    8.4339519040088599996e-17,
    0.0,
    2.9538094064943497574e-17,
    0.0,
    1.0399187747495297910e-17,
    0.0,
    3.6789432824883066413e-18,
    0.0,
    1.3074077419984489393e-18,
    0.0,
    4.6658961183831425286e-19,
    0.0,
    1.6717804457195318109e-19,
    0.0,
    6.0122699480555032928e-20,
    0.0,
];

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// The density formula evaluated as written.
pub fn angle_density_closed_form(x: f64) -> f64 {
    let c = |k: f64| (k * x).cos();
    let psi1 = -25.0 * c(1.0) + 7.0 * c(3.0) + 17.0 * c(5.0) + c(7.0);
    let psi2 = 42.0 * c(1.0) + 19.0 * c(3.0) + 3.0 * c(5.0);
    let psi3 = 378.0 + 489.0 * c(2.0) + 150.0 * c(4.0) + 7.0 * c(6.0);
    let (s, co) = x.sin_cos();
    let num = psi1 - 16.0 * psi2 * (0.5 * s).ln() + psi3 * (0.5 * x).tan().ln();
    num / (16.0 * co.powi(3) * s.powi(5))
}

/// Density of one angle of the cyclic quadrilateral, `0 < x < π`.
pub fn angle_density(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < PI) {
        return Err(Error::domain("x", x, "0 < x < pi"));
    }
    let y = if x > FRAC_PI_2 { PI - x } else { x };
    let v = if y < ZERO_BAND {
        horner(&NEAR_ZERO_POLY, y) + (0.5 * y).ln() * horner(&NEAR_ZERO_LOG, y)
    } else if FRAC_PI_2 - y < HALF_PI_BAND {
        horner(&NEAR_HALF_PI, y - FRAC_PI_2)
    } else {
        angle_density_closed_form(y)
    };
    Ok(v)
}

fn phi(x: f64, y: f64) -> f64 {
    let t = (0.5 * x).tan();
    let s = x.sin() + y.sin();
    let sy = y.sin();
    (4.0 * x.cos() - 3.0 * (2.0 * y).cos() - 1.0) * t * t / (2.0 * s * s * sy * sy)
}

/// Joint density of two adjacent angles of the cyclic quadrilateral on the
/// open square `(0, π)²`.
///
/// The square is cut by its diagonals into four triangles; each carries `φ`
/// with its arguments reflected or swapped.
pub fn tent_density(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && x < PI) {
        return Err(Error::domain("x", x, "0 < x < pi"));
    }
    if !(y > 0.0 && y < PI) {
        return Err(Error::domain("y", y, "0 < y < pi"));
    }
    let v = if x <= y && x <= PI - y {
        phi(x, y)
    } else if y <= x && y <= PI - x {
        phi(y, x)
    } else if y >= x {
        // top triangle: π − y < x < y
        phi(PI - y, x)
    } else {
        // right triangle: π − x < y < x
        phi(PI - x, y)
    };
    Ok(v)
}

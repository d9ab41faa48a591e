//! Polygons from a stick broken at `n − 1` points.
//!
//! Pieces form an n-gon iff the longest is shorter than the rest combined,
//! which happens with probability `1 − n/2ⁿ⁻¹`. Among polygons with given
//! sides the cyclic one has the largest area; [`cyclic_polygon_area`] finds
//! its circumradius numerically.

use std::f64::consts::{FRAC_PI_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::montecarlo::{self, SampleStats};
use crate::roots::find_root_bracketed;

/// Ordered pieces of a broken stick.
#[derive(Debug, Clone, PartialEq)]
pub struct PieceVector {
    pieces: Vec<f64>,
}

impl PieceVector {
    /// Requires at least three positive, finite pieces.
    pub fn new(pieces: Vec<f64>) -> Result<Self> {
        if pieces.len() < 3 {
            return Err(Error::domain("n", pieces.len() as f64, "n >= 3"));
        }
        if let Some(&p) = pieces.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return Err(Error::domain("piece", p, "positive and finite"));
        }
        Ok(PieceVector { pieces })
    }

    /// Pieces of `[0, 2]` cut at the given points.
    pub fn from_breaks(mut breaks: Vec<f64>) -> Result<Self> {
        breaks.sort_by(f64::total_cmp);
        let mut pieces = Vec::with_capacity(breaks.len() + 1);
        let mut last = 0.0;
        for b in breaks {
            pieces.push(b - last);
            last = b;
        }
        pieces.push(2.0 - last);
        PieceVector::new(pieces)
    }

    pub fn n(&self) -> usize {
        self.pieces.len()
    }

    pub fn pieces(&self) -> &[f64] {
        &self.pieces
    }

    pub fn perimeter(&self) -> f64 {
        self.pieces.iter().sum()
    }

    /// Index of the longest piece (first on ties) and its length.
    pub fn longest(&self) -> (usize, f64) {
        self.pieces
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, p)| {
                if p > best.1 {
                    (i, p)
                } else {
                    best
                }
            })
    }

    /// True when the longest piece is strictly shorter than half the perimeter.
    pub fn is_formable(&self) -> bool {
        let (_, m) = self.longest();
        m < self.perimeter() - m
    }
}

/// `1 − n/2ⁿ⁻¹`, exactly.
pub fn formable_probability(n: u32) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::domain("n", n as f64, "n >= 3"));
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let power = BigInt::from(1) << (n - 1) as usize;
    Ok(one - BigRational::new(BigInt::from(n), power))
}

/// The cyclic polygon with given sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSolution {
    pub circumradius: f64,
    /// Central angles subtended by each side. When the centre lies outside
    /// the polygon the longest side's angle is stored negated, so the angles
    /// sum to zero instead of `2π`.
    pub central_angles: Vec<f64>,
    pub area: f64,
    pub center_inside: bool,
    /// Residual of the angle-sum equation at the returned radius.
    pub residual: f64,
}

impl CyclicSolution {
    /// `|2R sin(θᵢ/2) − pᵢ|`, largest over the sides.
    pub fn chord_residual(&self, pieces: &PieceVector) -> f64 {
        self.central_angles
            .iter()
            .zip(pieces.pieces())
            .map(|(t, p)| (2.0 * self.circumradius * (0.5 * t.abs()).sin() - p).abs())
            .fold(0.0, f64::max)
    }
}

/// Finds the circumradius and area of the cyclic polygon with these sides.
///
/// The unknown is the half central angle `φ` of the longest side `p_max`, so
/// `R = p_max/(2 sin φ)` and side `i` subtends `2·asin(kᵢ sin φ)` with
/// `kᵢ = pᵢ/p_max ≤ 1`. With the centre inside,
/// `2φ + Σ_{i≠max} 2·asin(kᵢ sin φ) = 2π`; the left side increases on
/// `(0, π/2]`, so this has a root iff it is at least `2π` at `φ = π/2`.
/// Otherwise the centre lies outside and `2φ = Σ_{i≠max} 2·asin(kᵢ sin φ)`.
/// Each `asin` term has slope at most `kᵢ` in `φ`, which keeps the equation
/// well conditioned even when `R` approaches `p_max/2`. `tol` bounds the
/// angle-sum residual.
pub fn cyclic_polygon_area(pieces: &PieceVector, tol: f64) -> Result<CyclicSolution> {
    let (imax, pmax) = pieces.longest();
    let perimeter = pieces.perimeter();
    if !pieces.is_formable() {
        return Err(Error::NotFormable {
            longest: pmax,
            half: 0.5 * perimeter,
        });
    }
    let ratios: Vec<f64> = pieces
        .pieces()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != imax)
        .map(|(_, &p)| p / pmax)
        .collect();
    let rest = |phi: f64| -> f64 {
        let s = phi.sin();
        ratios.iter().map(|k| 2.0 * (k * s).min(1.0).asin()).sum()
    };
    let inside = |phi: f64| 2.0 * phi + rest(phi) - 2.0 * PI;
    let outside = |phi: f64| 2.0 * phi - rest(phi);
    let center_inside = inside(FRAC_PI_2) >= 0.0;

    let (phi, residual) = if center_inside {
        let phi = if inside(FRAC_PI_2) == 0.0 {
            FRAC_PI_2
        } else {
            find_root_bracketed(inside, 0.0, FRAC_PI_2, 1e-17)?
        };
        (phi, inside(phi))
    } else {
        // outside(φ) ≈ 2φ(1 − Σkᵢ) < 0 for small φ; φ = 0 is a spurious root
        let mut lo = 0.25 * PI;
        let mut halvings = 0;
        while outside(lo) >= 0.0 {
            lo *= 0.5;
            halvings += 1;
            if halvings > 1000 {
                return Err(Error::NoConvergence {
                    iterations: halvings,
                    residual: outside(lo),
                });
            }
        }
        let phi = find_root_bracketed(outside, lo, FRAC_PI_2, 1e-17 * FRAC_PI_2.max(lo))?;
        (phi, outside(phi))
    };
    if !(residual.abs() <= tol.max(32.0 * f64::EPSILON * 2.0 * PI)) {
        return Err(Error::NoConvergence {
            iterations: 0,
            residual,
        });
    }

    let (sin_phi, cos_phi) = phi.sin_cos();
    let r = pmax / (2.0 * sin_phi);
    let mut area = 0.0;
    let mut central_angles = Vec::with_capacity(pieces.n());
    for (i, &p) in pieces.pieces().iter().enumerate() {
        // ½R² sin θ = ½ p · R cos(θ/2)
        if i == imax {
            let tri = 0.5 * p * r * cos_phi;
            if center_inside {
                area += tri;
                central_angles.push(2.0 * phi);
            } else {
                area -= tri;
                central_angles.push(-2.0 * phi);
            }
        } else {
            let x = (p / pmax * sin_phi).min(1.0);
            area += 0.5 * p * r * ((1.0 - x) * (1.0 + x)).sqrt();
            central_angles.push(2.0 * x.asin());
        }
    }
    Ok(CyclicSolution {
        circumradius: r,
        central_angles,
        area,
        center_inside,
        residual,
    })
}

/// `n − 1` uniform breaks on `[0, 2]`; `None` if a piece has length zero.
pub fn draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Option<PieceVector> {
    let breaks: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>() * 2.0).collect();
    PieceVector::from_breaks(breaks).ok()
}

/// Histogram layout for n-gon areas; the regular n-gon of perimeter 2 has
/// area `cot(π/n)/n < 1/π`.
pub fn area_histogram() -> SampleStats {
    SampleStats::new(0.0, 0.32, 3200)
}

/// Broken-stick n-gons: formability and, when formable, the cyclic area.
/// Solver failures are counted in `failures`.
pub fn simulate_ngon<R: Rng + ?Sized>(n: usize, rng: &mut R, count: u64) -> Result<SampleStats> {
    if n < 3 {
        return Err(Error::domain("n", n as f64, "n >= 3"));
    }
    let mut stats = area_histogram();
    for _ in 0..count {
        let Some(pv) = draw(rng, n).filter(PieceVector::is_formable) else {
            stats.reject();
            continue;
        };
        match cyclic_polygon_area(&pv, 1e-12) {
            Ok(sol) => stats.push(sol.area),
            Err(_) => stats.fail(),
        }
    }
    Ok(stats)
}

pub fn simulate_ngon_parallel(
    n: usize,
    seed: u64,
    count: u64,
    workers: usize,
) -> Result<SampleStats> {
    if n < 3 {
        return Err(Error::domain("n", n as f64, "n >= 3"));
    }
    Ok(montecarlo::run_parallel(seed, count, workers, |rng, k| {
        simulate_ngon(n, rng, k).expect("n checked above")
    }))
}

/// Cyclic pentagon areas under the broken-stick model.
pub fn pentagon_stats<R: Rng + ?Sized>(rng: &mut R, count: u64) -> SampleStats {
    simulate_ngon(5, rng, count).expect("n = 5 is valid")
}

/// Area of a closed polygon with the given sides built as a fan from vertex 0
/// with random diagonal lengths; used to probe the maximal-area property.
#[cfg(test)]
fn random_closure_area<R: Rng + ?Sized>(pieces: &[f64], rng: &mut R) -> f64 {
    use crate::triangle::heron_area;
    let n = pieces.len();
    let mut d = pieces[0];
    let mut area = 0.0;
    for k in 1..n - 2 {
        let rest = &pieces[k + 1..];
        let sum: f64 = rest.iter().sum();
        let max = rest.iter().copied().fold(0.0, f64::max);
        let lo = (d - pieces[k]).abs().max(2.0 * max - sum);
        let hi = (d + pieces[k]).min(sum);
        let next = lo + (hi - lo) * rng.random::<f64>();
        area += heron_area(d, pieces[k], next);
        d = next;
    }
    area + heron_area(d, pieces[n - 2], pieces[n - 1])
}

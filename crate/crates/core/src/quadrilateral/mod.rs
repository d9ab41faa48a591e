//! Cyclic quadrilaterals from a stick of length 2 broken at three points.
//!
//! Sides `s₁..s₄` are taken in stick order. The maximal area for given sides is
//! that of the cyclic quadrilateral, `√((1−s₁)(1−s₂)(1−s₃)(1−s₄))`.

mod angle;
mod area;

pub use angle::{angle_density, angle_density_closed_form, tent_density};
pub use area::{
    area_cdf, area_density, area_marginal_density, area_moments, area_probability_between,
    omega_interval, three_root_range, AreaMoments, OmegaInterval, AREA_MAX, R1_MAX,
};

use rand::Rng;

use crate::error::{Error, Result};
use crate::montecarlo::{self, SampleStats};

/// `E(area) = 4(17π/525 − π²/160)`.
pub const MEAN_AREA: f64 = 4.0
    * (17.0 * std::f64::consts::PI / 525.0 - std::f64::consts::PI * std::f64::consts::PI / 160.0);
/// `E(area²) = 1/35`.
pub const MEAN_AREA_SQ: f64 = 1.0 / 35.0;

/// Four sides of a quadrilateral cut from a stick of length 2, in stick order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSides {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
}

impl QuadSides {
    pub fn new(s1: f64, s2: f64, s3: f64, s4: f64) -> Result<Self> {
        let q = QuadSides { s1, s2, s3, s4 };
        let sum = s1 + s2 + s3 + s4;
        if (sum - 2.0).abs() > 1e-12 {
            return Err(Error::domain("side sum", sum, "sides sum to 2"));
        }
        if !q.is_formable() {
            return Err(Error::domain(
                "longest side",
                s1.max(s2).max(s3).max(s4),
                "every side strictly between 0 and 1",
            ));
        }
        Ok(q)
    }

    /// Pieces of `[0, 2]` cut at three points, if every piece is below 1.
    pub fn from_breaks(u: f64, v: f64, w: f64) -> Option<Self> {
        let mut b = [u, v, w];
        b.sort_by(f64::total_cmp);
        let q = QuadSides {
            s1: b[0],
            s2: b[1] - b[0],
            s3: b[2] - b[1],
            s4: 2.0 - b[2],
        };
        q.is_formable().then_some(q)
    }

    fn is_formable(&self) -> bool {
        self.as_array().iter().all(|&s| s > 0.0 && s < 1.0)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }

    pub fn area(&self) -> Result<f64> {
        brahmagupta_area(self)
    }
}

/// Area of the cyclic quadrilateral with the given sides.
pub fn brahmagupta_area(sides: &QuadSides) -> Result<f64> {
    let [s1, s2, s3, s4] = sides.as_array();
    let radicand = (1.0 - s1) * (1.0 - s2) * (1.0 - s3) * (1.0 - s4);
    if !(radicand >= 0.0) {
        return Err(Error::domain("Brahmagupta radicand", radicand, ">= 0"));
    }
    Ok(radicand.sqrt())
}

/// Marginal density of one side, `¾(1 + 2x − 2x²)` on `(0, 1)`.
pub fn marginal_side_density(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain("x", x, "0 < x < 1"));
    }
    Ok(0.75 * (1.0 + 2.0 * x - 2.0 * x * x))
}

/// Sides and two adjacent angles of a cyclic quadrilateral. `alpha1` lies
/// between `s₃` and `s₄`, `alpha2` between `s₁` and `s₄`; the opposite angles
/// are their supplements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadAngleConfig {
    pub sides: QuadSides,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl QuadAngleConfig {
    pub fn alpha3(&self) -> f64 {
        std::f64::consts::PI - self.alpha1
    }

    pub fn alpha4(&self) -> f64 {
        std::f64::consts::PI - self.alpha2
    }
}

const COS_SLACK: f64 = 1e-12;
const DIAGONAL_TOL: f64 = 1e-10;

fn clamp_cos(c: f64) -> Result<f64> {
    if c.abs() > 1.0 + COS_SLACK || !c.is_finite() {
        return Err(Error::Inconsistent(format!("cosine {c} outside [-1, 1]")));
    }
    Ok(c.clamp(-1.0, 1.0))
}

/// Angles from the Law of Cosines applied to both diagonals.
///
/// `cos α₁ = (s₃² + s₄² − s₁² − s₂²) / (2(s₁s₂ + s₃s₄))` and
/// `cos α₂ = (s₁² + s₄² − s₂² − s₃²) / (2(s₂s₃ + s₁s₄))`. Each diagonal is then
/// recomputed from both of its triangles as a consistency check.
pub fn angles_from_sides(sides: &QuadSides) -> Result<QuadAngleConfig> {
    let [s1, s2, s3, s4] = sides.as_array();
    let cos1 = clamp_cos((s3 * s3 + s4 * s4 - s1 * s1 - s2 * s2) / (2.0 * (s1 * s2 + s3 * s4)))?;
    let cos2 = clamp_cos((s1 * s1 + s4 * s4 - s2 * s2 - s3 * s3) / (2.0 * (s2 * s3 + s1 * s4)))?;

    // diagonal opposite α₁ and α₃, then the one opposite α₂ and α₄
    let d1_a = s3 * s3 + s4 * s4 - 2.0 * s3 * s4 * cos1;
    let d1_b = s1 * s1 + s2 * s2 + 2.0 * s1 * s2 * cos1;
    let d2_a = s1 * s1 + s4 * s4 - 2.0 * s1 * s4 * cos2;
    let d2_b = s2 * s2 + s3 * s3 + 2.0 * s2 * s3 * cos2;
    for (x, y) in [(d1_a, d1_b), (d2_a, d2_b)] {
        if (x.max(0.0).sqrt() - y.max(0.0).sqrt()).abs() > DIAGONAL_TOL {
            return Err(Error::Inconsistent(format!(
                "diagonal lengths disagree: {} vs {}",
                x.sqrt(),
                y.sqrt()
            )));
        }
    }
    Ok(QuadAngleConfig {
        sides: *sides,
        alpha1: cos1.acos(),
        alpha2: cos2.acos(),
    })
}

/// One draw: three uniform breaks on `[0, 2]`.
pub fn draw<R: Rng + ?Sized>(rng: &mut R) -> Option<QuadSides> {
    let u: f64 = rng.random::<f64>() * 2.0;
    let v: f64 = rng.random::<f64>() * 2.0;
    let w: f64 = rng.random::<f64>() * 2.0;
    QuadSides::from_breaks(u, v, w)
}

pub fn area_histogram() -> SampleStats {
    SampleStats::new(0.0, 0.25, 2500)
}

/// Areas of cyclic quadrilaterals over `count` broken sticks.
pub fn sample<R: Rng + ?Sized>(rng: &mut R, count: u64) -> SampleStats {
    let mut stats = area_histogram();
    for _ in 0..count {
        match draw(rng).map(|q| brahmagupta_area(&q)) {
            Some(Ok(a)) => stats.push(a),
            Some(Err(_)) => stats.fail(),
            None => stats.reject(),
        }
    }
    stats
}

pub fn sample_parallel(seed: u64, count: u64, workers: usize) -> SampleStats {
    montecarlo::run_parallel(seed, count, workers, sample)
}

/// Distribution of the angle `α₁` over `count` broken sticks.
pub fn sample_angles<R: Rng + ?Sized>(rng: &mut R, count: u64) -> SampleStats {
    let mut stats = SampleStats::new(0.0, std::f64::consts::PI, 3142);
    for _ in 0..count {
        match draw(rng).map(|q| angles_from_sides(&q)) {
            Some(Ok(cfg)) => stats.push(cfg.alpha1),
            Some(Err(_)) => stats.fail(),
            None => stats.reject(),
        }
    }
    stats
}

pub fn sample_angles_parallel(seed: u64, count: u64, workers: usize) -> SampleStats {
    montecarlo::run_parallel(seed, count, workers, sample_angles)
}

/// How the quadrilateral median area is estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MedianMode {
    /// Root of the numerically integrated area CDF.
    Numeric { tol: f64 },
    /// Empirical median of sampled Brahmagupta areas.
    MonteCarlo {
        samples: u64,
        seed: u64,
        workers: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MedianEstimate {
    pub median: f64,
    /// Half-width of the error bar.
    pub error_bar: f64,
    /// Present for Monte Carlo estimates.
    pub stats: Option<SampleStats>,
}

/// Standard deviations used for Monte Carlo error bars.
pub const MC_Z: f64 = 3.0;
/// Bracket for the numeric median.
pub const MEDIAN_BRACKET: (f64, f64) = (0.12, 0.22);
const MEDIAN_QUAD_TOL: f64 = 1e-7;
const MEDIAN_MAX_STEPS: usize = 30;

/// Median area of the cyclic quadrilateral.
pub fn quad_median_area(mode: MedianMode) -> Result<MedianEstimate> {
    match mode {
        MedianMode::Numeric { tol } => {
            if !(tol > 0.0) {
                return Err(Error::domain("tol", tol, "tol > 0"));
            }
            // tanh-sinh overestimates its error here: at 1e-7 the CDF is
            // already good to ~1e-14, and tighter requests only fail
            let quad_tol = tol.max(MEDIAN_QUAD_TOL);
            let (lo, hi) = MEDIAN_BRACKET;
            let mut x = 0.5 * (lo + hi);
            let mut cdf = area_cdf(x, quad_tol)?;
            let mut converged = false;
            for _ in 0..MEDIAN_MAX_STEPS {
                let step = (0.5 - cdf) / area_density(x, quad_tol)?;
                let next = (x + step).clamp(lo, hi);
                cdf += if next >= x {
                    area_probability_between(x, next, quad_tol)?
                } else {
                    -area_probability_between(next, x, quad_tol)?
                };
                x = next;
                if step.abs() <= tol.max(4.0 * f64::EPSILON * x) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NoConvergence {
                    iterations: MEDIAN_MAX_STEPS,
                    residual: cdf - 0.5,
                });
            }
            let median = x;
            Ok(MedianEstimate {
                median,
                error_bar: tol,
                stats: None,
            })
        }
        MedianMode::MonteCarlo {
            samples,
            seed,
            workers,
        } => {
            if samples == 0 {
                return Err(Error::domain("samples", 0.0, "samples >= 1"));
            }
            let stats = sample_parallel(seed, samples, workers);
            let (lo, hi) = stats.median_interval(MC_Z);
            let width = (stats.hist_hi - stats.hist_lo) / stats.bins.len() as f64;
            Ok(MedianEstimate {
                median: stats.median(),
                error_bar: 0.5 * (hi - lo) + 0.5 * width,
                stats: Some(stats),
            })
        }
    }
}

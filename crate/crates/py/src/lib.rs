//! Python bindings for `stickdist`.
//!
//! Domain errors surface as `ValueError`; numerical failures as
//! `ArithmeticError`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use stickdist::montecarlo;
use stickdist::ngon::{self, PieceVector};
use stickdist::quadrilateral::{self, MedianMode, QuadSides};
use stickdist::triangle::{self, StickConvention};
use stickdist::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain { .. } | Error::NotFormable { .. } => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

/// Summary of a Monte Carlo run.
#[pyclass(name = "SampleStats", frozen)]
struct PySampleStats(montecarlo::SampleStats);

#[pymethods]
impl PySampleStats {
    #[getter]
    fn trials(&self) -> u64 {
        self.0.trials
    }
    #[getter]
    fn accepted(&self) -> u64 {
        self.0.accepted
    }
    #[getter]
    fn failures(&self) -> u64 {
        self.0.failures
    }
    #[getter]
    fn mean(&self) -> f64 {
        self.0.mean
    }
    #[getter]
    fn seed(&self) -> u64 {
        self.0.seed
    }
    fn acceptance(&self) -> f64 {
        self.0.acceptance()
    }
    fn variance(&self) -> f64 {
        self.0.variance()
    }
    fn mean_se(&self) -> f64 {
        self.0.mean_se()
    }
    fn quantile(&self, p: f64) -> f64 {
        self.0.quantile(p)
    }
    fn median(&self) -> f64 {
        self.0.median()
    }
    #[pyo3(signature = (z = 3.0))]
    fn median_interval(&self, z: f64) -> (f64, f64) {
        self.0.median_interval(z)
    }
    /// Histogram as a list of `(bin_centre, density)` pairs.
    fn density(&self) -> Vec<(f64, f64)> {
        self.0.density()
    }
    fn __repr__(&self) -> String {
        format!(
            "SampleStats(trials={}, accepted={}, mean={})",
            self.0.trials, self.0.accepted, self.0.mean
        )
    }
}

/// Circumradius, central angles and area of a cyclic polygon.
#[pyclass(name = "CyclicSolution", frozen, get_all)]
struct PyCyclicSolution {
    circumradius: f64,
    central_angles: Vec<f64>,
    area: f64,
    center_inside: bool,
}

#[pyfunction]
#[pyo3(signature = (zeta, stick_length = 2.0))]
fn triangle_pdf(zeta: f64, stick_length: f64) -> PyResult<f64> {
    let conv = StickConvention::new(stick_length).map_err(to_py)?;
    let v = triangle::pdf(conv.to_canonical_area(zeta)).map_err(to_py)?;
    Ok(conv.scale_area_density(v))
}

#[pyfunction]
#[pyo3(signature = (zeta, stick_length = 2.0))]
fn triangle_survival(zeta: f64, stick_length: f64) -> PyResult<f64> {
    let conv = StickConvention::new(stick_length).map_err(to_py)?;
    triangle::survival(conv.to_canonical_area(zeta)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (zeta, stick_length = 2.0))]
fn triangle_cdf(zeta: f64, stick_length: f64) -> PyResult<f64> {
    let conv = StickConvention::new(stick_length).map_err(to_py)?;
    triangle::cdf(conv.to_canonical_area(zeta)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (tol = 1e-15, stick_length = 2.0))]
fn triangle_median(tol: f64, stick_length: f64) -> PyResult<f64> {
    let conv = StickConvention::new(stick_length).map_err(to_py)?;
    triangle::median_for(conv, tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (k, stick_length = 2.0))]
fn triangle_moment(k: u32, stick_length: f64) -> PyResult<f64> {
    let conv = StickConvention::new(stick_length).map_err(to_py)?;
    let m = triangle::moment(k).map_err(to_py)?;
    Ok(m * conv.area_factor().powi(k as i32))
}

#[pyfunction]
fn heron_area(a: f64, b: f64, c: f64) -> f64 {
    triangle::heron_area(a, b, c)
}

#[pyfunction]
fn triangle_simulate(seed: u64, count: u64, workers: usize) -> PySampleStats {
    PySampleStats(triangle::sample_parallel(seed, count, workers))
}

#[pyfunction]
fn brahmagupta_area(s1: f64, s2: f64, s3: f64, s4: f64) -> PyResult<f64> {
    let q = QuadSides::new(s1, s2, s3, s4).map_err(to_py)?;
    quadrilateral::brahmagupta_area(&q).map_err(to_py)
}

/// Two adjacent angles `(alpha1, alpha2)` of the cyclic quadrilateral.
#[pyfunction]
fn quad_angles(s1: f64, s2: f64, s3: f64, s4: f64) -> PyResult<(f64, f64)> {
    let q = QuadSides::new(s1, s2, s3, s4).map_err(to_py)?;
    let cfg = quadrilateral::angles_from_sides(&q).map_err(to_py)?;
    Ok((cfg.alpha1, cfg.alpha2))
}

#[pyfunction]
#[pyo3(signature = (r1, tol = 1e-7))]
fn quad_area_squared_density(r1: f64, tol: f64) -> PyResult<f64> {
    quadrilateral::area_marginal_density(r1, tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (area, tol = 1e-7))]
fn quad_area_density(area: f64, tol: f64) -> PyResult<f64> {
    quadrilateral::area_density(area, tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (area, tol = 1e-7))]
fn quad_area_cdf(area: f64, tol: f64) -> PyResult<f64> {
    quadrilateral::area_cdf(area, tol).map_err(to_py)
}

/// Endpoints of Ω, or `None` when it is empty.
#[pyfunction]
#[pyo3(signature = (r1, tol = 1e-14))]
fn omega_interval(r1: f64, tol: f64) -> PyResult<Option<(f64, f64)>> {
    Ok(quadrilateral::omega_interval(r1, tol)
        .map_err(to_py)?
        .bounds)
}

/// Median quadrilateral area and its error bar. `mode` is `"numeric"` or
/// `"montecarlo"`.
#[pyfunction]
#[pyo3(signature = (mode = "numeric", tol = 1e-7, samples = 1_000_000, seed = 0, workers = 4))]
fn quad_median_area(
    mode: &str,
    tol: f64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> PyResult<(f64, f64)> {
    let mode = match mode {
        "numeric" => MedianMode::Numeric { tol },
        "montecarlo" | "mc" => MedianMode::MonteCarlo {
            samples,
            seed,
            workers,
        },
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let m = quadrilateral::quad_median_area(mode).map_err(to_py)?;
    Ok((m.median, m.error_bar))
}

#[pyfunction]
fn quad_simulate(seed: u64, count: u64, workers: usize) -> PySampleStats {
    PySampleStats(quadrilateral::sample_parallel(seed, count, workers))
}

#[pyfunction]
fn angle_density(x: f64) -> PyResult<f64> {
    quadrilateral::angle_density(x).map_err(to_py)
}

#[pyfunction]
fn tent_density(x: f64, y: f64) -> PyResult<f64> {
    quadrilateral::tent_density(x, y).map_err(to_py)
}

/// `1 − n/2ⁿ⁻¹` as a `(numerator, denominator)` pair of decimal strings.
#[pyfunction]
fn formable_probability(n: u32) -> PyResult<(String, String)> {
    let p = ngon::formable_probability(n).map_err(to_py)?;
    Ok((p.numer().to_string(), p.denom().to_string()))
}

#[pyfunction]
#[pyo3(signature = (pieces, tol = 1e-12))]
fn cyclic_polygon_area(pieces: Vec<f64>, tol: f64) -> PyResult<PyCyclicSolution> {
    let pv = PieceVector::new(pieces).map_err(to_py)?;
    let s = ngon::cyclic_polygon_area(&pv, tol).map_err(to_py)?;
    Ok(PyCyclicSolution {
        circumradius: s.circumradius,
        central_angles: s.central_angles,
        area: s.area,
        center_inside: s.center_inside,
    })
}

#[pyfunction]
fn ngon_simulate(n: usize, seed: u64, count: u64, workers: usize) -> PyResult<PySampleStats> {
    Ok(PySampleStats(
        ngon::simulate_ngon_parallel(n, seed, count, workers).map_err(to_py)?,
    ))
}

#[pymodule]
#[pyo3(name = "stickdist")]
fn stickdist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySampleStats>()?;
    m.add_class::<PyCyclicSolution>()?;
    m.add("TRIANGLE_ZETA_MAX", triangle::ZETA_MAX)?;
    m.add("QUAD_MEAN_AREA", quadrilateral::MEAN_AREA)?;
    m.add_function(wrap_pyfunction!(triangle_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_survival, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_median, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_moment, m)?)?;
    m.add_function(wrap_pyfunction!(heron_area, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(brahmagupta_area, m)?)?;
    m.add_function(wrap_pyfunction!(quad_angles, m)?)?;
    m.add_function(wrap_pyfunction!(quad_area_squared_density, m)?)?;
    m.add_function(wrap_pyfunction!(quad_area_density, m)?)?;
    m.add_function(wrap_pyfunction!(quad_area_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(omega_interval, m)?)?;
    m.add_function(wrap_pyfunction!(quad_median_area, m)?)?;
    m.add_function(wrap_pyfunction!(quad_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(angle_density, m)?)?;
    m.add_function(wrap_pyfunction!(tent_density, m)?)?;
    m.add_function(wrap_pyfunction!(formable_probability, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_polygon_area, m)?)?;
    m.add_function(wrap_pyfunction!(ngon_simulate, m)?)?;
    Ok(())
}

//! One-dimensional integrators.
//!
//! [`integrate_adaptive`] is a globally adaptive Gauss–Kronrod (7/15) scheme for
//! integrands that are smooth inside the interval. [`integrate_endpoint_singular`]
//! is a tanh–sinh (double-exponential) rule that tolerates integrable power and
//! logarithmic singularities at either endpoint.
//!
//! Both treat `tol` as an absolute error target.

mod gauss_kronrod;
mod tanh_sinh;

pub use gauss_kronrod::integrate_adaptive;
pub use tanh_sinh::{integrate_endpoint_singular, integrate_endpoint_singular_dist, Abscissa};

/// Default cap on integrand evaluations per call.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub(crate) fn zero() -> Self {
        QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 1,
        }
    }
}

impl std::ops::Add for QuadratureResult {
    type Output = QuadratureResult;

    fn add(self, rhs: Self) -> Self {
        QuadratureResult {
            value: self.value + rhs.value,
            abs_error_estimate: self.abs_error_estimate + rhs.abs_error_estimate,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

impl std::iter::Sum for QuadratureResult {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(
            QuadratureResult {
                value: 0.0,
                abs_error_estimate: 0.0,
                evaluations: 0,
            },
            |a, b| a + b,
        )
    }
}

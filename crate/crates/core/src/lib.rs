//! Area and angle distributions for polygons assembled from a randomly broken
//! stick.
//!
//! A stick of length 2 is broken at uniform random points. The pieces form a
//! triangle with probability 1/4, and four pieces form a (cyclic)
//! quadrilateral with probability 1/2. This crate computes
//!
//! * the exact density, survival function, median and moments of the triangle
//!   area ([`triangle`]), built on complete elliptic integrals ([`specfun`]);
//! * the numerically integrated area density of the cyclic quadrilateral and
//!   the density of its angles ([`quadrilateral`]);
//! * formability probabilities and maximal-area cyclic n-gons ([`ngon`]);
//! * Monte Carlo estimators for all of the above ([`montecarlo`]).
//!
//! All computation happens in canonical units (stick length 2); see
//! [`triangle::StickConvention`] for rescaling.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod montecarlo;
pub mod ngon;
pub mod quadrature;
pub mod quadrilateral;
pub mod roots;
pub mod specfun;
pub mod triangle;

pub use error::{Error, Result};

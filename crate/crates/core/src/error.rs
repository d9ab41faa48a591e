use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain: {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error(
        "tolerance {tol:e} not met after {evaluations} evaluations: \
         best estimate {value} with error estimate {abs_error:e}"
    )]
    ToleranceNotMet {
        value: f64,
        abs_error: f64,
        tol: f64,
        evaluations: usize,
    },

    #[error("cubic in r3 has fewer than three real roots at r1 = {r1}, r2 = {r2}")]
    NoRealTriple { r1: f64, r2: f64 },

    #[error("pieces cannot form a polygon: longest piece {longest} >= half perimeter {half}")]
    NotFormable { longest: f64, half: f64 },

    #[error("no convergence after {iterations} iterations, residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("inconsistent geometry: {0}")]
    Inconsistent(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }

    /// Wraps the error with a description of where it happened.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {arg} outside the domain")]
    Domain { function: &'static str, arg: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("wavenumber {k} is not on the physical sheet (Im k must be > 0)")]
    WrongSheet { k: Complex64 },

    #[error("resolvent trace is singular at k = {k}")]
    SingularPoint { k: Complex64 },

    #[error("bound-state regime: 4π²α₀α₁a² = {product} < 1 (or a coupling is not positive)")]
    BoundStateRegime { product: f64 },

    #[error("pole of the zeta function at s = {s}, nearest half-integer {nearest}")]
    Pole { s: Complex64, nearest: f64 },

    #[error("s = {s} lies outside the convergence strip ({lo}, {hi}); analytic continuation required")]
    ContinuationRequired { s: Complex64, lo: f64, hi: f64 },

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("{what}: quadrature did not converge (partial value {value}, error estimate {error})")]
    NotConverged {
        what: String,
        value: f64,
        error: f64,
    },

    #[error("extrapolation of {what} is inconsistent: {first} vs {second}")]
    Extrapolation {
        what: &'static str,
        first: f64,
        second: f64,
    },

    #[error("finite-difference step h = {h} pushes a = {a} out of the admissible range; use a smaller step")]
    StepTooLarge { a: f64, h: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for errors caused by a numerical procedure rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteIntegrand { .. } | Error::NotConverged { .. } | Error::Extrapolation { .. }
        )
    }
}

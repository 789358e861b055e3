//! Relative spectral functions for point interactions in three dimensions.
//!
//! The crate computes, for the pair `(−Δ_α, −Δ)` of a Laplacian perturbed by
//! one or two delta interactions and the free Laplacian:
//!
//! * the relative spectral measure `e(v)` and the traced resolvent
//!   difference it comes from ([`models`]);
//! * the relative heat trace, the relative zeta function on its convergence
//!   strip and the residue / finite part at `s = −1/2` ([`zetareg`]);
//! * the relative eta function, the zeta-regularized partition function on
//!   `S¹ × ℝ³`, the vacuum energy and the Casimir force between two centres
//!   ([`thermo`]).
//!
//! Underneath sit a small special-function library ([`specfun`]) and an
//! adaptive Gauss–Kronrod engine with an oscillatory-tail mode ([`quad`]).
//!
//! ```
//! use relspec::models::{OnePointModel, one_point_spectral_measure};
//! use relspec::thermo::{relative_partition, ThermalState};
//! use relspec::zetareg::one_point_laurent;
//!
//! let m = OnePointModel::new(0.25)?;
//! let e = one_point_spectral_measure(&m);
//! let report = relative_partition(&e, &one_point_laurent(&m), &ThermalState::new(5.0, 1.0)?)?;
//! // E_vacuum = 2α(1 − log 8παℓ)
//! let expected = 0.5 * (1.0 - (2.0 * std::f64::consts::PI).ln());
//! assert!((report.vacuum_energy - expected).abs() < 1e-14);
//! # Ok::<(), relspec::Error>(())
//! ```

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod error;
pub mod models;
pub mod quad;
pub mod specfun;
pub mod thermo;
pub mod zetareg;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use models::{
    one_point_spectral_measure, two_point_spectral_measure, OnePointModel, SpectralMeasure, TwoPointModel,
};
pub use thermo::{PartitionReport, ThermalState};
pub use zetareg::{LaurentData, ZetaStrip};

// The guide's code listings are compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spectral-measures.md")]
    mod spectral_measures {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/zeta-functions.md")]
    mod zeta_functions {}
    #[doc = include_str!("../../../book/src/partition-function.md")]
    mod partition_function {}
    #[doc = include_str!("../../../book/src/casimir.md")]
    mod casimir {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

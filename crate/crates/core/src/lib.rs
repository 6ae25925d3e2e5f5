//! Exact truncated-series verification of two-variable modular-form PDE systems.
//!
//! The layers, bottom up:
//!
//! * [`series`]: Puiseux series in one variable, total-degree truncated series
//!   and linear-form fractions in two variables, generic over [`Scalar`].
//! * [`forms`]: Eisenstein series, eta, theta functions, Hauptmoduln and the
//!   weight-one pairs, each with an independent brute-force oracle.
//! * [`hypergeom`]: `pFq` series and transformation identities.
//! * [`pde`]: logarithmic derivatives, the coefficient formulas of the
//!   second-order system, residuals, and the constructed families.
//! * [`mirror`]: Euler-operator algebra, Frobenius bases and mirror maps.
//! * [`report`] and [`suites`]: named suites producing [`VerificationReport`]s.
//!
//! Everything above the kernel runs over [`Rational`]; no floating point is
//! used in any verification.

pub mod error;
pub mod forms;
pub mod hypergeom;
pub mod mirror;
pub mod pde;
pub mod report;
pub mod scalar;
pub mod series;
pub mod suites;

pub use error::{Error, Result};
pub use report::{Status, VerificationItem, VerificationReport};
pub use scalar::{Rational, Scalar};
pub use series::{Atom, BiFrac, BiSeries, PSeries};

/// One-variable series over exact rationals.
pub type Series = PSeries<Rational>;
/// Two-variable series over exact rationals.
pub type BiSeriesQ = BiSeries<Rational>;
/// Two-variable fractions over exact rationals.
pub type BiFracQ = BiFrac<Rational>;
/// One-variable series over `f64`, for quick numerical experiments.
pub type SeriesF64 = PSeries<f64>;

//! vmvt-core: exact counting and numerical evaluation for
//! translation-dilation invariant Diophantine systems.
//!
//! The crate computes, exactly or to controlled precision, the quantities a
//! desk-scale study of such systems needs:
//!
//! * [`mean_values`] — exact solution counts J of the degree-k system, the
//!   diagonal count T, pigeonhole lower-bound certificates, progression
//!   restriction checks, and empirical growth exponents.
//! * [`exp_sums`] — the polynomial exponential sums f and g with exact
//!   argument reduction, best rational approximation, minor-arc membership,
//!   pointwise bound envelopes, and polynomial equidistribution minima.
//! * [`congruences`] — exhaustive verification of the lifting bounds for
//!   power-sum congruence systems over prime powers.
//! * [`waring`] — exact representation counts by sums of k-th powers and the
//!   circle-method prediction (gamma-factor main term, truncated singular
//!   series).
//! * [`tarry`] — verification and bounded exhaustive search for equal-power-
//!   sum block witnesses.
//! * [`exponents`] — the ledger of closed-form exponents, constants, and
//!   thresholds, with the mean-value asymptotic comparison for the cubic
//!   two-equation system.
//!
//! Every parallel routine produces bit-identical results for any worker
//! count; see [`config::ComputeConfig`].

pub mod config;
pub mod congruences;
pub mod error;
pub mod exp_sums;
pub mod exponents;
pub mod mean_values;
pub mod numeric;
pub mod parallel;
pub mod special;
pub mod tarry;
pub mod waring;

pub use config::ComputeConfig;
pub use error::{Error, Result};

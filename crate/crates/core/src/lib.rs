//! Exact Euler-Maclaurin and Boole (alternating) summation of series tails.
//!
//! Coefficients are generated exactly from quadratic recurrences and checked
//! against an independent power-series construction; the tail engines then
//! evaluate `Σ_{m >= x} X(m)` and `Σ_{m >= x} (-1)^(m-x) X(m)` from
//! derivatives of `X` at a single point, truncated at the smallest term.
//!
//! ```
//! use tailsum::app::{zeta, DEFAULT_MAX_ORDER};
//! use tailsum::summation::TruncationPolicy;
//!
//! let policy = TruncationPolicy::SmallestTerm { max_order: DEFAULT_MAX_ORDER };
//! let z2 = zeta(2, 10, policy, 20).unwrap();
//! assert_eq!(z2.value_decimal, "1.6449340668482264365");
//! ```

pub mod app;
mod approx;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod power_series;
pub mod rational;
pub mod summation;
pub mod term;

pub use error::{Error, Result};
pub use rational::Rational;

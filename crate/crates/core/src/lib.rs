//! Exact q-series arithmetic and identity verification for Nahm sums.
//!
//! The building blocks, bottom up:
//!
//! - [`series`]: truncated Laurent series in `q^(1/D)` with big-integer coefficients.
//! - [`products`]: q-Pochhammer symbols and theta functions.
//! - [`lattice`]: generalised Nahm-type lattice sums with a complete enumeration bound.
//! - [`ct`]: constant terms in `z` of a theta function in `1/z` times Euler factors.
//! - [`registry`]: the identity catalogue and the verification driver.

pub mod ct;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod monomial;
pub mod parse;
pub mod products;
pub mod registry;
pub mod series;

pub use error::{Error, Result};
pub use monomial::{Rat, Sign, SignedMonomial};
pub use series::{Comparison, QSeries};

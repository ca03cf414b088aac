//! Exact computations around graded quotients of free associative algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] holds coefficient fields and [`exact::Magnitude`], an exact
//!   representation for doubly-exponential integers with certified comparison.
//! * [`algebra`] has words, elements of the free algebra, a relation parser and
//!   echelon-form subspaces of homogeneous components.
//! * [`series`] computes Hilbert series of graded quotients, Golod-Shafarevich
//!   checks, lower-bound series and infinite-dimensionality certificates.
//! * [`ladder`] builds complementary `U`/`V` ladders, their binary
//!   decompositions and the ideal `E` they define.
//! * [`planner`] validates dyadic relation profiles, schedules the `e(n)`
//!   exponents and evaluates growth bounds over magnitudes.
//! * [`quotient`] handles inhomogeneous relations by truncation at a precision.
//! * [`cli`] wires everything to the `gsg` binary.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exact;
pub mod ladder;
pub mod planner;
pub mod quotient;
pub mod series;

pub use error::{Error, Result};

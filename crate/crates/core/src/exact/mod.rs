//! Scalars and exact big-number comparison.

pub mod field;
pub mod log2;
pub mod magnitude;

pub use field::{BitVec, Field, FieldChoice, Gf2, Gfp, Rationals};
pub use magnitude::{bitlen_lt_pow2, Exponent, Magnitude};

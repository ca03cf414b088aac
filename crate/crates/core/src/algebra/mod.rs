//! The free associative algebra on `d` generators, without identity.

pub mod element;
pub mod linalg;
pub mod parse;
pub mod word;

pub use element::Element;
pub use linalg::{Echelon, Subspace};
pub use parse::{parse_element, parse_relations};
pub use word::Word;

/// Default cap on degrees that any computation may reach.
pub const DEFAULT_DEGREE_CAP: usize = 20;

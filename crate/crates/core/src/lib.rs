//! Exact desk-scale geometry of hyperbolic group families.
//!
//! The crate builds Cayley balls for a handful of built-in group families,
//! estimates hyperbolicity and quasiconvexity constants from them, constructs
//! the regular language of geodesics through cone types, runs the
//! padded-multi-tape automaton pipeline that recognizes minimal-length coset
//! representatives of a quasiconvex subgroup, and certifies empirically that
//! the resulting section of `G/H` is a net in `G`.
//!
//! Everything is integer or half-integer exact; no metric quantity ever
//! touches floating point.

#![forbid(unsafe_code)]

pub mod automata;
pub mod cayley;
pub mod conelang;
pub mod error;
pub mod groups;
pub mod halfint;
pub mod net;
pub mod parallel;
pub mod words;

pub use error::{Error, Result};
pub use groups::{GroupFamily, GroupOracle};
pub use halfint::HalfInt;
pub use words::{Alphabet, Symbol, Word};

//! Exact computations around the Klein group `PSL(2,7)`, its double cover
//! `SL(2,7)` acting on `P^3`, and the Klein quartic in `P^2`.
//!
//! Everything is exact: scalars live in cyclotomic fields, Gröbner bases run
//! over prime fields, and floating point appears only in diagnostics.

pub mod apolarity;
pub mod characters;
pub mod cyclotomic;
pub mod data;
pub mod diophantine;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod groups;
pub mod invariants;
pub mod linalg;

pub use cyclotomic::{CycNum, Rational};
pub use error::{Error, Result};

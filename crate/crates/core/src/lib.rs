//! Pattern containment and saturation for 0-1 matrices.
//!
//! A host matrix contains a pattern when some choice of rows and columns
//! yields a submatrix with a 1 wherever the pattern has one. A host saturates
//! the pattern when it avoids it and flipping any 0 creates an occurrence;
//! it semisaturates the pattern when every flip creates a new occurrence.
//! This crate provides the containment engine, exact saturation and
//! extremal searches for small hosts, a classifier for the asymptotic
//! behaviour of `sat(P, n)` and `ssat(P, n)`, and the constructions used to
//! bound the saturation function of specific families.

pub mod classifier;
pub mod constructions;
pub mod containment;
mod error;
pub mod matrix;
pub mod saturation;
pub mod search;
pub mod staircase;

pub use error::{Error, ParseErrorKind, Result};
pub use matrix::{BitMatrix, HostMatrix, Pattern, Position, Style, Transform, MAX_DIM};

//! Exact combinatorics and simulation kernels for the discrete Erdős–Rényi
//! matrix models built from walk counts `X = Tr A^q` and `Y = 1ᵀ A^q 1`.
//!
//! The crate is `no_std` (with `alloc`). Everything except [`graphsim`] works in
//! exact arithmetic: [`series`] holds truncated power series and the functional
//! equation solvers, [`combinatorics`] the tree-count sequences and limit
//! cumulant tables, [`diagrams`] the connected-diagram enumeration, and
//! [`oracle`] brute-force sums over every graph on a few vertices.
//!
//! Parallel drivers, file formats and the command line live in the `ermm`
//! companion crate.
#![no_std]

extern crate alloc;

pub mod combinatorics;
pub mod diagrams;
mod error;
pub mod graphsim;
pub mod num;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use num::{Poly, Rational};

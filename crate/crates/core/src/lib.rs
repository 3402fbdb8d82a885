//! Numerical laboratory for standard zero-free regions of Rankin–Selberg
//! L-functions `L(s, π × π̃)`.
//!
//! The crate instantiates the computable objects behind the sieve-theoretic
//! proof of a zero-free region of width `c_π / log(|t| + 3)`:
//!
//! - [`fields`]: base fields, prime ideals and prime counting;
//! - [`reps`]: representation descriptors, isobaric sums, the pole-order engine;
//! - [`lseries`]: Dirichlet coefficients of `L(s, Π × Π̃)`, truncated series,
//!   Euler–Maclaurin `ζ(s)` and residue data;
//! - [`sieve`]: the counting estimates of the sieve lemma;
//! - [`perron`]: the smoothed coefficient sum and its residue prediction;
//! - [`conductor`]: archimedean Weil parameters and conductor inequalities;
//! - [`zerofree`]: the combining step and the lower-bound scans.

pub mod conductor;
pub mod error;
pub mod fields;
pub mod lseries;
pub mod numeric;
pub mod perron;
pub mod reps;
pub mod sieve;
pub mod zerofree;

pub use error::{Error, Result};

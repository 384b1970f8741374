//! Exact computation of discriminants of noncommutative algebras over
//! central polynomial subalgebras.
//!
//! The pipeline: present an algebra by quadratic rewriting rules
//! ([`pbw`]), optionally extend it by a monoid grading twisted through
//! algebra maps ([`twist`]), certify a free module structure over a
//! central subalgebra ([`freemod`]), then compute the discriminant of
//! the trace pairing either directly or through product/extension
//! formulas ([`disc`]). [`autcheck`] applies the results to constrain
//! algebra endomorphisms.
//!
//! All arithmetic is exact: coefficients live in a cyclotomic field
//! ([`scalar`]) and every determinant is computed fraction-free.

pub mod error;
pub mod freemod;
pub mod action;
pub mod ambient;
pub mod autcheck;
pub mod disc;
pub mod linalg;
pub mod pbw;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod twist;

pub use error::{Error, Result};
pub use poly::{Mon, Poly, VarSet};
pub use scalar::Scalar;

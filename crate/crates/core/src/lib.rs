//! Exact symbolic engine for affine vertex algebras at negative integer level:
//! Chevalley bases, PBW arithmetic, vertex-algebra states, Zhu and C2 symbol
//! maps, polynomial systems and weight classification.

#![allow(clippy::needless_range_loop)]

pub mod chains;
pub mod classify;
pub mod errata;
pub mod error;
pub mod groebner;
pub mod liealg;
pub mod linalg;
pub mod lincomb;
pub mod pbw;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod solve;
pub mod symalg;
pub mod uea;
pub mod vertex;
pub mod zhu;

pub use error::{Error, Result};

/// Exact rational coefficients used throughout.
pub type Q = num_rational::BigRational;

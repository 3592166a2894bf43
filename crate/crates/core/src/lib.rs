//! Numerics for q-series, continued fractions, divergent-series summation,
//! and the quotient-difference / Toda connection, over exact rational or
//! arbitrary-precision floating scalars.

pub mod contfrac;
pub mod divergent;
pub mod error;
pub mod qdtoda;
pub mod qseries;
pub mod report;
pub mod scalar;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::{Rat, Real, Scalar};

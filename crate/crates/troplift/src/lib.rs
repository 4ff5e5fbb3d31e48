//! Exact arithmetic for valued polynomial systems over Q((t)): initial
//! ideals with respect to rational weights, tropical membership tests,
//! and truncated fractional-power series solutions at a prescribed
//! valuation.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod lift;
pub mod polyring;
pub mod solver;
pub mod stdbasis;
pub mod tinitial;
pub mod tropcurve;

pub use error::{Error, Result};

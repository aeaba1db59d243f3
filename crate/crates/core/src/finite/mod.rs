//! Exponent engine for finite-alphabet excited sources.

mod capacity;
mod exponents;
mod file;
mod model;

pub use capacity::{ExponentOptimum, StateOptimum};
pub use exponents::{TradeoffPoint, SEARCH_TOL};
pub use file::{ModelFile, MODEL_SCHEMA};
pub use model::{ExponentTriple, FiniteEdms, RatePoint, StateDistribution};

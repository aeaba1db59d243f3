//! Secret-key capacities, reliability and secrecy exponents, and energy per
//! key bit for excited distributed memoryless sources.
//!
//! Analytic code is generic over the scalar type (`f32` or `f64`); the
//! aliases below fix it to a concrete type. All rates and exponents are in
//! nats unless a function name or doc comment says otherwise.

pub mod dsbs;
pub mod error;
pub mod finite;
pub mod gaussian;
pub mod numerics;
pub mod onoff;
pub mod sim;
pub mod units;

pub use error::{Error, Result};
pub use finite::{ExponentTriple, FiniteEdms, RatePoint, StateDistribution};
pub use numerics::Real;
pub use units::Units;
pub use dsbs::{Binary, DsbsModel};
pub use gaussian::{Gaussian, GaussianSystem};
pub use onoff::{BlockEnergy, Region, SnrKeyModel};

pub type FiniteEdmsF64 = FiniteEdms<f64>;
pub type FiniteEdmsF32 = FiniteEdms<f32>;
pub type StateDistributionF64 = StateDistribution<f64>;
pub type StateDistributionF32 = StateDistribution<f32>;
pub type GaussianSystemF64 = GaussianSystem<f64>;
pub type GaussianSystemF32 = GaussianSystem<f32>;
pub type DsbsModelF64 = DsbsModel<f64>;
pub type DsbsModelF32 = DsbsModel<f32>;

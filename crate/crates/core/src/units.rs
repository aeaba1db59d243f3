//! Information units. Every computation runs in nats; bits only appear at
//! presentation boundaries and inside the binary-source closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numerics::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    /// Converts a value expressed in nats into `self`.
    pub fn from_nats<T: Real>(self, nats: T) -> T {
        match self {
            Units::Nats => nats,
            Units::Bits => nats_to_bits(nats),
        }
    }

    /// Converts a value expressed in `self` into nats.
    pub fn to_nats<T: Real>(self, value: T) -> T {
        match self {
            Units::Nats => value,
            Units::Bits => bits_to_nats(value),
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        })
    }
}

impl FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nats" | "nat" => Ok(Units::Nats),
            "bits" | "bit" => Ok(Units::Bits),
            other => Err(format!("unknown unit `{other}` (expected nats or bits)")),
        }
    }
}

#[inline]
pub fn bits_to_nats<T: Real>(bits: T) -> T {
    bits * T::LN_2()
}

#[inline]
pub fn nats_to_bits<T: Real>(nats: T) -> T {
    nats / T::LN_2()
}

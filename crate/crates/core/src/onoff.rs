//! SNR-parameterized key models and the quantities derived from them:
//! on-off capacity, energy per key bit, on-off reliability exponents and
//! finite-block key energy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{lit, logspace, maximize_unimodal, Real};

/// Which closed-form branch of the reliability exponent applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// `r_sk >= I_K`: the exponent is zero.
    High,
    /// Interior stationary point of the rho search.
    Medium,
    /// Optimum pinned at `rho = 1`.
    Low,
}

impl Region {
    /// 1, 2 or 3 for high, medium and low rates.
    pub fn index(self) -> u8 {
        match self {
            Region::High => 1,
            Region::Medium => 2,
            Region::Low => 3,
        }
    }
}

/// A key-generation model whose constant-signal behaviour is fixed by one SNR.
///
/// Every rate and exponent crossing this interface is in nats.
pub trait SnrKeyModel<T: Real>: Sync {
    /// Key rate `I_K(gamma)` of a constant excitation.
    fn key_rate(&self, gamma: T) -> T;

    /// `d I_K / d gamma`.
    fn key_rate_derivative(&self, gamma: T) -> T;

    /// Constant-signal reliability exponent and its region. Must be total:
    /// any nonnegative `r_sk` and `gamma` are accepted.
    fn reliability_exponent_region(&self, r_sk: T, gamma: T) -> (T, Region);

    fn reliability_exponent(&self, r_sk: T, gamma: T) -> T {
        self.reliability_exponent_region(r_sk, gamma).0
    }

    /// Threshold SNR: the tangent point of `I_K` from the origin.
    fn gamma_c(&self) -> T {
        threshold_snr(|g| self.key_rate(g), |g| self.key_rate_derivative(g))
            .expect("threshold root is bracketed on [0.5, 10]")
    }
}

/// Root of `I(g) - g I'(g)` on `[0.5, 10]`, tolerance `1e-10`.
pub fn threshold_snr<T: Real>(rate: impl Fn(T) -> T, slope: impl Fn(T) -> T) -> Result<T> {
    crate::numerics::bracketed_root(|g| rate(g) - g * slope(g), lit(0.5), lit(10.0), lit(1e-10))
}

/// On-off capacity `max_{lambda} lambda I_K(gamma / lambda)` and the optimal duty
/// cycle `min(gamma / gamma_c, 1)`.
pub fn capacity<T: Real, M: SnrKeyModel<T> + ?Sized>(model: &M, gamma: T) -> (T, T) {
    capacity_with_threshold(model, gamma, model.gamma_c())
}

pub(crate) fn capacity_with_threshold<T: Real, M: SnrKeyModel<T> + ?Sized>(
    model: &M,
    gamma: T,
    gamma_c: T,
) -> (T, T) {
    if gamma <= T::zero() {
        return (T::zero(), T::zero());
    }
    if gamma >= gamma_c {
        return (model.key_rate(gamma), T::one());
    }
    let lambda = gamma / gamma_c;
    (lambda * model.key_rate(gamma_c), lambda)
}

/// Minimum energy per key bit normalized by the noise power,
/// `gamma_c ln 2 / I_K(gamma_c)`.
pub fn min_energy_per_key_bit<T: Real, M: SnrKeyModel<T> + ?Sized>(model: &M) -> T {
    let g = model.gamma_c();
    g * T::LN_2() / model.key_rate(g)
}

/// Energy per key bit of a constant excitation, `gamma ln 2 / I_K(gamma)`.
pub fn energy_per_bit_constant<T: Real, M: SnrKeyModel<T> + ?Sized>(model: &M, gamma: T) -> T {
    gamma * T::LN_2() / model.key_rate(gamma)
}

/// Energy per key bit with on-off excitation, `gamma ln 2 / C_K(gamma)`.
pub fn energy_per_bit_onoff<T: Real, M: SnrKeyModel<T> + ?Sized>(model: &M, gamma: T) -> T {
    gamma * T::LN_2() / capacity(model, gamma).0
}

/// Smallest duty cycle considered by the on-off search.
pub const MIN_DUTY: f64 = 1e-6;
const DUTY_GRID: usize = 200;

/// Maximizes `f(lambda)` over `[1e-6, 1]`.
///
/// A 200-point log grid (which contains `lambda = 1`) seeds a golden-section
/// refinement in `ln lambda` over the neighbouring cells. If nothing is
/// positive the result is `(0, 1)`.
pub fn maximize_duty<T: Real>(f: impl Fn(T) -> T) -> (T, T) {
    let grid = logspace(lit::<T>(MIN_DUTY), T::one(), DUTY_GRID);
    let values: Vec<T> = grid.iter().map(|&l| f(l)).collect();
    let mut best = DUTY_GRID - 1;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    if !(values[best] > T::zero()) {
        return (T::zero(), T::one());
    }
    let lo = grid[best.saturating_sub(1)].ln();
    let hi = grid[(best + 1).min(DUTY_GRID - 1)].ln();
    let (x, v) = maximize_unimodal(|x: T| f(x.exp().min(T::one())), lo, hi, lit(1e-10));
    if v > values[best] {
        (v, x.exp().min(T::one()))
    } else {
        (values[best], grid[best])
    }
}

/// On-off reliability exponent `max_lambda lambda E_R(r_sk / lambda, gamma / lambda)`
/// and the maximizing duty cycle.
pub fn onoff_reliability_exponent<T: Real, M: SnrKeyModel<T> + ?Sized>(
    model: &M,
    r_sk: T,
    gamma: T,
) -> (T, T) {
    maximize_duty(|l| l * model.reliability_exponent(r_sk / l, gamma / l))
}

/// Block length cap for the finite-block energy search.
pub const MAX_BLOCK_LENGTH: u64 = 10_000_000;

/// Smallest `n` with `n E(ln 2 * b_key / n) >= ln(1 / epsilon)`, where
/// `exponent` maps a rate in nats to an exponent in nats.
///
/// `n E(c / n)` is nondecreasing in `n` for convex nonincreasing `E`, so an
/// exponential bracket followed by bisection finds it. `None` when even
/// `n = 10^7` is not enough.
pub fn block_length<T: Real>(exponent: impl Fn(T) -> T, b_key: T, epsilon: T) -> Option<u64> {
    let target = -epsilon.ln();
    let bits = b_key * T::LN_2();
    let meets = |n: u64| {
        let nf = T::from_u64(n).unwrap();
        nf * exponent(bits / nf) >= target
    };
    let mut hi = 1u64;
    while !meets(hi) {
        if hi >= MAX_BLOCK_LENGTH {
            return None;
        }
        hi = (hi * 2).min(MAX_BLOCK_LENGTH);
    }
    let mut lo = hi / 2; // fails (or is zero)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if meets(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Finite-block key energy at one SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockEnergy<T> {
    /// `gamma * n`, normalized by the noise power.
    pub energy: T,
    pub n: u64,
    pub gamma: T,
}

fn check_block_args<T: Real>(b_key: T, epsilon: T) -> Result<()> {
    if !(b_key >= T::one()) || !b_key.is_finite() {
        return Err(Error::Domain(format!("b_key = {b_key} must be at least 1 bit")));
    }
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0, 1)")));
    }
    Ok(())
}

/// Shortest block meeting the `(b_key, epsilon)` target at SNR `gamma`, with
/// either constant or on-off excitation.
pub fn block_energy_at<T: Real, M: SnrKeyModel<T> + ?Sized>(
    model: &M,
    b_key: T,
    epsilon: T,
    gamma: T,
    use_onoff: bool,
) -> Option<BlockEnergy<T>> {
    let n = if use_onoff {
        block_length(|r| onoff_reliability_exponent(model, r, gamma).0, b_key, epsilon)
    } else {
        block_length(|r| model.reliability_exponent(r, gamma), b_key, epsilon)
    }?;
    Some(BlockEnergy {
        energy: gamma * T::from_u64(n).unwrap(),
        n,
        gamma,
    })
}

/// Default SNR grid for the finite-block search: 400 log-spaced points on
/// `[1e-3, 10]`.
pub fn default_block_grid<T: Real>() -> Vec<T> {
    logspace(lit(1e-3), lit(10.0), 400)
}

/// [`block_energy_at`] over a whole SNR grid, in grid order.
pub fn block_energy_curve<T: Real, M: SnrKeyModel<T> + ?Sized>(
    model: &M,
    b_key: T,
    epsilon: T,
    use_onoff: bool,
    gammas: &[T],
) -> Result<Vec<Option<BlockEnergy<T>>>> {
    check_block_args(b_key, epsilon)?;
    Ok(gammas
        .par_iter()
        .map(|&g| block_energy_at(model, b_key, epsilon, g, use_onoff))
        .collect())
}

/// Minimum of `gamma * n` over the SNR grid; ties keep the smallest SNR.
pub fn finite_block_energy<T: Real, M: SnrKeyModel<T> + ?Sized>(
    model: &M,
    b_key: T,
    epsilon: T,
    use_onoff: bool,
    gammas: &[T],
) -> Result<BlockEnergy<T>> {
    let curve = block_energy_curve(model, b_key, epsilon, use_onoff, gammas)?;
    curve
        .into_iter()
        .flatten()
        .fold(None, |best: Option<BlockEnergy<T>>, e| match best {
            Some(b) if b.energy <= e.energy => Some(b),
            _ => Some(e),
        })
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no SNR among {} grid points reaches {b_key} key bits at epsilon = {epsilon} \
                 within n <= {MAX_BLOCK_LENGTH}",
                gammas.len()
            ))
        })
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::code::BinningCode;
use super::decode::{check_crossover, decode_in};
use super::exact::gallager_bound;
use super::leakage::{exact_leakage, MAX_EAVESDROPPER_LEAKAGE_LENGTH, MAX_PUBLIC_LEAKAGE_LENGTH};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Result of a seeded key-agreement simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub n: usize,
    pub r_sk_nats: f64,
    pub r_m_nats: f64,
    pub theta: f64,
    pub w: f64,
    pub trials: u64,
    pub seed: u64,
    /// Fraction of trials with `K_a != K_b`.
    pub error_estimate: f64,
    /// Half-width of the Wilson 95% interval.
    pub error_ci_halfwidth: f64,
    /// `I(K_a; Y_e^n, Phi)`; `None` when the block is too long to enumerate.
    pub leakage_nats: Option<f64>,
    pub leakage_exact: bool,
    /// `-ln(error_estimate) / n`; `None` with zero observed errors.
    pub empirical_exponent: Option<f64>,
    pub gallager_bound: f64,
}

/// Half-width of the Wilson score interval for `errors` out of `trials`.
pub fn wilson_halfwidth(errors: u64, trials: u64) -> f64 {
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = Z_95 * Z_95;
    Z_95 / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()
}

/// Whether the leakage of an `n`-symbol code can be enumerated for this `w`.
pub fn leakage_computable(n: usize, w: f64) -> bool {
    if w == 0.5 {
        n <= MAX_PUBLIC_LEAKAGE_LENGTH
    } else {
        n <= MAX_EAVESDROPPER_LEAKAGE_LENGTH
    }
}

/// One trial: draw Alice's sequence and Bob's noisy copy, decode, compare keys.
fn trial_fails(code: &BinningCode, theta: f64, seed: u64, trial: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let n = code.n();
    let x: u32 = rng.random_range(0..(1u32 << n));
    let mut noise = 0u32;
    for i in 0..n {
        if rng.random::<f64>() < theta {
            noise |= 1 << i;
        }
    }
    let y = x ^ noise;
    match decode_in(code.bin(code.message(x)), y, theta) {
        Some(est) => code.key(est) != code.key(x),
        None => true,
    }
}

/// Counts key disagreements over `trials` independent runs. Trial `t` uses
/// its own ChaCha8 stream, so the count does not depend on scheduling.
pub fn count_errors(code: &BinningCode, theta: f64, trials: u64, seed: u64) -> Result<u64> {
    check_crossover("theta", theta)?;
    Ok((0..trials)
        .into_par_iter()
        .map(|t| trial_fails(code, theta, seed, t) as u64)
        .sum())
}

/// Sampled key-error rate with its interval, the exact leakage when the
/// block is small enough, and the ensemble bound at the same parameters.
pub fn monte_carlo_run(
    code: &BinningCode,
    theta: f64,
    w: f64,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    check_crossover("theta", theta)?;
    check_crossover("w", w)?;
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let errors = count_errors(code, theta, trials, seed)?;
    let estimate = errors as f64 / trials as f64;
    let leakage = if leakage_computable(code.n(), w) {
        Some(exact_leakage(code, theta, w)?)
    } else {
        None
    };
    let n = code.n();
    Ok(SimReport {
        n,
        r_sk_nats: (code.key_bins() as f64).ln() / n as f64,
        r_m_nats: (code.msg_bins() as f64).ln() / n as f64,
        theta,
        w,
        trials,
        seed,
        error_estimate: estimate,
        error_ci_halfwidth: wilson_halfwidth(errors, trials),
        leakage_exact: leakage.is_some(),
        leakage_nats: leakage,
        empirical_exponent: (errors > 0).then(|| -estimate.ln() / n as f64),
        gallager_bound: gallager_bound(n, code.msg_bins(), theta),
    })
}

/// Block length and crossover of an on-off excitation with duty cycle
/// `lambda` at average SNR `gamma`: `ceil(lambda n)` active symbols at
/// SNR `gamma / lambda`.
pub fn onoff_equivalent(n: usize, gamma: f64, lambda: f64) -> Result<(usize, f64)> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain(format!("duty cycle {lambda} outside (0, 1]")));
    }
    let active = ((lambda * n as f64).ceil() as usize).max(1);
    Ok((active, crate::dsbs::theta_from_snr(gamma / lambda)))
}

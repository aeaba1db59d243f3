use rayon::prelude::*;
use serde::Serialize;

use crate::dsbs;
use crate::error::{Error, Result};
use crate::numerics::linspace;

use super::code::{derive_seed, BinningCode};
use super::decode::{check_crossover, decode_in};

/// Longest block length for exhaustive error evaluation.
pub const MAX_EXACT_ERROR_LENGTH: usize = 14;

/// Exact disagreement probabilities of one code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactError {
    /// `Pr(K_a != K_b)`.
    pub key: f64,
    /// `Pr(X_a != estimate)`; never smaller than `key`.
    pub sequence: f64,
}

/// `2^-n theta^d (1 - theta)^(n - d)` for `d = 0..=n`.
pub(crate) fn weight_table(n: usize, theta: f64) -> Vec<f64> {
    let scale = 0.5f64.powi(n as i32);
    (0..=n)
        .map(|d| scale * theta.powi(d as i32) * (1.0 - theta).powi((n - d) as i32))
        .collect()
}

fn check_exact_len(n: usize) -> Result<()> {
    if n > MAX_EXACT_ERROR_LENGTH {
        return Err(Error::TooLarge {
            n,
            max: MAX_EXACT_ERROR_LENGTH,
            what: "exact error enumeration",
        });
    }
    Ok(())
}

/// Exact key and sequence error probabilities of `code` on DSBS(theta) with
/// uniform `X_a`, by enumerating every (bin, observation) pair.
pub fn exact_error_probability(code: &BinningCode, theta: f64) -> Result<ExactError> {
    check_crossover("theta", theta)?;
    check_exact_len(code.n())?;
    let n = code.n();
    let weights = weight_table(n, theta);
    let bins: Vec<&[u32]> = code.nonempty_bins().map(|(_, m)| m).collect();
    let per_bin: Vec<(f64, f64)> = bins
        .par_iter()
        .map(|members| {
            let (mut key_err, mut seq_err) = (0.0, 0.0);
            for y in 0..(1u32 << n) {
                let winner = decode_in(members, y, theta).expect("bin is nonempty");
                let k = code.key(winner);
                for &x in *members {
                    if x != winner {
                        let p = weights[(x ^ y).count_ones() as usize];
                        seq_err += p;
                        if code.key(x) != k {
                            key_err += p;
                        }
                    }
                }
            }
            (key_err, seq_err)
        })
        .collect();
    let (key, sequence) = per_bin
        .iter()
        .fold((0.0, 0.0), |(a, b), (k, s)| (a + k, b + s));
    Ok(ExactError {
        key: key.clamp(0.0, 1.0),
        sequence: sequence.clamp(0.0, 1.0),
    })
}

/// Random-binning ensemble bound on the sequence error,
/// `min_rho min(1, exp(-rho ln|M| + n E_0(theta, rho)))` over a 100-point rho grid.
pub fn gallager_bound(n: usize, msg_bins: u32, theta: f64) -> f64 {
    let log_m = (msg_bins as f64).ln();
    linspace(0.0, 1.0, 100)
        .into_iter()
        .map(|rho| (-rho * log_m + n as f64 * dsbs::e0(theta, rho)).exp())
        .fold(1.0f64, f64::min)
}

/// Code-averaged exact sequence error against the ensemble bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleCheck {
    pub n: usize,
    pub msg_bins: u32,
    pub codes: usize,
    pub mean_error: f64,
    /// Standard error of the mean over codes.
    pub std_error: f64,
    pub gallager_bound: f64,
}

impl EnsembleCheck {
    /// `mean <= bound + 3 standard errors`.
    pub fn within_bound(&self) -> bool {
        self.mean_error <= self.gallager_bound + 3.0 * self.std_error
    }
}

/// Averages the exact sequence error over `num_codes` codes drawn with seeds
/// derived from `seed` (a single key bin; the key map does not affect it).
pub fn ensemble_error_check(
    n: usize,
    r_m: f64,
    theta: f64,
    num_codes: usize,
    seed: u64,
) -> Result<EnsembleCheck> {
    check_crossover("theta", theta)?;
    check_exact_len(n)?;
    if num_codes == 0 {
        return Err(Error::Domain("need at least one code".into()));
    }
    let errors = (0..num_codes as u64)
        .into_par_iter()
        .map(|k| {
            let code = BinningCode::generate(n, 0.0, r_m, derive_seed(seed, k))?;
            Ok(exact_error_probability(&code, theta)?.sequence)
        })
        .collect::<Result<Vec<f64>>>()?;
    let msg_bins = super::code::bin_count(n, r_m)?;
    let (mean, std_error) = mean_and_std_error(&errors);
    Ok(EnsembleCheck {
        n,
        msg_bins,
        codes: num_codes,
        mean_error: mean,
        std_error,
        gallager_bound: gallager_bound(n, msg_bins, theta),
    })
}

/// Code-averaged exact key error `Pr(K_a != K_b)` at the given rates.
pub fn ensemble_key_error(
    n: usize,
    r_sk: f64,
    r_m: f64,
    theta: f64,
    num_codes: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    check_exact_len(n)?;
    if num_codes == 0 {
        return Err(Error::Domain("need at least one code".into()));
    }
    let errors = (0..num_codes as u64)
        .into_par_iter()
        .map(|k| {
            let code = BinningCode::generate(n, r_sk, r_m, derive_seed(seed, k))?;
            Ok(exact_error_probability(&code, theta)?.key)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(mean_and_std_error(&errors))
}

pub(crate) fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

//! Binary phase quantization of the Gaussian source.
//!
//! Sign-quantizing the real parts of the two observations yields a doubly
//! symmetric binary source with crossover `theta(gamma)`. Rates and exponents
//! in this module are in bits unless the name ends in `_nats`; the
//! [`Binary`] model converts to nats at the [`SnrKeyModel`] boundary.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::FiniteEdms;
use crate::numerics::{
    bracketed_root, binary_entropy_bits, inverse_binary_entropy_bits, lit, Real,
};
use crate::onoff::{self, Region, SnrKeyModel};
use crate::{gaussian, units};

/// Crossovers of the binary model: Alice to Bob (`theta`) and Alice to Eve (`w`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DsbsModel<T> {
    pub theta: T,
    pub w: T,
}

impl<T: Real> DsbsModel<T> {
    pub fn new(theta: T, w: T) -> Result<Self> {
        let half = lit::<T>(0.5);
        if !(theta >= T::zero() && theta <= half) {
            return Err(Error::Domain(format!("theta = {theta} outside [0, 1/2]")));
        }
        if !(w >= T::zero() && w <= half) {
            return Err(Error::Domain(format!("w = {w} outside [0, 1/2]")));
        }
        Ok(Self { theta, w })
    }

    /// Quantized model at symmetric SNR `gamma` with an independent Eve.
    pub fn from_snr(gamma: T) -> Result<Self> {
        Self::new(theta_from_snr(gamma), lit(0.5))
    }

    /// One-state finite model with `X_b` and `X_e` flipped independently.
    pub fn to_finite_edms(&self) -> Result<FiniteEdms<T>> {
        FiniteEdms::binary_symmetric(self.theta, self.w, T::zero())
    }

    pub fn key_rate(&self) -> T {
        binary_key_rate(self.theta)
    }

    /// Reliability exponent (bits) at public message rate `r_m` bits.
    pub fn reliability_exponent(&self, r_m: T) -> Result<T> {
        check_bits("r_m", r_m)?;
        Ok(reliability_exponent_message_rate(r_m, self.theta))
    }

    /// Secrecy exponent (bits) at sum rate `r_sum` bits.
    pub fn secrecy_exponent(&self, r_sum: T) -> Result<T> {
        secrecy_exponent(r_sum, self.w)
    }
}

fn check_bits<T: Real>(name: &str, r: T) -> Result<()> {
    if r >= T::zero() && r <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {r} bits outside [0, 1]")))
    }
}

/// Crossover for a given equivalent SNR: `1/2 - atan(sqrt(gamma_eq)) / pi`.
pub fn theta_from_gamma_eq<T: Real>(gamma_eq: T) -> T {
    if gamma_eq <= T::zero() {
        return lit(0.5);
    }
    lit::<T>(0.5) - gamma_eq.sqrt().atan() / T::PI()
}

/// Crossover at symmetric SNR `gamma`.
pub fn theta_from_snr<T: Real>(gamma: T) -> T {
    theta_from_gamma_eq(gaussian::gamma_eq(gamma))
}

/// `1 - H_B(theta)` in bits.
pub fn binary_key_rate<T: Real>(theta: T) -> T {
    (T::one() - binary_entropy_bits(theta)).max(T::zero())
}

/// `d/dgamma (1 - H_B(theta(gamma)))` in bits.
pub fn binary_key_rate_derivative<T: Real>(gamma: T) -> T {
    if gamma <= T::zero() {
        return T::zero();
    }
    let two = lit::<T>(2.0);
    let geq = gaussian::gamma_eq(gamma);
    let theta = theta_from_gamma_eq(geq);
    let dgeq = two * gamma * (T::one() + gamma) / ((T::one() + two * gamma).powi(2));
    // d theta / d gamma_eq = -1 / (2 pi sqrt(gamma_eq) (1 + gamma_eq))
    let dtheta = -T::one() / (two * T::PI() * geq.sqrt() * (T::one() + geq));
    let dh = ((T::one() - theta) / theta).log2();
    -dh * dtheta * dgeq
}

/// `T_theta(tau) = -tau log2 theta - (1 - tau) log2 (1 - theta)`.
pub fn tilted_cross_entropy<T: Real>(theta: T, tau: T) -> T {
    let term = |p: T, q: T| if p > T::zero() { -p * q.log2() } else { T::zero() };
    term(tau, theta) + term(T::one() - tau, T::one() - theta)
}

/// Low-rate boundary expressed as a message rate: `H_B(sqrt(theta) / (sqrt(theta) + sqrt(1 - theta)))`.
fn critical_message_rate<T: Real>(theta: T) -> T {
    let (a, b) = (theta.sqrt(), (T::one() - theta).sqrt());
    binary_entropy_bits(a / (a + b))
}

/// `I_c(theta) = 1 - H_B(sqrt(theta) / (sqrt(theta) + sqrt(1 - theta)))` in bits.
pub fn critical_key_rate<T: Real>(theta: T) -> T {
    T::one() - critical_message_rate(theta)
}

/// Reliability exponent in bits as a function of the public message rate.
///
/// Zero for `r_m <= H_B(theta)`, `T_theta(tau) - H_B(tau)` with
/// `tau = H_B^-1(r_m)` up to the critical rate, and
/// `r_m - 2 log2(sqrt(theta) + sqrt(1 - theta))` beyond it. A noiseless
/// source (`theta = 0`) has an infinite exponent at every positive rate.
pub fn reliability_exponent_message_rate<T: Real>(r_m: T, theta: T) -> T {
    message_rate_exponent_region(r_m, theta).0
}

fn message_rate_exponent_region<T: Real>(r_m: T, theta: T) -> (T, Region) {
    if !(r_m > binary_entropy_bits(theta)) {
        return (T::zero(), Region::High);
    }
    if theta <= T::zero() {
        return (T::infinity(), Region::Low);
    }
    if r_m > critical_message_rate(theta) {
        let root_sum = theta.sqrt() + (T::one() - theta).sqrt();
        return (r_m - lit::<T>(2.0) * root_sum.log2(), Region::Low);
    }
    let tau = inverse_binary_entropy_bits(r_m);
    (
        (tilted_cross_entropy(theta, tau) - binary_entropy_bits(tau)).max(T::zero()),
        Region::Medium,
    )
}

/// Reliability exponent in bits at key rate `r_sk` bits and symmetric SNR
/// `gamma`, with Eve independent so that `R_M = 1 - R_SK`.
pub fn reliability_exponent<T: Real>(r_sk: T, gamma: T) -> Result<T> {
    check_bits("r_sk", r_sk)?;
    Ok(reliability_exponent_message_rate(T::one() - r_sk, theta_from_snr(gamma)))
}

/// Exponent (bits) and region at key rate `r_sk` bits.
pub fn reliability_exponent_region<T: Real>(r_sk: T, gamma: T) -> Result<(T, Region)> {
    check_bits("r_sk", r_sk)?;
    Ok(message_rate_exponent_region(T::one() - r_sk, theta_from_snr(gamma)))
}

/// `F_0(alpha) = -log2(w^{1+alpha} + (1 - w)^{1+alpha})`.
pub fn secrecy_f0<T: Real>(alpha: T, w: T) -> T {
    let p = T::one() + alpha;
    -(w.powf(p) + (T::one() - w).powf(p)).log2()
}

/// Tilted crossover `delta(alpha) = w^{1+alpha} / (w^{1+alpha} + (1 - w)^{1+alpha})`.
pub fn secrecy_delta<T: Real>(alpha: T, w: T) -> T {
    let p = T::one() + alpha;
    let a = w.powf(p);
    a / (a + (T::one() - w).powf(p))
}

/// Secrecy exponent in bits at sum rate `r_sum = R_SK + R_M` bits.
///
/// Zero above `H_B(w)`, `F_0(1) - r_sum` below `R_c = T_w(delta(1))`, and
/// `F_0(alpha*) - alpha* r_sum` in between, where `T_w(delta(alpha*)) = r_sum`.
///
/// With an independent eavesdropper (`w = 1/2`) the operating point
/// `R_M = 1 - R_SK` has `r_sum = 1 = H_B(w)`, so the exponent there is exactly 0.
pub fn secrecy_exponent<T: Real>(r_sum: T, w: T) -> Result<T> {
    let half = lit::<T>(0.5);
    if !(w > T::zero() && w <= half) {
        return Err(Error::Domain(format!(
            "w = {w} outside (0, 1/2]; w = 0 means Eve observes Alice's sequence"
        )));
    }
    if !(r_sum >= T::zero()) || !r_sum.is_finite() {
        return Err(Error::Domain(format!("r_sum = {r_sum} must be finite and nonnegative")));
    }
    if r_sum >= binary_entropy_bits(w) {
        return Ok(T::zero());
    }
    let slope = |alpha: T| tilted_cross_entropy(w, secrecy_delta(alpha, w));
    let r_c = slope(T::one());
    if r_sum <= r_c {
        return Ok((secrecy_f0(T::one(), w) - r_sum).max(T::zero()));
    }
    let alpha = bracketed_root(|a| slope(a) - r_sum, T::zero(), T::one(), lit(1e-12))?;
    Ok((secrecy_f0(alpha, w) - alpha * r_sum).max(T::zero()))
}

/// Gallager function of DSBS(theta) in nats,
/// `(1 + rho) ln(theta^{1/(1+rho)} + (1 - theta)^{1/(1+rho)})`.
pub fn e0<T: Real>(theta: T, rho: T) -> T {
    let inv = T::one() / (T::one() + rho);
    let pow = |p: T| if p > T::zero() { p.powf(inv) } else { T::zero() };
    ((T::one() + rho) * (pow(theta) + pow(T::one() - theta)).ln()).max(T::zero())
}

/// The quantized model behind [`SnrKeyModel`], in nats at the interface.
#[derive(Debug, Clone, Copy, Default)]
pub struct Binary;

impl<T: Real> SnrKeyModel<T> for Binary {
    fn key_rate(&self, gamma: T) -> T {
        units::bits_to_nats(binary_key_rate(theta_from_snr(gamma)))
    }

    fn key_rate_derivative(&self, gamma: T) -> T {
        units::bits_to_nats(binary_key_rate_derivative(gamma))
    }

    fn reliability_exponent_region(&self, r_sk: T, gamma: T) -> (T, Region) {
        let r_bits = units::nats_to_bits(r_sk);
        if r_bits >= T::one() {
            return (T::zero(), Region::High);
        }
        let (e, region) = message_rate_exponent_region(T::one() - r_bits, theta_from_snr(gamma));
        (units::bits_to_nats(e), region)
    }
}

/// Threshold SNR of the quantized model.
pub fn binary_gamma_c<T: Real>() -> T {
    SnrKeyModel::<T>::gamma_c(&Binary)
}

/// On-off reliability exponent in bits at key rate `r_sk` bits, and the duty cycle.
pub fn onoff_reliability_exponent<T: Real>(r_sk: T, gamma: T) -> Result<(T, T)> {
    check_bits("r_sk", r_sk)?;
    let (e, lambda) = onoff::onoff_reliability_exponent(&Binary, units::bits_to_nats(r_sk), gamma);
    if lambda == T::one() {
        // full duty is the constant signal; skip the unit round trip
        return Ok((reliability_exponent(r_sk, gamma)?, lambda));
    }
    Ok((units::nats_to_bits(e), lambda))
}

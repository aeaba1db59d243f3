//! Rayleigh-fading Gaussian source excited by a known sounding signal.
//!
//! Both terminals observe the same fading coefficient through independent
//! noise, `X_a = H s + N_a`, `X_b = H s + N_b`. Energies are normalized by the
//! noise power `sigma2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{lit, Real};
use crate::onoff::{self, BlockEnergy, Region, SnrKeyModel};

/// SNR pair and noise power of the two-way sounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSystem<T> {
    pub gamma_a: T,
    pub gamma_b: T,
    pub sigma2: T,
}

impl<T: Real> GaussianSystem<T> {
    pub fn new(gamma_a: T, gamma_b: T, sigma2: T) -> Result<Self> {
        if !(gamma_a >= T::zero() && gamma_b >= T::zero()) {
            return Err(Error::Domain(format!(
                "SNRs must be nonnegative (gamma_a = {gamma_a}, gamma_b = {gamma_b})"
            )));
        }
        if !(sigma2 > T::zero()) || !sigma2.is_finite() {
            return Err(Error::Domain(format!("noise power {sigma2} must be positive")));
        }
        Ok(Self { gamma_a, gamma_b, sigma2 })
    }

    /// `gamma_a = gamma_b = gamma`, unit noise power.
    pub fn symmetric(gamma: T) -> Result<Self> {
        Self::new(gamma, gamma, T::one())
    }

    pub fn is_symmetric(&self) -> bool {
        self.gamma_a == self.gamma_b
    }

    /// `(1/gamma_a + 1/gamma_b + 1/(gamma_a gamma_b))^-1`, zero if either SNR is.
    pub fn gamma_eq(&self) -> T {
        let (a, b) = (self.gamma_a, self.gamma_b);
        if a <= T::zero() || b <= T::zero() {
            return T::zero();
        }
        if a.is_infinite() {
            return b;
        }
        if b.is_infinite() {
            return a;
        }
        a * b / (a + b + T::one())
    }

    /// Key rate `ln(1 + gamma_eq)` in nats.
    pub fn i_k(&self) -> T {
        self.gamma_eq().ln_1p()
    }

    /// Equivalent single-link model `X_b = beta X_a + Z`.
    pub fn equivalent_channel(&self) -> EquivalentChannel<T> {
        let p = self.gamma_a * self.sigma2;
        let var_a = self.sigma2;
        let beta = self.gamma_a / (self.gamma_a + T::one());
        let gamma_eq = self.gamma_eq();
        let noise_power = if self.gamma_b <= T::zero() {
            T::infinity()
        } else {
            let var_b = p / self.gamma_b;
            (p + var_b) - p * p / (p + var_a)
        };
        EquivalentChannel {
            beta,
            noise_power,
            signal_power: p + var_a,
            gamma_eq,
        }
    }

    /// Gallager function of the source in nats:
    /// `rho ln(pi sigma2_{a|b}) + (1 + rho) ln(1 + rho)`.
    pub fn e0(&self, rho: T) -> Result<T> {
        if !(rho >= T::zero() && rho <= T::one()) {
            return Err(Error::Domain(format!("rho = {rho} outside [0, 1]")));
        }
        let var_a = (T::one() + self.gamma_a) * self.sigma2;
        let var_ab = var_a / (T::one() + self.gamma_eq());
        Ok(rho * (T::PI() * var_ab).ln() + (T::one() + rho) * rho.ln_1p())
    }

    /// Differential entropy `h(X_a | S)` of the complex Gaussian observation.
    pub fn entropy_a(&self) -> T {
        (T::PI() * T::E() * (T::one() + self.gamma_a) * self.sigma2).ln()
    }
}

/// `X_b = beta X_a + Z` with `Z` independent of `X_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalentChannel<T> {
    pub beta: T,
    /// `E|Z|^2`; infinite when Bob's SNR is zero.
    pub noise_power: T,
    /// `E|X_a|^2`.
    pub signal_power: T,
    pub gamma_eq: T,
}

impl<T: Real> EquivalentChannel<T> {
    /// `beta^2 E|X_a|^2 / E|Z|^2`.
    pub fn recomputed_gamma_eq(&self) -> T {
        if self.noise_power.is_infinite() {
            return T::zero();
        }
        self.beta * self.beta * self.signal_power / self.noise_power
    }
}

/// Duty cycle and on-SNR of an on-off excitation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OnOffSignal<T> {
    pub duty: T,
    pub on_snr: T,
}

impl<T: Real> OnOffSignal<T> {
    /// Spends the average SNR `gamma` in a fraction `duty` of the symbols.
    pub fn new(duty: T, gamma: T) -> Result<Self> {
        if !(duty > T::zero() && duty <= T::one()) {
            return Err(Error::Domain(format!("duty cycle {duty} outside (0, 1]")));
        }
        Ok(Self {
            duty,
            on_snr: gamma / duty,
        })
    }

    pub fn average_snr(&self) -> T {
        self.duty * self.on_snr
    }
}

/// Symmetric `gamma_eq = gamma^2 / (1 + 2 gamma)`.
pub fn gamma_eq<T: Real>(gamma: T) -> T {
    if gamma <= T::zero() {
        return T::zero();
    }
    gamma * gamma / (T::one() + gamma + gamma)
}

/// Symmetric key rate `ln(1 + gamma_eq) = 2 ln(1 + gamma) - ln(1 + 2 gamma)`.
pub fn i_k<T: Real>(gamma: T) -> T {
    if gamma <= T::zero() {
        return T::zero();
    }
    gamma_eq(gamma).ln_1p()
}

/// `d I_K / d gamma = 2 gamma / ((1 + gamma)(1 + 2 gamma))`.
pub fn i_k_derivative<T: Real>(gamma: T) -> T {
    let two = lit::<T>(2.0);
    two * gamma / ((T::one() + gamma) * (T::one() + two * gamma))
}

/// Rate at which the optimal rho reaches 1: `ln((1 + gamma_eq) / 2)`.
pub fn i_c<T: Real>(gamma: T) -> T {
    i_k(gamma) - T::LN_2()
}

/// The Gaussian model behind [`SnrKeyModel`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Gaussian;

impl<T: Real> SnrKeyModel<T> for Gaussian {
    fn key_rate(&self, gamma: T) -> T {
        i_k(gamma)
    }

    fn key_rate_derivative(&self, gamma: T) -> T {
        i_k_derivative(gamma)
    }

    fn reliability_exponent_region(&self, r_sk: T, gamma: T) -> (T, Region) {
        exponent_from_rates(r_sk, i_k(gamma), gamma_eq(gamma))
    }
}

/// Three-region exponent given `I_K` and `gamma_eq` directly.
fn exponent_from_rates<T: Real>(r_sk: T, i_k: T, gamma_eq: T) -> (T, Region) {
    if !(r_sk < i_k) {
        return (T::zero(), Region::High);
    }
    let gap = i_k - r_sk;
    let i_c = i_k - T::LN_2();
    if r_sk < i_c && gamma_eq >= T::one() {
        return (gap + T::one() - lit::<T>(2.0) * T::LN_2(), Region::Low);
    }
    // rho* = e^gap - 1 turns rho*(gap + 1) - (1 + rho*) ln(1 + rho*) into e^gap - 1 - gap
    ((gap.exp_m1() - gap).max(T::zero()), Region::Medium)
}

/// Threshold SNR, the positive root of `I_K(gamma) = gamma I_K'(gamma)` (about 1.535).
pub fn gamma_c<T: Real>() -> T {
    SnrKeyModel::<T>::gamma_c(&Gaussian)
}

/// On-off key capacity and its duty cycle `lambda_c = min(gamma / gamma_c, 1)`.
pub fn capacity<T: Real>(gamma: T) -> (T, T) {
    onoff::capacity(&Gaussian, gamma)
}

/// `(E_b / sigma^2)_min = gamma_c ln 2 / I_K(gamma_c)`.
pub fn min_energy_per_key_bit<T: Real>() -> T {
    onoff::min_energy_per_key_bit::<T, _>(&Gaussian)
}

/// Constant-signal reliability exponent in nats.
pub fn reliability_exponent<T: Real>(r_sk: T, gamma: T) -> T {
    SnrKeyModel::<T>::reliability_exponent(&Gaussian, r_sk, gamma)
}

/// Exponent together with its region.
pub fn reliability_exponent_region<T: Real>(r_sk: T, gamma: T) -> (T, Region) {
    Gaussian.reliability_exponent_region(r_sk, gamma)
}

/// Exponent for an asymmetric system (constant excitation).
pub fn reliability_exponent_system<T: Real>(r_sk: T, sys: &GaussianSystem<T>) -> (T, Region) {
    exponent_from_rates(r_sk, sys.i_k(), sys.gamma_eq())
}

/// Optimal rho of the medium-rate branch, `e^{I_K - r_sk} - 1`, clamped to [0, 1].
pub fn optimal_rho<T: Real>(r_sk: T, gamma: T) -> T {
    (i_k(gamma) - r_sk).exp_m1().max(T::zero()).min(T::one())
}

/// On-off reliability exponent and the maximizing duty cycle.
pub fn onoff_reliability_exponent<T: Real>(r_sk: T, gamma: T) -> (T, T) {
    onoff::onoff_reliability_exponent(&Gaussian, r_sk, gamma)
}

/// Symmetric-SNR Gallager function with unit noise power.
pub fn gaussian_e0<T: Real>(rho: T, gamma: T) -> Result<T> {
    GaussianSystem::symmetric(gamma)?.e0(rho)
}

/// Minimum key energy for `b_key` bits at disagreement probability `epsilon`
/// over the default SNR grid.
pub fn finite_block_energy<T: Real>(b_key: T, epsilon: T, use_onoff: bool) -> Result<BlockEnergy<T>> {
    onoff::finite_block_energy(&Gaussian, b_key, epsilon, use_onoff, &onoff::default_block_grid())
}

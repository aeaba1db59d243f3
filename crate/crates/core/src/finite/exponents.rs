use crate::error::{Error, Result};
use crate::numerics::{lit, maximize_unimodal, xlogx, Real};

use super::model::{ExponentTriple, FiniteEdms, RatePoint, StateDistribution};

/// Argument tolerance for the 1-D searches over rho and alpha.
pub const SEARCH_TOL: f64 = 1e-9;

fn check_unit<T: Real>(name: &str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {x} outside [0, 1]")))
    }
}

fn check_rate<T: Real>(name: &str, x: T) -> Result<()> {
    if x >= T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {x} must be finite and nonnegative")))
    }
}

/// One row of a reliability/secrecy tradeoff sweep.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TradeoffPoint<T> {
    pub r_m: T,
    pub e_r: T,
    pub e_s: T,
}

impl<T: Real> FiniteEdms<T> {
    fn e0_tilde_raw(&self, rho: T, s: usize) -> T {
        let (na, nb, _) = self.alphabet_sizes();
        let ab = self.joint_ab(s);
        let inv = T::one() / (T::one() + rho);
        let mut total = T::zero();
        for b in 0..nb {
            let q: T = (0..na).map(|a| ab[a * nb + b]).sum();
            if q <= T::zero() {
                continue;
            }
            let inner: T = (0..na)
                .map(|a| {
                    let w = ab[a * nb + b] / q;
                    if w > T::zero() {
                        w.powf(inv)
                    } else {
                        T::zero()
                    }
                })
                .sum();
            total = total + q * inner.powf(T::one() + rho);
        }
        total.ln().max(T::zero())
    }

    fn f0_tilde_raw(&self, alpha: T, s: usize) -> T {
        let (na, _, ne) = self.alphabet_sizes();
        let ae = self.joint_ae(s);
        let pow = T::one() + alpha;
        let mut total = T::zero();
        for e in 0..ne {
            let q: T = (0..na).map(|a| ae[a * ne + e]).sum();
            if q <= T::zero() {
                continue;
            }
            let inner: T = (0..na)
                .map(|a| {
                    let v = ae[a * ne + e] / q;
                    if v > T::zero() {
                        v.powf(pow)
                    } else {
                        T::zero()
                    }
                })
                .sum();
            total = total + q * inner;
        }
        (-total.ln()).max(T::zero())
    }

    fn weighted(&self, p_s: &StateDistribution<T>, f: impl Fn(usize) -> T) -> T {
        p_s.support().map(|(s, p)| p * f(s)).sum()
    }

    /// Per-state Gallager source-coding function
    /// `ln sum_b Q_s(b) (sum_a W_s(a|b)^{1/(1+rho)})^{1+rho}`.
    pub fn e0_tilde(&self, rho: T, s: usize) -> Result<T> {
        check_unit("rho", rho)?;
        self.check_state(s)?;
        Ok(self.e0_tilde_raw(rho, s))
    }

    /// `sum_s p_S(s) e0_tilde(rho, s)`.
    pub fn e0(&self, p_s: &StateDistribution<T>, rho: T) -> Result<T> {
        check_unit("rho", rho)?;
        p_s.check_len(self)?;
        Ok(self.weighted(p_s, |s| self.e0_tilde_raw(rho, s)))
    }

    /// Per-state secrecy function `-ln sum_e Q~_s(e) sum_a V_s(a|e)^{1+alpha}`.
    pub fn f0_tilde(&self, alpha: T, s: usize) -> Result<T> {
        check_unit("alpha", alpha)?;
        self.check_state(s)?;
        Ok(self.f0_tilde_raw(alpha, s))
    }

    /// `sum_s p_S(s) f0_tilde(alpha, s)`.
    pub fn f0(&self, p_s: &StateDistribution<T>, alpha: T) -> Result<T> {
        check_unit("alpha", alpha)?;
        p_s.check_len(self)?;
        Ok(self.weighted(p_s, |s| self.f0_tilde_raw(alpha, s)))
    }

    /// Reliability exponent `max_{rho in [0,1]} rho r_m - e0(rho)`.
    pub fn reliability_exponent(&self, p_s: &StateDistribution<T>, r_m: T) -> Result<T> {
        check_rate("r_m", r_m)?;
        p_s.check_len(self)?;
        Ok(self.reliability_exponent_with_rho(p_s, r_m).1)
    }

    /// Like [`FiniteEdms::reliability_exponent`] but also returns the optimal rho.
    pub fn reliability_exponent_with_rho(&self, p_s: &StateDistribution<T>, r_m: T) -> (T, T) {
        let (rho, v) = maximize_unimodal(
            |rho| rho * r_m - self.weighted(p_s, |s| self.e0_tilde_raw(rho, s)),
            T::zero(),
            T::one(),
            lit(SEARCH_TOL),
        );
        (rho, v.max(T::zero()))
    }

    /// Secrecy exponent `max_{alpha in [0,1]} f0(alpha) - alpha (r_m + r_sk)`.
    pub fn secrecy_exponent(&self, p_s: &StateDistribution<T>, rates: RatePoint<T>) -> Result<T> {
        check_rate("r_sk", rates.r_sk)?;
        check_rate("r_m", rates.r_m)?;
        p_s.check_len(self)?;
        Ok(self.secrecy_exponent_sum(p_s, rates.sum()))
    }

    pub(crate) fn secrecy_exponent_sum(&self, p_s: &StateDistribution<T>, r_sum: T) -> T {
        let (_, v) = maximize_unimodal(
            |alpha| self.weighted(p_s, |s| self.f0_tilde_raw(alpha, s)) - alpha * r_sum,
            T::zero(),
            T::one(),
            lit(SEARCH_TOL),
        );
        v.max(T::zero())
    }

    /// Both exponents at one rate point.
    pub fn exponent_triple(
        &self,
        p_s: &StateDistribution<T>,
        rates: RatePoint<T>,
    ) -> Result<ExponentTriple<T>> {
        Ok(ExponentTriple {
            r_sk: rates.r_sk,
            e_r: self.reliability_exponent(p_s, rates.r_m)?,
            e_s: self.secrecy_exponent(p_s, rates)?,
        })
    }

    /// `H(X_a | X_b, S = s)` in nats.
    pub fn state_entropy_ab(&self, s: usize) -> Result<T> {
        self.check_state(s)?;
        let (na, nb, _) = self.alphabet_sizes();
        Ok(cond_entropy(self.joint_ab(s), na, nb))
    }

    /// `H(X_a | X_e, S = s)` in nats.
    pub fn state_entropy_ae(&self, s: usize) -> Result<T> {
        self.check_state(s)?;
        let (na, _, ne) = self.alphabet_sizes();
        Ok(cond_entropy(self.joint_ae(s), na, ne))
    }

    /// `H(X_a | X_b, X_e, S = s)` in nats.
    pub fn state_entropy_abe(&self, s: usize) -> Result<T> {
        self.check_state(s)?;
        let (na, nb, ne) = self.alphabet_sizes();
        // (x_b, x_e) flattened into one conditioning symbol
        Ok(cond_entropy(self.table(s)?, na, nb * ne))
    }

    /// `H(X_a | S = s)` in nats.
    pub fn state_entropy_a(&self, s: usize) -> Result<T> {
        self.check_state(s)?;
        let (na, nb, _) = self.alphabet_sizes();
        let ab = self.joint_ab(s);
        Ok((0..na)
            .map(|a| -xlogx((0..nb).map(|b| ab[a * nb + b]).sum::<T>()))
            .sum())
    }

    /// `I(X_a; X_b | S = s)`.
    pub fn state_mi_ab(&self, s: usize) -> Result<T> {
        Ok((self.state_entropy_a(s)? - self.state_entropy_ab(s)?).max(T::zero()))
    }

    /// `I(X_a; X_e | S = s)`.
    pub fn state_mi_ae(&self, s: usize) -> Result<T> {
        Ok((self.state_entropy_a(s)? - self.state_entropy_ae(s)?).max(T::zero()))
    }

    /// `I(X_a; X_b | X_e, S = s)`.
    pub fn state_mi_ab_given_e(&self, s: usize) -> Result<T> {
        Ok((self.state_entropy_ae(s)? - self.state_entropy_abe(s)?).max(T::zero()))
    }

    /// `H(X_a | X_b, S)` under `p_s`.
    pub fn conditional_entropy_ab(&self, p_s: &StateDistribution<T>) -> Result<T> {
        p_s.check_len(self)?;
        let (na, nb, _) = self.alphabet_sizes();
        Ok(self.weighted(p_s, |s| cond_entropy(self.joint_ab(s), na, nb)))
    }

    /// `H(X_a | X_e, S)` under `p_s`.
    pub fn conditional_entropy_ae(&self, p_s: &StateDistribution<T>) -> Result<T> {
        p_s.check_len(self)?;
        let (na, _, ne) = self.alphabet_sizes();
        Ok(self.weighted(p_s, |s| cond_entropy(self.joint_ae(s), na, ne)))
    }

    /// `(r_m, E_R(r_m), E_S(r_m, r_sk))` for every `r_m` in an ascending grid.
    pub fn tradeoff_surface(
        &self,
        p_s: &StateDistribution<T>,
        r_sk: T,
        r_m_grid: &[T],
    ) -> Result<Vec<TradeoffPoint<T>>> {
        check_rate("r_sk", r_sk)?;
        p_s.check_len(self)?;
        if r_m_grid.is_empty() {
            return Err(Error::Domain("r_m grid is empty".into()));
        }
        if r_m_grid.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::Domain("r_m grid must be ascending".into()));
        }
        r_m_grid
            .iter()
            .map(|&r_m| {
                check_rate("r_m", r_m)?;
                Ok(TradeoffPoint {
                    r_m,
                    e_r: self.reliability_exponent_with_rho(p_s, r_m).1,
                    e_s: self.secrecy_exponent_sum(p_s, r_m + r_sk),
                })
            })
            .collect()
    }
}

/// `H(row | col)` for a joint laid out `[row][col]`.
fn cond_entropy<T: Real>(joint: &[T], rows: usize, cols: usize) -> T {
    let mut h = T::zero();
    for c in 0..cols {
        let q: T = (0..rows).map(|r| joint[r * cols + c]).sum();
        if q <= T::zero() {
            continue;
        }
        for r in 0..rows {
            let p = joint[r * cols + c];
            if p > T::zero() {
                h = h - p * (p / q).ln();
            }
        }
    }
    h.max(T::zero())
}

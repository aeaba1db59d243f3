use crate::error::{Error, Result};
use crate::numerics::{lit, maximize_unimodal, Real};

use super::exponents::SEARCH_TOL;
use super::model::{FiniteEdms, StateDistribution};

/// Optimum of a state-distribution design problem.
#[derive(Debug, Clone, PartialEq)]
pub struct StateOptimum<T> {
    pub value: T,
    pub distribution: StateDistribution<T>,
}

/// Optimum of the joint `(p_S, rho)` exponent problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentOptimum<T> {
    pub value: T,
    pub rho: T,
    pub distribution: StateDistribution<T>,
}

impl<T: Real> FiniteEdms<T> {
    /// Vertices of `{p in simplex : sum_s p(s) c(s) <= budget}`.
    ///
    /// Those are the point masses on affordable states plus, for every pair
    /// with `c_s <= budget < c_t`, the mixture that spends the budget exactly.
    /// Any linear objective attains its maximum at one of them.
    pub fn budget_vertices(&self, cost_budget: T) -> Result<Vec<StateDistribution<T>>> {
        if cost_budget.is_nan() || cost_budget < T::zero() {
            return Err(Error::Domain(format!("cost budget {cost_budget} must be nonnegative")));
        }
        let k = self.num_states();
        let costs = self.costs();
        let mut out = Vec::new();
        for s in 0..k {
            if costs[s] <= cost_budget {
                let mut mass = vec![T::zero(); k];
                mass[s] = T::one();
                out.push(StateDistribution::from_parts_unchecked(mass, cost_budget));
            }
        }
        if out.is_empty() {
            return Err(Error::Infeasible(format!(
                "every state costs more than the budget {cost_budget}"
            )));
        }
        for s in 0..k {
            for t in 0..k {
                if costs[s] <= cost_budget && costs[t] > cost_budget && costs[s] < costs[t] {
                    let lambda = (costs[t] - cost_budget) / (costs[t] - costs[s]);
                    let mut mass = vec![T::zero(); k];
                    mass[s] = lambda;
                    mass[t] = T::one() - lambda;
                    out.push(StateDistribution::from_parts_unchecked(mass, cost_budget));
                }
            }
        }
        Ok(out)
    }

    fn maximize_linear(&self, cost_budget: T, per_state: &[T]) -> Result<StateOptimum<T>> {
        let mut best: Option<StateOptimum<T>> = None;
        for dist in self.budget_vertices(cost_budget)? {
            let value: T = dist.support().map(|(s, p)| p * per_state[s]).sum();
            if best.as_ref().map_or(true, |b| value > b.value) {
                best = Some(StateOptimum { value, distribution: dist });
            }
        }
        Ok(best.expect("vertex set is nonempty"))
    }

    /// Secret-key capacity when Eve is degraded with respect to Bob:
    /// `max_{p_S} sum_s p_S(s) [I(X_a;X_b|s) - I(X_a;X_e|s)]^+`.
    pub fn degraded_capacity(&self, cost_budget: T) -> Result<StateOptimum<T>> {
        let rates = (0..self.num_states())
            .map(|s| Ok((self.state_mi_ab(s)? - self.state_mi_ae(s)?).max(T::zero())))
            .collect::<Result<Vec<_>>>()?;
        self.maximize_linear(cost_budget, &rates)
    }

    /// Upper bound `max_{p_S} I(X_a; X_b | X_e, S)` on the key capacity.
    pub fn capacity_upper_bound(&self, cost_budget: T) -> Result<StateOptimum<T>> {
        let rates = (0..self.num_states())
            .map(|s| self.state_mi_ab_given_e(s))
            .collect::<Result<Vec<_>>>()?;
        self.maximize_linear(cost_budget, &rates)
    }

    /// `max_{p_S, rho} rho [H(X_a|X_e,S) - r_sk] - E_0(rho, p_S)`.
    ///
    /// For fixed rho the objective is linear in `p_S`, so the joint optimum
    /// sits on a budget vertex; each vertex is solved exactly in rho.
    pub fn optimized_reliability_exponent(&self, cost_budget: T, r_sk: T) -> Result<ExponentOptimum<T>> {
        if !(r_sk >= T::zero()) || !r_sk.is_finite() {
            return Err(Error::Domain(format!("r_sk = {r_sk} must be finite and nonnegative")));
        }
        let h_ae = (0..self.num_states())
            .map(|s| self.state_entropy_ae(s))
            .collect::<Result<Vec<_>>>()?;
        let mut best: Option<ExponentOptimum<T>> = None;
        for dist in self.budget_vertices(cost_budget)? {
            let h: T = dist.support().map(|(s, p)| p * h_ae[s]).sum();
            let slope = h - r_sk;
            let (rho, value) = maximize_unimodal(
                |rho| rho * slope - self.e0(&dist, rho).unwrap_or(T::infinity()),
                T::zero(),
                T::one(),
                lit(SEARCH_TOL),
            );
            let value = value.max(T::zero());
            if best.as_ref().map_or(true, |b| value > b.value) {
                best = Some(ExponentOptimum { value, rho, distribution: dist });
            }
        }
        Ok(best.expect("vertex set is nonempty"))
    }
}

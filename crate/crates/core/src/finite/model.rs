use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{lit, Real};

/// Finite-alphabet excited distributed memoryless source.
///
/// For every state `s` the table holds `p(x_a, x_b, x_e | s)` in row-major
/// order `[x_a][x_b][x_e]`. Each state also carries the nonnegative cost of
/// exciting the source with that symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteEdms<T> {
    states: Vec<String>,
    x_a: Vec<String>,
    x_b: Vec<String>,
    x_e: Vec<String>,
    tables: Vec<Vec<T>>,
    costs: Vec<T>,
    degraded: bool,
    // cached pairwise marginals per state
    ab: Vec<Vec<T>>,
    ae: Vec<Vec<T>>,
}

impl<T: Real> FiniteEdms<T> {
    /// Builds a model with labelled alphabets, validating every table.
    pub fn new(
        states: Vec<String>,
        x_a: Vec<String>,
        x_b: Vec<String>,
        x_e: Vec<String>,
        tables: Vec<Vec<T>>,
        costs: Vec<T>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidModel("state alphabet is empty".into()));
        }
        if x_a.is_empty() || x_b.is_empty() || x_e.is_empty() {
            return Err(Error::InvalidModel("source alphabets must be nonempty".into()));
        }
        if tables.len() != states.len() {
            return Err(Error::InvalidModel(format!(
                "{} tables for {} states",
                tables.len(),
                states.len()
            )));
        }
        if costs.len() != states.len() {
            return Err(Error::InvalidModel(format!(
                "{} costs for {} states",
                costs.len(),
                states.len()
            )));
        }
        let cells = x_a.len() * x_b.len() * x_e.len();
        let tol = T::prob_tol();
        for (s, table) in tables.iter().enumerate() {
            if table.len() != cells {
                return Err(Error::InvalidModel(format!(
                    "state `{}` table has {} entries, expected {cells}",
                    states[s],
                    table.len()
                )));
            }
            if let Some(bad) = table.iter().find(|p| !p.is_finite() || **p < T::zero()) {
                return Err(Error::InvalidModel(format!(
                    "state `{}` has invalid probability {bad}",
                    states[s]
                )));
            }
            let total: T = table.iter().copied().sum();
            if (total - T::one()).abs() > tol {
                return Err(Error::InvalidModel(format!(
                    "state `{}` table sums to {total}",
                    states[s]
                )));
            }
        }
        if let Some(bad) = costs.iter().find(|c| c.is_nan() || **c < T::zero()) {
            return Err(Error::InvalidModel(format!("invalid state cost {bad}")));
        }

        let (na, nb, ne) = (x_a.len(), x_b.len(), x_e.len());
        let ab = tables
            .iter()
            .map(|t| {
                let mut m = vec![T::zero(); na * nb];
                for a in 0..na {
                    for b in 0..nb {
                        m[a * nb + b] = (0..ne).map(|e| t[(a * nb + b) * ne + e]).sum();
                    }
                }
                m
            })
            .collect();
        let ae = tables
            .iter()
            .map(|t| {
                let mut m = vec![T::zero(); na * ne];
                for a in 0..na {
                    for e in 0..ne {
                        m[a * ne + e] = (0..nb).map(|b| t[(a * nb + b) * ne + e]).sum();
                    }
                }
                m
            })
            .collect();

        Ok(Self {
            states,
            x_a,
            x_b,
            x_e,
            tables,
            costs,
            degraded: false,
            ab,
            ae,
        })
    }

    /// Builds a model with numeric labels `0..n` for every alphabet.
    pub fn from_tables(
        sizes: (usize, usize, usize),
        tables: Vec<Vec<T>>,
        costs: Vec<T>,
    ) -> Result<Self> {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let states = (0..tables.len()).map(|i| format!("s{i}")).collect();
        Self::new(
            states,
            labels(sizes.0),
            labels(sizes.1),
            labels(sizes.2),
            tables,
            costs,
        )
    }

    /// Declares whether `X_a - X_b - X_e` is a Markov chain in every state.
    ///
    /// The flag is trusted, not inferred; see [`FiniteEdms::is_degraded`].
    pub fn with_degraded(mut self, degraded: bool) -> Self {
        self.degraded = degraded;
        self
    }

    pub fn declared_degraded(&self) -> bool {
        self.degraded
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_labels(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet_sizes(&self) -> (usize, usize, usize) {
        (self.x_a.len(), self.x_b.len(), self.x_e.len())
    }

    pub fn alphabets(&self) -> (&[String], &[String], &[String]) {
        (&self.x_a, &self.x_b, &self.x_e)
    }

    pub fn costs(&self) -> &[T] {
        &self.costs
    }

    pub fn cost(&self, s: usize) -> Result<T> {
        self.check_state(s)?;
        Ok(self.costs[s])
    }

    /// Row-major joint table `p(x_a, x_b, x_e | s)`.
    pub fn table(&self, s: usize) -> Result<&[T]> {
        self.check_state(s)?;
        Ok(&self.tables[s])
    }

    pub fn prob(&self, s: usize, a: usize, b: usize, e: usize) -> T {
        let (_, nb, ne) = self.alphabet_sizes();
        self.tables[s][(a * nb + b) * ne + e]
    }

    pub(crate) fn check_state(&self, s: usize) -> Result<()> {
        if s < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState {
                index: s,
                len: self.states.len(),
            })
        }
    }

    /// Joint `p(x_a, x_b | s)` in row-major `[x_a][x_b]` order.
    pub(crate) fn joint_ab(&self, s: usize) -> &[T] {
        &self.ab[s]
    }

    /// Joint `p(x_a, x_e | s)` in row-major `[x_a][x_e]` order.
    pub(crate) fn joint_ae(&self, s: usize) -> &[T] {
        &self.ae[s]
    }

    /// Bob's marginal `Q_s(x_b)`.
    pub fn q_b(&self, s: usize) -> Result<Vec<T>> {
        self.check_state(s)?;
        let (na, nb, _) = self.alphabet_sizes();
        let ab = self.joint_ab(s);
        Ok((0..nb).map(|b| (0..na).map(|a| ab[a * nb + b]).sum()).collect())
    }

    /// Eve's marginal `Q~_s(x_e)`.
    pub fn q_e(&self, s: usize) -> Result<Vec<T>> {
        self.check_state(s)?;
        let (na, _, ne) = self.alphabet_sizes();
        let ae = self.joint_ae(s);
        Ok((0..ne).map(|e| (0..na).map(|a| ae[a * ne + e]).sum()).collect())
    }

    /// `W_s(x_a | x_b)` as a `[x_a][x_b]` matrix; columns with zero mass are zero.
    pub fn w(&self, s: usize) -> Result<Vec<T>> {
        let q = self.q_b(s)?;
        let (na, nb, _) = self.alphabet_sizes();
        let ab = self.joint_ab(s);
        Ok(conditional(ab, &q, na, nb))
    }

    /// `V_s(x_a | x_e)` as a `[x_a][x_e]` matrix; columns with zero mass are zero.
    pub fn v(&self, s: usize) -> Result<Vec<T>> {
        let q = self.q_e(s)?;
        let (na, _, ne) = self.alphabet_sizes();
        let ae = self.joint_ae(s);
        Ok(conditional(ae, &q, na, ne))
    }

    /// Checks the Markov factorization `p(a,b,e) p(b) = p(a,b) p(b,e)` in every
    /// state, within `tol`.
    pub fn is_degraded(&self, tol: T) -> bool {
        let (na, nb, ne) = self.alphabet_sizes();
        (0..self.num_states()).all(|s| {
            let ab = self.joint_ab(s);
            (0..nb).all(|b| {
                let pb: T = (0..na).map(|a| ab[a * nb + b]).sum();
                (0..ne).all(|e| {
                    let pbe: T = (0..na).map(|a| self.prob(s, a, b, e)).sum();
                    (0..na).all(|a| (self.prob(s, a, b, e) * pb - ab[a * nb + b] * pbe).abs() <= tol)
                })
            })
        })
    }
}

fn conditional<T: Real>(joint: &[T], marginal: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut m = vec![T::zero(); rows * cols];
    for (c, &q) in marginal.iter().enumerate() {
        if q > T::zero() {
            for r in 0..rows {
                m[r * cols + c] = joint[r * cols + c] / q;
            }
        }
    }
    m
}

/// Probability mass over excitation states together with the expected-cost
/// budget it was chosen under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDistribution<T> {
    mass: Vec<T>,
    cost_budget: T,
}

impl<T: Real> StateDistribution<T> {
    /// Validates `mass` against `model` (length, normalization, budget).
    pub fn new(model: &FiniteEdms<T>, mass: Vec<T>, cost_budget: T) -> Result<Self> {
        if mass.len() != model.num_states() {
            return Err(Error::StateMismatch {
                expected: model.num_states(),
                got: mass.len(),
            });
        }
        if cost_budget.is_nan() || cost_budget < T::zero() {
            return Err(Error::Domain(format!("cost budget {cost_budget} must be nonnegative")));
        }
        if let Some(bad) = mass.iter().find(|p| !p.is_finite() || **p < T::zero() || **p > T::one()) {
            return Err(Error::Domain(format!("state mass {bad} outside [0, 1]")));
        }
        let total: T = mass.iter().copied().sum();
        if (total - T::one()).abs() > T::prob_tol() {
            return Err(Error::Domain(format!("state masses sum to {total}")));
        }
        let dist = Self { mass, cost_budget };
        let cost = dist.expected_cost(model);
        if cost > cost_budget + T::prob_tol() {
            return Err(Error::Infeasible(format!(
                "expected cost {cost} exceeds budget {cost_budget}"
            )));
        }
        Ok(dist)
    }

    /// Point mass on state `s` with an unbounded budget.
    pub fn point(model: &FiniteEdms<T>, s: usize) -> Result<Self> {
        model.check_state(s)?;
        let mut mass = vec![T::zero(); model.num_states()];
        mass[s] = T::one();
        Self::new(model, mass, T::infinity())
    }

    /// Uniform mass with an unbounded budget.
    pub fn uniform(model: &FiniteEdms<T>) -> Self {
        let k = model.num_states();
        let p = T::one() / T::from_usize(k).unwrap();
        Self {
            mass: vec![p; k],
            cost_budget: T::infinity(),
        }
    }

    pub(crate) fn from_parts_unchecked(mass: Vec<T>, cost_budget: T) -> Self {
        Self { mass, cost_budget }
    }

    pub fn mass(&self) -> &[T] {
        &self.mass
    }

    pub fn cost_budget(&self) -> T {
        self.cost_budget
    }

    pub fn expected_cost(&self, model: &FiniteEdms<T>) -> T {
        self.mass
            .iter()
            .zip(model.costs())
            .filter(|(p, _)| **p > T::zero())
            .map(|(p, c)| *p * *c)
            .sum()
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: T) -> Result<Self> {
        if self.mass.len() != other.mass.len() {
            return Err(Error::StateMismatch {
                expected: self.mass.len(),
                got: other.mass.len(),
            });
        }
        let mass = self
            .mass
            .iter()
            .zip(&other.mass)
            .map(|(a, b)| lambda * *a + (T::one() - lambda) * *b)
            .collect();
        Ok(Self {
            mass,
            cost_budget: self.cost_budget.max(other.cost_budget),
        })
    }

    pub(crate) fn check_len(&self, model: &FiniteEdms<T>) -> Result<()> {
        if self.mass.len() == model.num_states() {
            Ok(())
        } else {
            Err(Error::StateMismatch {
                expected: model.num_states(),
                got: self.mass.len(),
            })
        }
    }

    /// `(state, mass)` pairs with positive mass.
    pub(crate) fn support(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > T::zero())
            .map(|(s, p)| (s, *p))
    }
}

/// Secret-key and public-message rates, nats per symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint<T> {
    pub r_sk: T,
    pub r_m: T,
}

impl<T: Real> RatePoint<T> {
    pub fn new(r_sk: T, r_m: T) -> Result<Self> {
        if !(r_sk >= T::zero() && r_m >= T::zero()) || !r_sk.is_finite() || !r_m.is_finite() {
            return Err(Error::Domain(format!(
                "rates must be finite and nonnegative (r_sk = {r_sk}, r_m = {r_m})"
            )));
        }
        Ok(Self { r_sk, r_m })
    }

    pub fn sum(&self) -> T {
        self.r_sk + self.r_m
    }
}

/// `(R_SK, E_R, E_S)` in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple<T> {
    pub r_sk: T,
    pub e_r: T,
    pub e_s: T,
}

/// Binary symmetric helper: `1 - p` on the diagonal, `p` off it.
pub(crate) fn bsc<T: Real>(p: T, x: usize, y: usize) -> T {
    if x == y {
        T::one() - p
    } else {
        p
    }
}

impl<T: Real> FiniteEdms<T> {
    /// Single-state binary model: `X_a` uniform, `X_b = X_a xor Bern(theta)`,
    /// `X_e = X_a xor Bern(w)` with the two flips independent. `w = 1/2`
    /// makes Eve independent.
    pub fn binary_symmetric(theta: T, w: T, cost: T) -> Result<Self> {
        Self::binary_symmetric_states(&[(theta, w, cost)])
    }

    /// Multi-state variant of [`FiniteEdms::binary_symmetric`]: one
    /// `(theta, w, cost)` triple per state.
    pub fn binary_symmetric_states(params: &[(T, T, T)]) -> Result<Self> {
        let half = lit::<T>(0.5);
        let tables = params
            .iter()
            .map(|&(theta, w, _)| {
                let mut t = Vec::with_capacity(8);
                for a in 0..2 {
                    for b in 0..2 {
                        for e in 0..2 {
                            t.push(half * bsc(theta, a, b) * bsc(w, a, e));
                        }
                    }
                }
                t
            })
            .collect();
        let costs = params.iter().map(|p| p.2).collect();
        Ok(Self::from_tables((2, 2, 2), tables, costs)?.with_degraded(false))
    }
}

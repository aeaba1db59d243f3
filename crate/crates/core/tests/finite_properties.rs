use edms_core::{FiniteEdms, RatePoint, StateDistribution};
use proptest::prelude::*;

const STEP: f64 = 1e-5;

/// Random model with entries bounded away from zero.
fn model_strategy() -> impl Strategy<Value = FiniteEdms<f64>> {
    (2usize..=4, 1usize..=4, 1usize..=4, 1usize..=3).prop_flat_map(|(na, nb, ne, k)| {
        let cells = na * nb * ne;
        (
            prop::collection::vec(prop::collection::vec(0.05f64..1.0, cells), k),
            prop::collection::vec(0.0f64..3.0, k),
        )
            .prop_map(move |(raw, costs)| {
                let tables = raw
                    .into_iter()
                    .map(|t| {
                        let total: f64 = t.iter().sum();
                        t.into_iter().map(|p| p / total).collect()
                    })
                    .collect();
                FiniteEdms::from_tables((na, nb, ne), tables, costs).unwrap()
            })
    })
}

fn mixture_strategy() -> impl Strategy<Value = (FiniteEdms<f64>, Vec<f64>, Vec<f64>, f64)> {
    model_strategy().prop_flat_map(|m| {
        let k = m.num_states();
        (
            Just(m),
            prop::collection::vec(0.01f64..1.0, k),
            prop::collection::vec(0.01f64..1.0, k),
            0.0f64..=1.0,
        )
    })
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let t: f64 = v.iter().sum();
    v.iter().map(|x| x / t).collect()
}

/// Second-order one-sided derivative at 0 for a function vanishing there.
fn slope_at_zero(f: impl Fn(f64) -> f64) -> f64 {
    (-3.0 * f(0.0) + 4.0 * f(STEP) - f(2.0 * STEP)) / (2.0 * STEP)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    #[test]
    fn gallager_function_is_convex_increasing(m in model_strategy()) {
        let grid: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
        for s in 0..m.num_states() {
            let v: Vec<f64> = grid.iter().map(|&r| m.e0_tilde(r, s).unwrap()).collect();
            prop_assert!(v[0].abs() < 1e-14);
            for w in v.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-9);
            }
            for w in v.windows(3) {
                prop_assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-7);
            }
            let slope = slope_at_zero(|r| m.e0_tilde(r, s).unwrap());
            let h = m.state_entropy_ab(s).unwrap();
            prop_assert!((slope - h).abs() < 1e-4, "slope {} vs H {}", slope, h);
        }
    }

    #[test]
    fn secrecy_function_is_concave_increasing(m in model_strategy()) {
        let grid: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
        for s in 0..m.num_states() {
            let v: Vec<f64> = grid.iter().map(|&a| m.f0_tilde(a, s).unwrap()).collect();
            prop_assert!(v[0].abs() < 1e-14);
            for w in v.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-9);
            }
            for w in v.windows(3) {
                prop_assert!(w[0] - 2.0 * w[1] + w[2] <= 1e-7);
            }
            let slope = slope_at_zero(|a| m.f0_tilde(a, s).unwrap());
            let h = m.state_entropy_ae(s).unwrap();
            prop_assert!((slope - h).abs() < 1e-4, "slope {} vs H {}", slope, h);
        }
    }

    #[test]
    fn gallager_and_secrecy_functions_are_linear_in_mass(
        (m, p1, p2, lambda) in mixture_strategy(),
        rho in 0.0f64..=1.0,
    ) {
        let p1 = StateDistribution::new(&m, normalize(&p1), f64::INFINITY).unwrap();
        let p2 = StateDistribution::new(&m, normalize(&p2), f64::INFINITY).unwrap();
        let mix = p1.mix(&p2, lambda).unwrap();
        let lin = |f: &dyn Fn(&StateDistribution<f64>) -> f64| {
            (f(&mix) - (lambda * f(&p1) + (1.0 - lambda) * f(&p2))).abs()
        };
        prop_assert!(lin(&|p| m.e0(p, rho).unwrap()) < 1e-12);
        prop_assert!(lin(&|p| m.f0(p, rho).unwrap()) < 1e-12);
    }

    #[test]
    fn reliability_exponent_is_convex_nondecreasing(m in model_strategy(), top in 0.1f64..3.0) {
        let p = StateDistribution::uniform(&m);
        let v: Vec<f64> = (0..60)
            .map(|i| m.reliability_exponent(&p, top * i as f64 / 59.0).unwrap())
            .collect();
        for w in v.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-9);
        }
        for w in v.windows(3) {
            prop_assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-7);
        }
        prop_assert!(v.iter().all(|e| *e >= 0.0));
    }

    #[test]
    fn secrecy_exponent_depends_on_sum_rate(
        m in model_strategy(),
        sum in 0.0f64..2.0,
        split in 0.0f64..=1.0,
        extra in 0.0f64..0.5,
    ) {
        let p = StateDistribution::uniform(&m);
        let a = m.secrecy_exponent(&p, RatePoint::new(split * sum, (1.0 - split) * sum).unwrap()).unwrap();
        let b = m.secrecy_exponent(&p, RatePoint::new(sum, 0.0).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        let c = m.secrecy_exponent(&p, RatePoint::new(sum + extra, 0.0).unwrap()).unwrap();
        prop_assert!(c <= b + 1e-12);
    }

    #[test]
    fn strong_achievability_region(m in model_strategy(), u in 0.05f64..0.95, v in 0.05f64..0.95) {
        let p = StateDistribution::uniform(&m);
        let h_ab = m.conditional_entropy_ab(&p).unwrap();
        let h_ae = m.conditional_entropy_ae(&p).unwrap();
        prop_assume!(h_ae - h_ab > 1e-3);
        // r_m strictly between the thresholds, r_sk filling part of the gap
        let r_m = h_ab + u * (h_ae - h_ab);
        let r_sk = v * (h_ae - r_m);
        let t = m.exponent_triple(&p, RatePoint::new(r_sk, r_m).unwrap()).unwrap();
        prop_assert!(t.e_r > 0.0, "E_R = {} at r_m = {} (H = {})", t.e_r, r_m, h_ab);
        prop_assert!(t.e_s > 0.0, "E_S = {}", t.e_s);
    }

    #[test]
    fn exponents_vanish_outside_thresholds(m in model_strategy(), shrink in 0.0f64..=1.0, grow in 0.0f64..1.0) {
        let p = StateDistribution::uniform(&m);
        let h_ab = m.conditional_entropy_ab(&p).unwrap();
        let h_ae = m.conditional_entropy_ae(&p).unwrap();
        prop_assert!(m.reliability_exponent(&p, shrink * h_ab).unwrap() < 1e-12);
        prop_assert!(m.secrecy_exponent(&p, RatePoint::new(h_ae + grow, 0.0).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn capacity_ordering(m in model_strategy(), budget in 0.0f64..3.0) {
        let m = m.with_degraded(true);
        let Ok(cap) = m.degraded_capacity(budget) else {
            prop_assert!(m.costs().iter().all(|&c| c > budget));
            return Ok(());
        };
        for s in 0..m.num_states() {
            if m.cost(s).unwrap() <= budget {
                let rate = (m.state_mi_ab(s).unwrap() - m.state_mi_ae(s).unwrap()).max(0.0);
                prop_assert!(cap.value >= rate - 1e-12);
            }
        }
        prop_assert!(cap.distribution.expected_cost(&m) <= budget + 1e-12);
        // the upper bound dominates on models that really are degraded
        if m.is_degraded(1e-9) {
            prop_assert!(m.capacity_upper_bound(budget).unwrap().value >= cap.value - 1e-12);
        }
    }
}

/// Degraded model: Eve sees Bob's output through a BSC.
fn degraded_chain(theta: f64, eve: f64) -> Vec<f64> {
    let bsc = |p: f64, x: usize, y: usize| if x == y { 1.0 - p } else { p };
    let mut t = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for e in 0..2 {
                t.push(0.5 * bsc(theta, a, b) * bsc(eve, b, e));
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, .. ProptestConfig::default() })]

    #[test]
    fn degraded_capacity_bounded_by_conditional_information(
        theta in 0.01f64..0.45,
        eve in 0.01f64..0.45,
        theta2 in 0.01f64..0.45,
        cost in 0.5f64..4.0,
        budget in 0.0f64..4.0,
    ) {
        let m = FiniteEdms::from_tables(
            (2, 2, 2),
            vec![vec![0.125; 8], degraded_chain(theta, eve), degraded_chain(theta2, eve)],
            vec![0.0, cost, 0.3 * cost],
        )
        .unwrap()
        .with_degraded(true);
        prop_assert!(m.is_degraded(1e-9));
        let cap = m.degraded_capacity(budget).unwrap().value;
        let upper = m.capacity_upper_bound(budget).unwrap().value;
        prop_assert!(cap <= upper + 1e-12);
    }
}

#[test]
fn mixture_of_distinct_states_matches_direct_sum() {
    let bsc = |p: f64, x: usize, y: usize| if x == y { 1.0 - p } else { p };
    let table = |theta: f64, w: f64| {
        let mut t = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for e in 0..2 {
                    t.push(0.5 * bsc(theta, a, b) * bsc(w, a, e));
                }
            }
        }
        t
    };
    let m = FiniteEdms::from_tables((2, 2, 2), vec![table(0.05, 0.3), table(0.2, 0.1)], vec![0.0, 1.0]).unwrap();
    let p = StateDistribution::new(&m, vec![0.4, 0.6], 1.0).unwrap();
    let rho: f64 = 0.7;
    // direct evaluation from the joint tables, no conditionals
    let direct_e0 = |theta: f64| {
        let inner = (0.5 * (1.0 - theta)).powf(1.0 / (1.0 + rho)) + (0.5 * theta).powf(1.0 / (1.0 + rho));
        (2.0 * inner.powf(1.0 + rho)).ln()
    };
    let expected = 0.4 * direct_e0(0.05) + 0.6 * direct_e0(0.2);
    assert!((m.e0(&p, rho).unwrap() - expected).abs() < 1e-13);
    let direct_f0 = |w: f64| -(0.5 * 2.0 * ((1.0 - w).powf(1.0 + rho) + w.powf(1.0 + rho))).ln();
    let expected = 0.4 * direct_f0(0.3) + 0.6 * direct_f0(0.1);
    assert!((m.f0(&p, rho).unwrap() - expected).abs() < 1e-13);
}

#[test]
fn two_state_capacity_matches_mixture_grid() {
    let m = FiniteEdms::from_tables(
        (2, 2, 2),
        vec![degraded_chain(0.2, 0.3), degraded_chain(0.02, 0.3)],
        vec![0.5, 3.0],
    )
    .unwrap()
    .with_degraded(true);
    let rate = |s: usize| m.state_mi_ab(s).unwrap() - m.state_mi_ae(s).unwrap();
    for budget in [0.5, 1.0, 2.0, 3.0, 5.0] {
        let grid = (0..=100_000)
            .map(|i| i as f64 / 100_000.0)
            .filter(|q| (1.0 - q) * 0.5 + q * 3.0 <= budget + 1e-12)
            .map(|q| (1.0 - q) * rate(0) + q * rate(1))
            .fold(f64::MIN, f64::max);
        let cap = m.degraded_capacity(budget).unwrap().value;
        assert!(cap >= grid - 1e-12 && cap - grid < 1e-4, "budget {budget}: {cap} vs {grid}");
    }
    assert!(m.degraded_capacity(0.4).is_err());
}

#[test]
fn independent_eve_reduces_capacity_to_mutual_information() {
    let m = FiniteEdms::binary_symmetric_states(&[(0.1, 0.5, 0.0), (0.02, 0.5, 2.0)]).unwrap();
    let cap = m.degraded_capacity(f64::INFINITY).unwrap().value;
    assert!((cap - m.state_mi_ab(1).unwrap()).abs() < 1e-14);
    let upper = m.capacity_upper_bound(f64::INFINITY).unwrap().value;
    assert!((upper - cap).abs() < 1e-14);
}

#[test]
fn generic_conditional_information_by_direct_summation() {
    let t = vec![0.10, 0.05, 0.02, 0.13, 0.20, 0.05, 0.15, 0.30];
    let m = FiniteEdms::from_tables((2, 2, 2), vec![t.clone()], vec![0.0]).unwrap();
    let p = |a: usize, b: usize, e: usize| t[(a * 2 + b) * 2 + e];
    let mut mi = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            for e in 0..2 {
                let pe: f64 = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| p(a, b, e)).sum();
                let pae: f64 = (0..2).map(|b| p(a, b, e)).sum();
                let pbe: f64 = (0..2).map(|a| p(a, b, e)).sum();
                mi += p(a, b, e) * (p(a, b, e) * pe / (pae * pbe)).ln();
            }
        }
    }
    let upper = m.capacity_upper_bound(0.0).unwrap().value;
    assert!((upper - mi).abs() < 1e-14);
}

#[test]
fn single_precision_engine_tracks_double() {
    let m64 = FiniteEdms::binary_symmetric(0.1f64, 0.3, 0.0).unwrap();
    let m32 = FiniteEdms::binary_symmetric(0.1f32, 0.3, 0.0).unwrap();
    let p64 = StateDistribution::point(&m64, 0).unwrap();
    let p32 = StateDistribution::point(&m32, 0).unwrap();
    let e64 = m64.reliability_exponent(&p64, 0.6).unwrap();
    let e32 = m32.reliability_exponent(&p32, 0.6).unwrap();
    assert!((e64 - e32 as f64).abs() < 1e-4);
}

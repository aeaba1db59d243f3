use std::f64::consts::LN_2;

use edms_core::sim::{
    derive_seed, ensemble_error_check, exact_error_probability, exact_leakage, key_entropy,
    ml_decode, monte_carlo_run, public_leakage, sequence_from_str, BinningCode,
};

/// Upper 0.001 quantile of the chi-square distribution with 15 degrees of freedom.
const CHI2_15_999: f64 = 37.697;

fn chi_square(map: &[u32], bins: u32) -> f64 {
    let mut counts = vec![0u64; bins as usize];
    for &b in map {
        counts[b as usize] += 1;
    }
    let expected = map.len() as f64 / bins as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

#[test]
fn bin_occupancy_is_uniform() {
    let code = BinningCode::with_bins(10, 16, 16, 2024).unwrap();
    let key = chi_square(code.key_map(), 16);
    let msg = chi_square(code.message_map(), 16);
    assert!(key < CHI2_15_999, "key map chi-square {key}");
    assert!(msg < CHI2_15_999, "message map chi-square {msg}");
    // the rate form lands on the same bin count
    let code = BinningCode::generate(10, 0.4 * LN_2, 0.4 * LN_2, 2024).unwrap();
    assert_eq!((code.key_bins(), code.msg_bins()), (16, 16));
}

#[test]
fn rejection_rate_of_uniformity_test_is_small() {
    // across many seeds the test should reject about 0.1% of the time
    let rejected = (0..400u64)
        .filter(|&k| {
            let code = BinningCode::with_bins(10, 16, 16, derive_seed(7, k)).unwrap();
            chi_square(code.message_map(), 16) >= CHI2_15_999
        })
        .count();
    assert!(rejected <= 4, "{rejected} of 400 rejected");
}

#[test]
fn decoder_worked_examples() {
    // bin {000, 111}, everything else in bin 1
    let msg: Vec<u32> = (0..8).map(|x| if x == 0 || x == 7 { 0 } else { 1 }).collect();
    let code = BinningCode::from_maps(3, vec![0; 8], msg).unwrap();
    let y = sequence_from_str("001").unwrap();
    assert_eq!(ml_decode(&code, 0, y, 0.1).unwrap(), Some(0));
    // one bin holding every sequence returns the observation
    let all = BinningCode::with_bins(6, 4, 1, 3).unwrap();
    for y in [0u32, 17, 42, 63] {
        assert_eq!(ml_decode(&all, 0, y, 0.2).unwrap(), Some(y));
    }
    // truth always wins with a nearly noiseless source
    let code = BinningCode::generate(8, 0.1, 0.3, 5).unwrap();
    for x in [3u32, 100, 255] {
        assert_eq!(ml_decode(&code, code.message(x), x, 1e-9).unwrap(), Some(x));
    }
}

#[test]
fn noiseless_source_with_singleton_bins_never_errs() {
    for seed in 0..5 {
        let code = BinningCode::generate(6, 0.2, 1.0, seed).unwrap();
        assert!(code.msg_bins() as usize >= code.num_sequences());
        assert_eq!(exact_error_probability(&code, 0.0).unwrap().key, 0.0);
    }
    let check = ensemble_error_check(6, 0.3, 0.0, 10, 1).unwrap();
    assert_eq!(check.mean_error, 0.0);
    assert!(check.within_bound());
}

#[test]
fn key_error_never_exceeds_sequence_error() {
    for seed in 0..20 {
        let code = BinningCode::generate(7, 0.2, 0.35, seed).unwrap();
        for theta in [0.05, 0.2, 0.4] {
            let e = exact_error_probability(&code, theta).unwrap();
            assert!(e.key <= e.sequence + 1e-15);
            assert!((0.0..=1.0).contains(&e.key));
        }
    }
}

#[test]
fn ensemble_average_respects_bound() {
    for r_m_bits in [0.6, 0.8, 1.0] {
        let check = ensemble_error_check(8, r_m_bits * LN_2, 0.1, 60, 11).unwrap();
        assert!(check.within_bound(), "{check:?}");
    }
}

#[test]
fn sampled_error_matches_exact() {
    let code = BinningCode::generate(8, 0.3 * LN_2, 0.6 * LN_2, 77).unwrap();
    let exact = exact_error_probability(&code, 0.1).unwrap().key;
    let trials = 100_000u64;
    let report = monte_carlo_run(&code, 0.1, 0.5, trials, 78).unwrap();
    let se = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!(
        (report.error_estimate - exact).abs() <= 3.0 * se,
        "{} vs {exact} (se {se})",
        report.error_estimate
    );
    assert!(report.error_ci_halfwidth > 0.0);
}

#[test]
fn reports_are_reproducible() {
    let code = BinningCode::generate(9, 0.2, 0.4, 1).unwrap();
    let a = serde_json::to_string(&monte_carlo_run(&code, 0.1, 0.3, 5000, 2).unwrap()).unwrap();
    let b = serde_json::to_string(&monte_carlo_run(&code, 0.1, 0.3, 5000, 2).unwrap()).unwrap();
    assert_eq!(a, b);
    for field in [
        "\"n\"", "\"r_sk_nats\"", "\"r_m_nats\"", "\"theta\"", "\"w\"", "\"trials\"", "\"seed\"",
        "\"error_estimate\"", "\"error_ci_halfwidth\"", "\"leakage_nats\"", "\"leakage_exact\"",
        "\"empirical_exponent\"", "\"gallager_bound\"",
    ] {
        assert!(a.contains(field), "missing {field}");
    }
}

#[test]
fn key_becomes_uniform_with_block_length() {
    let rate = 0.3;
    let mut previous = 0.0;
    for n in [6, 8, 10, 12, 14] {
        let codes = 32u64;
        let mean: f64 = (0..codes)
            .map(|k| {
                let code = BinningCode::generate(n, rate, 0.0, derive_seed(5, k)).unwrap();
                key_entropy(&code) / (code.key_bins() as f64).ln()
            })
            .sum::<f64>()
            / codes as f64;
        assert!(mean >= previous, "n = {n}: {mean} < {previous}");
        assert!(mean <= 1.0 + 1e-12);
        previous = mean;
    }
    assert!(previous > 0.95);
}

#[test]
fn correlated_eavesdropper_learns_at_least_public_message() {
    for seed in 0..10 {
        let code = BinningCode::generate(7, 0.25, 0.3, seed).unwrap();
        let public = public_leakage(&code).unwrap();
        assert!(public >= 0.0);
        for w in [0.05, 0.25, 0.45] {
            let full = exact_leakage(&code, 0.1, w).unwrap();
            assert!(full >= public - 1e-12, "seed {seed} w {w}: {full} < {public}");
        }
    }
}

#[test]
fn public_leakage_decreases_with_block_length() {
    // 0.3 + 0.5 bits is below the 1 bit Eve cannot see
    let (r_sk, r_m) = (0.3 * LN_2, 0.5 * LN_2);
    let codes = 64u64;
    let mean = |n: usize| {
        (0..codes)
            .map(|k| {
                let code = BinningCode::generate(n, r_sk, r_m, derive_seed(9, k)).unwrap();
                exact_leakage(&code, 0.05, 0.5).unwrap()
            })
            .sum::<f64>()
            / codes as f64
    };
    // bin-count flooring dominates below n = 8, so the trend starts there
    let v: Vec<f64> = [8, 10, 12, 14].into_iter().map(mean).collect();
    assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
}

#[test]
fn oversized_requests_are_rejected() {
    let code = BinningCode::generate(15, 0.1, 0.1, 0).unwrap();
    assert!(exact_error_probability(&code, 0.1).is_err());
    assert!(exact_leakage(&code, 0.1, 0.3).is_err());
    assert!(exact_leakage(&code, 0.1, 0.5).is_ok());
    assert!(BinningCode::generate(25, 0.1, 0.1, 0).is_err());
}

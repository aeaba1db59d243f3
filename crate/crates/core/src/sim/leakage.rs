//! Exact information leaked by a fixed code, from the enumerated joint
//! distribution of `(K_a, Y_e^n, Phi)`. Alice's sequence is uniform.

use crate::error::{Error, Result};

use super::code::BinningCode;
use super::decode::check_crossover;
use super::exact::weight_table;

/// Longest block length for leakage with Eve observing only the public message.
pub const MAX_PUBLIC_LEAKAGE_LENGTH: usize = 20;
/// Longest block length for leakage with a correlated eavesdropper.
pub const MAX_EAVESDROPPER_LEAKAGE_LENGTH: usize = 10;

/// `-sum p ln p` over run lengths of a sorted sequence, each count scaled by `scale`.
fn entropy_of_sorted<K: PartialEq>(sorted: &[K], scale: f64) -> f64 {
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| {
            let p = run.len() as f64 * scale;
            -p * p.ln()
        })
        .sum()
}

fn entropy_of_labels(labels: impl Iterator<Item = u64>, count: usize) -> f64 {
    let mut v: Vec<u64> = labels.collect();
    v.sort_unstable();
    entropy_of_sorted(&v, 1.0 / count as f64)
}

/// `H(K_a)` in nats.
pub fn key_entropy(code: &BinningCode) -> f64 {
    entropy_of_labels(code.key_map().iter().map(|&k| k as u64), code.num_sequences())
}

/// `I(K_a; Phi)` in nats, the leakage to an eavesdropper with no source observation.
pub fn public_leakage(code: &BinningCode) -> Result<f64> {
    if code.n() > MAX_PUBLIC_LEAKAGE_LENGTH {
        return Err(Error::TooLarge {
            n: code.n(),
            max: MAX_PUBLIC_LEAKAGE_LENGTH,
            what: "exact public-message leakage",
        });
    }
    let count = code.num_sequences();
    let msgs = code.message_map();
    let keys = code.key_map();
    let h_k = key_entropy(code);
    let h_phi = entropy_of_labels(msgs.iter().map(|&m| m as u64), count);
    let h_joint = entropy_of_labels(
        keys.iter().zip(msgs).map(|(&k, &m)| (k as u64) << 32 | m as u64),
        count,
    );
    Ok((h_k + h_phi - h_joint).max(0.0))
}

/// `I(K_a; Y_e^n, Phi)` in nats when Eve sees Alice's sequence through
/// BSC(w); `w = 1/2` reduces to [`public_leakage`].
pub fn exact_leakage(code: &BinningCode, theta: f64, w: f64) -> Result<f64> {
    check_crossover("theta", theta)?;
    check_crossover("w", w)?;
    if w == 0.5 {
        return public_leakage(code);
    }
    eavesdropper_leakage(code, w)
}

fn eavesdropper_leakage(code: &BinningCode, w: f64) -> Result<f64> {
    let n = code.n();
    if n > MAX_EAVESDROPPER_LEAKAGE_LENGTH {
        return Err(Error::TooLarge {
            n,
            max: MAX_EAVESDROPPER_LEAKAGE_LENGTH,
            what: "exact leakage with a correlated eavesdropper",
        });
    }
    let weights = weight_table(n, w);
    // sequences grouped by (message, key)
    let mut order: Vec<u32> = (0..code.num_sequences() as u32).collect();
    order.sort_by_key(|&x| (code.message(x), code.key(x), x));
    let groups: Vec<&[u32]> = order
        .chunk_by(|&a, &b| code.message(a) == code.message(b) && code.key(a) == code.key(b))
        .collect();
    let plogp = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };

    // H(Y_e, Phi) and H(K, Y_e, Phi)
    let (mut h_ye_phi, mut h_joint) = (0.0, 0.0);
    for y in 0..(1u32 << n) {
        let mut phi_mass = 0.0;
        let mut current_phi = None;
        for group in &groups {
            let phi = code.message(group[0]);
            if current_phi != Some(phi) {
                h_ye_phi += plogp(phi_mass);
                phi_mass = 0.0;
                current_phi = Some(phi);
            }
            let p: f64 = group.iter().map(|&x| weights[(x ^ y).count_ones() as usize]).sum();
            h_joint += plogp(p);
            phi_mass += p;
        }
        h_ye_phi += plogp(phi_mass);
    }
    Ok((key_entropy(code) + h_ye_phi - h_joint).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Mutual information from an explicit dense joint table.
    fn dense_mi(code: &BinningCode, w: f64) -> f64 {
        let n = code.n();
        let len = 1usize << n;
        let kb = code.key_bins() as usize;
        let mb = code.msg_bins() as usize;
        let mut joint = vec![0.0; kb * len * mb];
        for x in 0..len as u32 {
            for y in 0..len as u32 {
                let d = (x ^ y).count_ones() as i32;
                let p = w.powi(d) * (1.0 - w).powi(n as i32 - d) / len as f64;
                joint[(code.key(x) as usize * len + y as usize) * mb + code.message(x) as usize] += p;
            }
        }
        let mut pk = vec![0.0; kb];
        let mut pe = vec![0.0; len * mb];
        for k in 0..kb {
            for e in 0..len * mb {
                pk[k] += joint[k * len * mb + e];
                pe[e] += joint[k * len * mb + e];
            }
        }
        let mut mi = 0.0;
        for k in 0..kb {
            for e in 0..len * mb {
                let p = joint[k * len * mb + e];
                if p > 0.0 {
                    mi += p * (p / (pk[k] * pe[e])).ln();
                }
            }
        }
        mi
    }

    #[test]
    fn matches_dense_enumeration() {
        let code = BinningCode::with_bins(5, 3, 4, 17).unwrap();
        for w in [0.0, 0.1, 0.3] {
            let fast = exact_leakage(&code, 0.1, w).unwrap();
            assert!((fast - dense_mi(&code, w)).abs() < 1e-12, "w = {w}");
        }
        let public = exact_leakage(&code, 0.1, 0.5).unwrap();
        assert!((public - dense_mi(&code, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn trivial_cases() {
        let one_key = BinningCode::generate(8, 0.0, 0.3, 1).unwrap();
        assert_eq!(exact_leakage(&one_key, 0.1, 0.2).unwrap(), 0.0);
        let one_msg = BinningCode::generate(8, 0.3, 0.0, 1).unwrap();
        assert!(exact_leakage(&one_msg, 0.1, 0.5).unwrap().abs() < 1e-15);
        // Eve knows everything: leakage is the key entropy
        let code = BinningCode::generate(6, 0.3, 0.2, 4).unwrap();
        assert!((exact_leakage(&code, 0.1, 0.0).unwrap() - key_entropy(&code)).abs() < 1e-12);
    }

    #[test]
    fn observing_more_leaks_more() {
        let code = BinningCode::generate(8, 0.25, 0.2, 3).unwrap();
        let public = public_leakage(&code).unwrap();
        for w in [0.1, 0.3, 0.45] {
            assert!(exact_leakage(&code, 0.1, w).unwrap() >= public - 1e-12);
        }
        assert!(matches!(
            exact_leakage(&BinningCode::generate(11, 0.1, 0.1, 0).unwrap(), 0.1, 0.2),
            Err(Error::TooLarge { .. })
        ));
    }
}

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Longest block length whose bin maps are materialized.
pub const MAX_CODE_LENGTH: usize = 24;

const KEY_STREAM: u64 = 0;
const MESSAGE_STREAM: u64 = 1;

/// Two independent uniform random binnings of `{0,1}^n`: the key map and
/// the public message map.
///
/// Sequences are stored as integers with `x_1` in the most significant bit,
/// so integer order equals lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinningCode {
    n: usize,
    key_bins: u32,
    msg_bins: u32,
    seed: u64,
    key_map: Vec<u32>,
    msg_map: Vec<u32>,
    // all sequences sorted by (message bin, sequence)
    by_message: Vec<u32>,
}

/// `floor(e^{n R})`, at least 1.
pub fn bin_count(n: usize, rate_nats: f64) -> Result<u32> {
    if !(rate_nats >= 0.0) || !rate_nats.is_finite() {
        return Err(Error::Domain(format!("rate {rate_nats} must be finite and nonnegative")));
    }
    // rates given as ln(k)/n must land on k despite rounding in exp
    let raw = ((n as f64 * rate_nats).exp() * (1.0 + 1e-12)).floor();
    if raw > u32::MAX as f64 {
        return Err(Error::BinOverflow(raw as u128));
    }
    Ok((raw as u32).max(1))
}

/// Independent 64-bit seed number `index` derived from a master seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.next_u64()
}

fn random_map(n: usize, bins: u32, seed: u64, stream: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..1u64 << n).map(|_| rng.random_range(0..bins)).collect()
}

impl BinningCode {
    /// Draws a code with `floor(e^{n r_sk})` key bins and `floor(e^{n r_m})`
    /// message bins. Identical arguments always give identical maps.
    pub fn generate(n: usize, r_sk: f64, r_m: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("block length must be at least 1".into()));
        }
        if n > MAX_CODE_LENGTH {
            return Err(Error::TooLarge {
                n,
                max: MAX_CODE_LENGTH,
                what: "materialized binning maps",
            });
        }
        let key_bins = bin_count(n, r_sk)?;
        let msg_bins = bin_count(n, r_m)?;
        Ok(Self::from_bins(n, key_bins, msg_bins, seed))
    }

    /// Like [`BinningCode::generate`] with explicit bin counts.
    pub fn with_bins(n: usize, key_bins: u32, msg_bins: u32, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_CODE_LENGTH {
            return Err(Error::TooLarge {
                n,
                max: MAX_CODE_LENGTH,
                what: "materialized binning maps",
            });
        }
        if key_bins == 0 || msg_bins == 0 {
            return Err(Error::Domain("bin counts must be at least 1".into()));
        }
        Ok(Self::from_bins(n, key_bins, msg_bins, seed))
    }

    fn from_bins(n: usize, key_bins: u32, msg_bins: u32, seed: u64) -> Self {
        let key_map = random_map(n, key_bins, seed, KEY_STREAM);
        let msg_map = random_map(n, msg_bins, seed, MESSAGE_STREAM);
        Self::from_maps_unchecked(n, key_bins, msg_bins, seed, key_map, msg_map)
    }

    fn from_maps_unchecked(
        n: usize,
        key_bins: u32,
        msg_bins: u32,
        seed: u64,
        key_map: Vec<u32>,
        msg_map: Vec<u32>,
    ) -> Self {
        let mut by_message: Vec<u32> = (0..key_map.len() as u32).collect();
        by_message.sort_by_key(|&x| (msg_map[x as usize], x));
        Self {
            n,
            key_bins,
            msg_bins,
            seed,
            key_map,
            msg_map,
            by_message,
        }
    }

    /// Code with hand-written maps, for small worked examples.
    pub fn from_maps(n: usize, key_map: Vec<u32>, msg_map: Vec<u32>) -> Result<Self> {
        if n == 0 || n > MAX_CODE_LENGTH {
            return Err(Error::TooLarge {
                n,
                max: MAX_CODE_LENGTH,
                what: "materialized binning maps",
            });
        }
        let len = 1usize << n;
        if key_map.len() != len || msg_map.len() != len {
            return Err(Error::Domain(format!("maps must have 2^{n} = {len} entries")));
        }
        let key_bins = key_map.iter().max().map_or(1, |m| m + 1);
        let msg_bins = msg_map.iter().max().map_or(1, |m| m + 1);
        Ok(Self::from_maps_unchecked(n, key_bins, msg_bins, 0, key_map, msg_map))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key_bins(&self) -> u32 {
        self.key_bins
    }

    pub fn msg_bins(&self) -> u32 {
        self.msg_bins
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of source sequences, `2^n`.
    pub fn num_sequences(&self) -> usize {
        self.key_map.len()
    }

    pub fn key(&self, x: u32) -> u32 {
        self.key_map[x as usize]
    }

    pub fn message(&self, x: u32) -> u32 {
        self.msg_map[x as usize]
    }

    pub fn key_map(&self) -> &[u32] {
        &self.key_map
    }

    pub fn message_map(&self) -> &[u32] {
        &self.msg_map
    }

    /// Members of message bin `phi` in ascending order (empty if unused).
    pub fn bin(&self, phi: u32) -> &[u32] {
        let msg = &self.msg_map;
        let lo = self.by_message.partition_point(|&x| msg[x as usize] < phi);
        let hi = self.by_message.partition_point(|&x| msg[x as usize] <= phi);
        &self.by_message[lo..hi]
    }

    /// Nonempty message bins in ascending bin order.
    pub fn nonempty_bins(&self) -> impl Iterator<Item = (u32, &[u32])> {
        self.by_message
            .chunk_by(|a, b| self.msg_map[*a as usize] == self.msg_map[*b as usize])
            .map(|chunk| (self.msg_map[chunk[0] as usize], chunk))
    }
}

/// Formats a sequence as a bit string, `x_1` first.
pub fn sequence_to_string(x: u32, n: usize) -> String {
    (0..n).map(|i| if x >> (n - 1 - i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a bit string, `x_1` first.
pub fn sequence_from_str(s: &str) -> Result<u32> {
    if s.is_empty() || s.len() > MAX_CODE_LENGTH {
        return Err(Error::Domain(format!("bad sequence `{s}`")));
    }
    s.chars().try_fold(0u32, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::Domain(format!("bad sequence `{s}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_stream_separated() {
        let a = BinningCode::generate(10, 0.2, 0.3, 7).unwrap();
        let b = BinningCode::generate(10, 0.2, 0.3, 7).unwrap();
        assert_eq!(a, b);
        let c = BinningCode::generate(10, 0.2, 0.3, 8).unwrap();
        assert_ne!(a.message_map(), c.message_map());
        // same bin counts on both maps still give different assignments
        let d = BinningCode::with_bins(10, 16, 16, 3).unwrap();
        assert_ne!(d.key_map(), d.message_map());
    }

    #[test]
    fn bin_counts_floor() {
        assert_eq!(bin_count(8, 0.0).unwrap(), 1);
        assert_eq!(bin_count(10, 2f64.ln() * 0.4).unwrap(), 16);
        assert_eq!(bin_count(1, 0.1).unwrap(), 1);
        assert!(matches!(bin_count(100, 1.0), Err(Error::BinOverflow(_))));
        assert!(matches!(
            BinningCode::generate(25, 0.1, 0.1, 0),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn bins_partition_sequences() {
        let code = BinningCode::generate(9, 0.1, 0.25, 11).unwrap();
        let mut seen = 0;
        for phi in 0..code.msg_bins() {
            let members = code.bin(phi);
            assert!(members.windows(2).all(|w| w[0] < w[1]));
            assert!(members.iter().all(|&x| code.message(x) == phi));
            seen += members.len();
        }
        assert_eq!(seen, code.num_sequences());
        assert_eq!(code.nonempty_bins().map(|(_, m)| m.len()).sum::<usize>(), seen);
    }

    #[test]
    fn sequence_strings() {
        assert_eq!(sequence_to_string(1, 3), "001");
        assert_eq!(sequence_from_str("110").unwrap(), 6);
        assert!(sequence_from_str("12").is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let s: Vec<u64> = (0..8).map(|k| derive_seed(42, k)).collect();
        let mut t = s.clone();
        t.sort();
        t.dedup();
        assert_eq!(t.len(), 8);
        assert_eq!(derive_seed(42, 3), s[3]);
    }
}

use crate::error::{Error, Result};

use super::code::BinningCode;

pub(crate) fn check_crossover(name: &str, p: f64) -> Result<()> {
    if (0.0..=0.5).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {p} outside [0, 1/2]")))
    }
}

/// Maximum-likelihood estimate of Alice's sequence inside message bin
/// `phi`, given Bob's observation `y`.
///
/// For `theta < 1/2` this is the member closest to `y` in Hamming distance;
/// ties go to the smallest sequence. At `theta = 1/2` every member is
/// equally likely and the smallest one is returned. `None` for an empty bin.
pub fn ml_decode(code: &BinningCode, phi: u32, y: u32, theta: f64) -> Result<Option<u32>> {
    check_crossover("theta", theta)?;
    if phi >= code.msg_bins() {
        return Err(Error::Domain(format!(
            "message bin {phi} out of range (|M| = {})",
            code.msg_bins()
        )));
    }
    if code.n() < 32 && y >> code.n() != 0 {
        return Err(Error::Domain(format!("observation {y} longer than n = {}", code.n())));
    }
    Ok(decode_in(code.bin(phi), y, theta))
}

#[inline]
pub(crate) fn decode_in(members: &[u32], y: u32, theta: f64) -> Option<u32> {
    if theta == 0.5 {
        return members.first().copied();
    }
    nearest(members, y)
}

/// Member with the smallest Hamming distance to `y`, first one on ties.
#[inline]
pub(crate) fn nearest(members: &[u32], y: u32) -> Option<u32> {
    let mut best = *members.first()?;
    let mut best_d = (best ^ y).count_ones();
    for &x in &members[1..] {
        let d = (x ^ y).count_ones();
        if d < best_d {
            best = x;
            best_d = d;
            if d == 0 {
                break;
            }
        }
    }
    Some(best)
}

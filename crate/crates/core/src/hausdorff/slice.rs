use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fmt_ratio;
use crate::error::{Error, Result};

/// Generator counts `e_i` with `e_1 + ... + e_i = ⌈η (d_1 + ... + d_i)⌉`.
pub fn elem_ab_slice(eta: &BigRational, ranks: &[BigInt]) -> Result<Vec<BigInt>> {
    if eta.is_negative() || eta > &BigRational::one() {
        return Err(Error::Invalid(format!("η = {} is outside [0,1]", fmt_ratio(eta))));
    }
    if ranks.iter().any(Signed::is_negative) {
        return Err(Error::Invalid("layer ranks must be non-negative".into()));
    }
    let mut total = BigInt::zero();
    let mut prev = BigInt::zero();
    Ok(ranks
        .iter()
        .map(|d| {
            total += d;
            let cur = (eta * BigRational::from_integer(total.clone())).ceil().to_integer();
            let e = &cur - &prev;
            prev = cur;
            e
        })
        .collect())
}

/// `0 ≤ e_i ≤ d_i` and `η ≤ E_i / D_i ≤ η + 1/D_i` for every prefix with `D_i > 0`.
pub fn check_slice(eta: &BigRational, ranks: &[BigInt], e: &[BigInt]) -> bool {
    if ranks.len() != e.len() {
        return false;
    }
    let (mut dsum, mut esum) = (BigInt::zero(), BigInt::zero());
    ranks.iter().zip(e).all(|(d, ei)| {
        dsum += d;
        esum += ei;
        if ei.is_negative() || ei > d {
            return false;
        }
        if dsum.is_zero() {
            return esum.is_zero();
        }
        let dens = BigRational::new(esum.clone(), dsum.clone());
        eta <= &dens && dens <= eta + BigRational::new(BigInt::one(), dsum.clone())
    })
}

//! Layer ranks of the infinite group `G` (odd `p`) along the four series,
//! split into the part inside `Z` and the part inside `H`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ratio, DensitySequence, DensityTerm};
use crate::error::{Error, Result};
use crate::series::SeriesKind;

/// Which closed subgroup of `G` the density is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// The centre `Z = ⟨y^p, e_1, e_2, ...⟩`.
    Z,
    /// The normal closure `H = ⟨y⟩^G`.
    H,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Z => "Z",
            Target::H => "H",
        }
    }
}

/// Ranks of `S_j/S_{j+1}`, `(S_j ∩ Z)/(S_{j+1} ∩ Z)` and `(S_j ∩ H)/(S_{j+1} ∩ H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerData {
    pub rank: BigInt,
    pub z: BigInt,
    pub h: BigInt,
}

fn power_exponent(j: u64, p: u64) -> Option<u32> {
    let (mut n, mut l) = (1u64, 0u32);
    while n < j {
        n = n.saturating_mul(p);
        l += 1;
    }
    (n == j).then_some(l)
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::NoFormula(format!("layer data are registered for odd primes only (p = {p})")));
    }
    Ok(())
}

/// Layer `j` of the lower `p`-, Jennings or Frattini series of `G`.
pub fn layer_data(kind: SeriesKind, p: u64, j: u64) -> Result<LayerData> {
    check_prime(p)?;
    let b = |n: u64| BigInt::from(n);
    let odd = j % 2 == 1;
    let (rank, z, h) = match kind {
        SeriesKind::LowerP => match j {
            0 => return Err(Error::Invalid("the lower p-series starts at level 1".into())),
            1 => (b(2), b(0), b(1)),
            2 => (b(3), b(1), b(2)),
            _ => (b(2 + odd as u64), b(odd as u64), b(1 + odd as u64)),
        },
        SeriesKind::Jennings => {
            if j == 0 {
                return Err(Error::Invalid("the Jennings series starts at level 1".into()));
            }
            let l = power_exponent(j, p);
            let rank = match l {
                Some(0) => 2,
                Some(1) => 4,
                Some(_) => 3,
                None => 1 + odd as u64,
            };
            let z = (odd && j >= 3) as u64 + (j == p) as u64;
            (b(rank), b(z), b(rank - l.is_some() as u64))
        }
        SeriesKind::Frattini => match j {
            0 => (b(2), b(0), b(1)),
            1 => (b(p + 3), b(2), b(p + 2)),
            _ => {
                let (pj, pj1) = (BigInt::from(p).pow(j as u32), BigInt::from(p).pow(j as u32 - 1));
                let h = &pj + &pj1;
                (&h + 1, pj1, h)
            }
        },
        _ => return Err(Error::NoFormula(format!("no layer data for the {} series", kind.name()))),
    };
    Ok(LayerData { rank, z, h })
}

/// Limit of the density sequence, where one is registered.
pub fn registered_limit(kind: SeriesKind, target: Target, p: u64) -> Option<BigRational> {
    if check_prime(p).is_err() {
        return None;
    }
    Some(match (kind, target) {
        (SeriesKind::PPower | SeriesKind::Jennings, Target::Z) => ratio(1, 3),
        (SeriesKind::LowerP, Target::Z) => ratio(1, 5),
        (SeriesKind::LowerP, Target::H) => ratio(3, 5),
        (SeriesKind::Frattini, Target::Z) => ratio(1, p + 1),
        (SeriesKind::PPower | SeriesKind::Jennings | SeriesKind::Frattini, Target::H) => BigRational::one(),
        (SeriesKind::LowerCentral, _) => return None,
    })
}

/// Densities `d_i` of `Z` or `H` for levels `first+1 ..= i_max`, from the
/// registered layer data. All terms are flagged stable.
pub fn closed_form_sequence(kind: SeriesKind, target: Target, p: u64, i_max: usize) -> Result<DensitySequence> {
    check_prime(p)?;
    let mut terms = Vec::new();
    match kind {
        SeriesKind::PPower => {
            for i in 1..=i_max {
                let pi = BigInt::from(p).pow(i as u32);
                let den: BigInt = (BigInt::from(3) * &pi + 2 * i - 3) / 2;
                let num = match target {
                    Target::Z => (&pi - 1) / 2,
                    Target::H => &den - i,
                };
                terms.push(DensityTerm::new(i, num, den, true));
            }
        }
        SeriesKind::LowerP | SeriesKind::Jennings | SeriesKind::Frattini => {
            let first = kind.first_level();
            let (mut num, mut den) = (BigInt::zero(), BigInt::zero());
            for j in first..i_max {
                let d = layer_data(kind, p, j as u64)?;
                num += match target {
                    Target::Z => d.z,
                    Target::H => d.h,
                };
                den += d.rank;
                terms.push(DensityTerm::new(j + 1, num.clone(), den.clone(), true));
            }
        }
        SeriesKind::LowerCentral => {
            return Err(Error::NoFormula("the lower central series has infinite-index terms".into()));
        }
    }
    Ok(DensitySequence {
        subgroup: target.name().into(),
        kind,
        terms,
        registered_limit: registered_limit(kind, target, p),
        cutoff: None,
    })
}

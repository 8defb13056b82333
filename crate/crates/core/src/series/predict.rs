use super::SeriesKind;
use crate::arith::pow;
use crate::collector::{Family, GroupParams};

fn is_power_of(i: usize, p: usize) -> Option<u32> {
    let mut n = 1usize;
    for l in 0.. {
        if n == i {
            return Some(l);
        }
        if n > i {
            return None;
        }
        n *= p;
    }
    unreachable!()
}

/// Registered closed-form rank of `S_i / S_{i+1}`, when one is known.
pub fn predicted_rank(params: GroupParams, kind: SeriesKind, level: usize) -> Option<usize> {
    let (p, k) = (params.p as usize, params.k as usize);
    let q = pow(params.p, params.k) as usize;
    let odd = level % 2 == 1;
    match (params.family, kind) {
        (Family::Gk, SeriesKind::LowerCentral) if p == 2 => Some(match level {
            0 => return None,
            1 => k + 3,
            i if i > q + 1 => 0,
            _ if !odd => 1,
            i if (i - 1) / 2 == q / 2 => 1,
            _ => 2,
        }),
        (Family::Gk, SeriesKind::LowerCentral) => Some(match level {
            0 => return None,
            1 => k + 3,
            i if i > q => 0,
            _ if odd => 2,
            _ => 1,
        }),
        (Family::Gk, SeriesKind::LowerP) if p != 2 => Some(match level {
            0 => return None,
            1 => 2,
            2 => 3,
            i if i > q => 0,
            i if i <= k + 1 => 2 + odd as usize,
            _ => 1 + odd as usize,
        }),
        (Family::Gk, SeriesKind::Jennings) if p == 2 => Some(match level {
            0 => return None,
            1 => 2,
            i if i == q + 1 => 0,
            i if i == q + 2 => 1,
            i if i > q + 2 => 0,
            i if is_power_of(i, 2).is_some() => 3,
            _ if odd => 1,
            _ => 2,
        }),
        (Family::Gk, SeriesKind::Jennings) => Some(match level {
            0 => return None,
            1 => 2,
            i if i > q => 0,
            i if i == p => 4,
            i if is_power_of(i, p).is_some_and(|l| l >= 2) => 3,
            _ if odd => 2,
            _ => 1,
        }),
        (Family::Gk, SeriesKind::Frattini) if p != 2 => Some(match level {
            0 => 2,
            1 => p + 3,
            i if i < k => pow(params.p, i as u32) as usize + pow(params.p, i as u32 - 1) as usize + 1,
            i if i == k => q + 1 - (q / p - 1) / (p - 1),
            i if i == k + 1 => (p - 3) * (q - 1) / (2 * (p - 1)),
            _ => 0,
        }),
        (Family::Wk, SeriesKind::LowerCentral) => Some(match level {
            0 => return None,
            1 => k + 1,
            i if i > q => 0,
            _ => 1,
        }),
        (Family::Wk, SeriesKind::LowerP) => Some(match level {
            0 => return None,
            i if i <= k => 2,
            i if i <= q => 1,
            _ => 0,
        }),
        (Family::Wk, SeriesKind::Frattini) => Some(match level {
            i if i < k => pow(params.p, i as u32) as usize + 1,
            i if i == k => (p * q - 2 * q + 1) / (p - 1),
            _ => 0,
        }),
        (Family::Wk, SeriesKind::Jennings) => match level {
            i if i > q => Some(0),
            i if i > q / p => Some(1),
            _ => None,
        },
        _ => None,
    }
}

/// Registered closed-form value of `log_p |G : S_i|`, when one is known.
pub fn predicted_log_index(params: GroupParams, kind: SeriesKind, level: usize) -> Option<usize> {
    let (p, k) = (params.p, params.k as usize);
    match (params.family, kind) {
        (Family::Gk, SeriesKind::PPower) if p != 2 && level == k => {
            Some(((3 * pow(p, level as u32) + 2 * level as u64).saturating_sub(3) / 2) as usize)
        }
        (Family::Wk, SeriesKind::PPower) if level == k => Some(params.log_order() - 1),
        _ => None,
    }
}

/// Registered number of non-trivial terms.
pub fn predicted_length(params: GroupParams, kind: SeriesKind) -> Option<usize> {
    let q = pow(params.p, params.k) as usize;
    let k = params.k as usize;
    match (params.family, kind) {
        (Family::Gk, SeriesKind::LowerCentral) if params.p == 2 => Some(q + 1),
        (Family::Gk, SeriesKind::LowerP) if params.p == 2 => Some(q + 1),
        (Family::Gk, SeriesKind::Jennings) if params.p == 2 => Some(q + 2),
        (Family::Gk, SeriesKind::Frattini) if params.p == 2 => Some(k + 1),
        (Family::Gk, SeriesKind::Frattini) => Some(k + 2),
        (_, SeriesKind::LowerCentral | SeriesKind::LowerP | SeriesKind::Jennings) => Some(q),
        (Family::Wk, SeriesKind::Frattini) => Some(k + 1),
        (Family::Gk, SeriesKind::PPower) => Some(k + 1),
        (Family::Wk, SeriesKind::PPower) => Some(k + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(params: GroupParams, kind: SeriesKind) -> usize {
        (kind.first_level()..kind.first_level() + 200).filter_map(|i| predicted_rank(params, kind, i)).sum()
    }

    #[test]
    fn predicted_ranks_sum_to_order() {
        for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            let g = GroupParams::g(p, k).unwrap();
            for kind in [SeriesKind::LowerCentral, SeriesKind::LowerP, SeriesKind::Jennings] {
                assert_eq!(total(g, kind), g.log_order(), "{g} {kind}");
            }
            let w = GroupParams::w(p, k).unwrap();
            for kind in [SeriesKind::LowerCentral, SeriesKind::LowerP, SeriesKind::Frattini] {
                assert_eq!(total(w, kind), w.log_order(), "{w} {kind}");
            }
        }
        for k in 1..=3 {
            let g = GroupParams::g(2, k).unwrap();
            for kind in [SeriesKind::LowerCentral, SeriesKind::Jennings] {
                assert_eq!(total(g, kind), g.log_order(), "{g} {kind}");
            }
        }
    }
}

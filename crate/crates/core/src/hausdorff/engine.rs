//! Density terms computed in finite quotients.

use num_bigint::BigInt;
use serde::Serialize;

use super::{registered_limit, DensitySequence, DensityTerm, Target};
use crate::arith::{ceil_log, pow};
use crate::collector::{Family, GroupCtx, GroupParams};
use crate::error::{Error, Result};
use crate::series::{series, FiltrationSeries, JenningsMethod, SeriesKind, SeriesOptions};
use crate::subgroups::{central_z, intersect_central, join, k_section, k_wreath, EchelonSubgroup};

fn require_finite_index(kind: SeriesKind) -> Result<()> {
    if kind == SeriesKind::LowerCentral {
        return Err(Error::Invalid("densities need a series of finite-index terms (P, L, D or F)".into()));
    }
    Ok(())
}

/// Exponent `e` with `S_i ∩ ⟨x⟩ = ⟨x^{p^e}⟩` in the infinite group.
pub fn x_exponent(kind: SeriesKind, p: u64, i: usize) -> Result<u64> {
    require_finite_index(kind)?;
    Ok(match kind {
        SeriesKind::LowerP => i.saturating_sub(1) as u64,
        SeriesKind::Jennings => ceil_log(i.max(1) as u64, p) as u64,
        _ => i as u64,
    })
}

/// Largest level whose intersection with `H` is read correctly in the
/// quotient of level `k`.
fn section_bound(kind: SeriesKind, p: u64, k: u32) -> usize {
    match kind {
        SeriesKind::LowerP | SeriesKind::Jennings => pow(p, k) as usize + 1,
        _ => k as usize,
    }
}

/// Smallest x-depth among the echelon rows, if any.
fn x_depth(s: &EchelonSubgroup) -> Option<usize> {
    s.depths().first().copied().filter(|&d| d < s.ctx().x_depths())
}

fn section_levels(kind: SeriesKind, p: u64, k: u32, i_max: Option<usize>) -> std::ops::RangeInclusive<usize> {
    let bound = section_bound(kind, p, k);
    kind.first_level() + 1..=i_max.map_or(bound, |m| m.min(bound))
}

/// Checks that the x-part of `S_i` is generated by `x^{p^e}`.
fn check_x_part(s: &FiltrationSeries, level: usize, e: u64) -> Result<()> {
    let ctx = &s.ctx;
    let term = s.term(level);
    let ok = if (e as usize) < ctx.x_depths() {
        x_depth(&term) == Some(e as usize) && term.contains(&ctx.x_pow(pow(ctx.p(), e as u32) as i64))
    } else {
        x_depth(&term).is_none()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "level {level} of the {} series of {} does not meet ⟨x⟩ in ⟨x^(p^{e})⟩",
            s.kind.name(),
            ctx.params()
        )))
    }
}

/// Densities of `K` computed from its decomposition `K = ⟨x^{p^n}⟩ (K ∩ H)`:
///
/// `d_i = ((e - n)^+ + log |(K∩H)(S_i∩H) : S_i∩H|) / (e + log |H : S_i∩H|)`
///
/// where `H` is the kernel of the projection onto `⟨x⟩`, `e` is the x-exponent
/// of `S_i` and only the intersections with `H` are read off the quotient.
/// Terms run up to the level where those intersections are stable.
pub fn section_density(
    k_sub: &EchelonSubgroup,
    name: &str,
    kind: SeriesKind,
    opts: &SeriesOptions,
    i_max: Option<usize>,
) -> Result<DensitySequence> {
    require_finite_index(kind)?;
    let ctx = k_sub.ctx();
    let xd = ctx.x_depths();
    let n = match x_depth(k_sub) {
        Some(n) if k_sub.contains(&ctx.x_pow(pow(ctx.p(), n as u32) as i64)) => Some(n as u64),
        Some(_) => return Err(Error::Invalid(format!("{name} is not ⟨x^(p^n)⟩ times a subgroup of H"))),
        None => None,
    };
    let s = series(ctx, kind, opts)?;
    let h_log = ctx.log_order() - xd;
    let kh = k_sub.tail(xd);
    let mut terms = Vec::new();
    for i in section_levels(kind, ctx.p(), ctx.k(), i_max) {
        let e = x_exponent(kind, ctx.p(), i)?;
        check_x_part(&s, i, e)?;
        let sh = s.term(i).tail(xd);
        let top = n.map_or(0, |n| e.saturating_sub(n));
        let num = top as usize + join(&kh, &sh).log_order() - sh.log_order();
        let den = e as usize + h_log - sh.log_order();
        terms.push(DensityTerm::new(i, num, den, true));
    }
    Ok(DensitySequence { subgroup: name.into(), kind, terms, registered_limit: None, cutoff: None })
}

/// `log |(A∩Z)(S_i∩Z) : S_i∩Z| / log |Z : S_i∩Z|` along the same levels as
/// [`section_density`].
fn relative_central_density(
    a: &EchelonSubgroup,
    name: &str,
    kind: SeriesKind,
    opts: &SeriesOptions,
) -> Result<DensitySequence> {
    let ctx = a.ctx();
    let az = intersect_central(a)?;
    let z = central_z(ctx);
    let tail = ctx.central_tail_depth();
    let s = series(ctx, kind, opts)?;
    let mut terms = Vec::new();
    for i in section_levels(kind, ctx.p(), ctx.k(), None) {
        let sz = s.term(i).tail(tail);
        let den = z.log_order() - sz.log_order();
        if den > 0 {
            terms.push(DensityTerm::new(i, join(&az, &sz).log_order() - sz.log_order(), den, true));
        }
    }
    Ok(DensitySequence { subgroup: name.into(), kind, terms, registered_limit: None, cutoff: None })
}

/// Densities of `K = ⟨x^{p^n}, y_0, ..., y_{m-1}⟩` and of `K ∩ Z` inside `Z`.
#[derive(Clone, Debug, Serialize)]
pub struct SectionKResult {
    pub k: u32,
    pub k_density: DensitySequence,
    pub kz_density: DensitySequence,
}

fn section_opts(kind: SeriesKind) -> SeriesOptions {
    match kind {
        SeriesKind::Jennings => SeriesOptions { jennings: JenningsMethod::ClosedForm, ..Default::default() },
        _ => SeriesOptions::default(),
    }
}

/// The subgroup `⟨x^{p^n}, y_0, ..., y_{m-1}⟩` of `G_k`, with `1 ≤ m < p^n / 2`.
pub fn section_k_density(n: u32, m: usize, p: u64, kind: SeriesKind, k: u32) -> Result<SectionKResult> {
    if m == 0 || 2 * m as u64 >= pow(p, n) {
        return Err(Error::Invalid(format!("need 1 ≤ m < p^n/2 (n = {n}, m = {m}, p = {p})")));
    }
    let ctx = GroupCtx::g(p, k)?;
    let kk = k_section(&ctx, n, m);
    let opts = section_opts(kind);
    let name = format!("K(n={n},m={m})");
    let mut k_density = section_density(&kk, &name, kind, &opts, None)?;
    if kind == SeriesKind::LowerP {
        k_density.registered_limit = Some(super::ratio(2 * pow(p, n) + 4 * m as u64 - 1, 5 * pow(p, n)));
    }
    let mut kz_density = relative_central_density(&kk, &format!("{name} ∩ Z"), kind, &opts)?;
    kz_density.registered_limit = Some(super::ratio(2 * m as u64 - 1, pow(p, n)));
    Ok(SectionKResult { k, k_density, kz_density })
}

/// Densities of `K_{n,m} = ⟨x^{p^n}, [y,x], ..., [y,x,...,x]⟩` in `W_k`.
pub fn wreath_k_density(n: u32, m: usize, p: u64, kind: SeriesKind, k: u32) -> Result<DensitySequence> {
    let ctx = GroupCtx::w(p, k)?;
    let kk = k_wreath(&ctx, n, m);
    let mut seq = section_density(&kk, &format!("K_{{{n},{m}}}"), kind, &section_opts(kind), None)?;
    let pn = pow(p, n);
    seq.registered_limit = Some(match kind {
        SeriesKind::LowerP => super::ratio(pn + m as u64, 2 * pn),
        _ => super::ratio(m as u64, pn),
    });
    Ok(seq)
}

type Value = (usize, usize);

fn level_values(
    ctx: &GroupCtx,
    build: &dyn Fn(&GroupCtx) -> Result<EchelonSubgroup>,
    kind: SeriesKind,
    opts: &SeriesOptions,
    levels: &[usize],
) -> Result<Vec<Value>> {
    let s = series(ctx, kind, opts)?;
    let k = build(ctx)?;
    Ok(levels
        .iter()
        .map(|&i| {
            let t = s.term(i);
            (join(&k, &t).log_order() - t.log_order(), ctx.log_order() - t.log_order())
        })
        .collect())
}

/// Density terms for levels `first+1 ..= i_max`, each read off the first
/// quotient `k` whose numerator and denominator agree with quotient `k+1`.
/// Stops at the first level that cannot be certified with `k ≤ k_max`.
#[allow(clippy::too_many_arguments)]
pub fn density_terms(
    build: &dyn Fn(&GroupCtx) -> Result<EchelonSubgroup>,
    name: &str,
    family: Family,
    p: u64,
    kind: SeriesKind,
    i_max: usize,
    k_max: u32,
    opts: &SeriesOptions,
) -> Result<DensitySequence> {
    require_finite_index(kind)?;
    let levels: Vec<usize> = (kind.first_level() + 1..=i_max).collect();
    let mut certified: Vec<Option<Value>> = vec![None; levels.len()];
    let mut prev: Option<Vec<Value>> = None;
    let mut failure = None;
    for k in 1..=k_max {
        let ctx = GroupCtx::new(GroupParams::new(family, p, k)?)?;
        let cur = match level_values(&ctx, build, kind, opts, &levels) {
            Ok(v) => v,
            Err(e @ (Error::Budget { .. } | Error::TooLarge(_))) => {
                failure = Some(format!("stopped at k = {k}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        };
        if let Some(prev) = &prev {
            for (j, c) in certified.iter_mut().enumerate() {
                if c.is_none() && prev[j] == cur[j] {
                    *c = Some(prev[j]);
                }
            }
        }
        if certified.iter().all(Option::is_some) {
            break;
        }
        prev = Some(cur);
    }
    let terms: Vec<DensityTerm> = levels
        .iter()
        .zip(&certified)
        .map_while(|(&i, c)| c.map(|(num, den)| DensityTerm::new(i, BigInt::from(num), BigInt::from(den), true)))
        .collect();
    let cutoff = (terms.len() < levels.len()).then(|| {
        let level = levels[terms.len()];
        failure.unwrap_or_else(|| format!("level {level} not stable for k ≤ {k_max}"))
    });
    let target = match name {
        "Z" => Some(Target::Z),
        "H" | "base" => Some(Target::H),
        _ => None,
    };
    let registered = match (family, target) {
        (Family::Gk, Some(t)) => registered_limit(kind, t, p),
        _ => None,
    };
    Ok(DensitySequence { subgroup: name.into(), kind, terms, registered_limit: registered, cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hausdorff::closed_form_sequence;

    #[test]
    fn section_method_matches_direct_terms() {
        let ctx = GroupCtx::g(3, 2).unwrap();
        let k = k_section(&ctx, 1, 1);
        let sec = section_density(&k, "K", SeriesKind::LowerP, &SeriesOptions::exact(), Some(4)).unwrap();
        let direct = density_terms(
            &|c: &GroupCtx| Ok(k_section(c, 1, 1)),
            "K",
            Family::Gk,
            3,
            SeriesKind::LowerP,
            4,
            4,
            &SeriesOptions::exact(),
        )
        .unwrap();
        for t in &direct.terms {
            assert_eq!(sec.term(t.level).map(|s| &s.value), Some(&t.value), "level {}", t.level);
        }
    }

    #[test]
    fn base_group_matches_closed_form_along_lower_p() {
        let ctx = GroupCtx::g(3, 2).unwrap();
        let base = EchelonSubgroup::full(&ctx).tail(ctx.x_depths());
        let sec = section_density(&base, "H", SeriesKind::LowerP, &SeriesOptions::exact(), None).unwrap();
        let closed = closed_form_sequence(SeriesKind::LowerP, Target::H, 3, 10).unwrap();
        for t in &sec.terms {
            assert_eq!(Some(&t.value), closed.term(t.level).map(|c| &c.value), "level {}", t.level);
        }
    }

    #[test]
    fn full_group_has_density_one() {
        let ctx = GroupCtx::w(3, 2).unwrap();
        let seq = section_density(&EchelonSubgroup::full(&ctx), "G", SeriesKind::Frattini, &SeriesOptions::exact(), None)
            .unwrap();
        assert!(seq.terms.iter().all(|t| t.numerator == t.denominator));
    }
}

//! Power subgroups `A^{p^m} = ⟨a^{p^m} : a ∈ A⟩`.
//!
//! Exact mode enumerates a transversal of `A` modulo a central subgroup of
//! exponent `p`, since `(a z)^{p^m} = a^{p^m}` for such `z`. In `W_k` the
//! power map is affine on cosets of the base group, which reduces the
//! enumeration to the top group.

use serde::{Deserialize, Serialize};

use super::{generate, intersect_zk, join, EchelonSubgroup, Echelon, PcGroup};
use crate::arith::{checked_pow, pow};
use crate::collector::Element;
use crate::error::{Error, Result};

/// Environment variable overriding the enumeration budget (as `log_p`).
pub const BUDGET_ENV: &str = "PGROUP_BUDGET_LOG";

/// Default number of transversal elements enumerated in exact mode.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Limit on the size of enumerated transversals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Budget {
    /// At most this many elements.
    Count(u64),
    /// At most `p^n` elements.
    LogP(u32),
}

impl Default for Budget {
    fn default() -> Self {
        Budget::Count(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// The default budget, overridden by `PGROUP_BUDGET_LOG` when set.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .map(Budget::LogP)
            .unwrap_or_default()
    }

    /// Whether `p^r` elements may be enumerated.
    pub fn allows(&self, p: u64, r: usize) -> bool {
        match *self {
            Budget::LogP(n) => r as u64 <= n as u64,
            Budget::Count(c) => u32::try_from(r).ok().and_then(|r| checked_pow(p, r)).is_some_and(|n| n <= c),
        }
    }

    pub fn check(&self, p: u64, r: usize) -> Result<()> {
        if self.allows(p, r) {
            Ok(())
        } else {
            let budget = match *self {
                Budget::Count(c) => c,
                Budget::LogP(n) => checked_pow(p, n).unwrap_or(u64::MAX),
            };
            Err(Error::Budget { p, log: r as u32, budget })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AgemoMode {
    Exact,
    Formula,
    Auto,
}

/// A power subgroup together with a flag telling whether it was enumerated
/// exactly or taken from the closed-form bound.
#[derive(Clone, Debug)]
pub struct AgemoResult {
    pub subgroup: EchelonSubgroup,
    pub exact: bool,
}

/// Central subgroup of exponent `p` inside `a` used to shrink transversals.
fn central_part(a: &EchelonSubgroup) -> Result<EchelonSubgroup> {
    let ctx = a.ctx();
    if ctx.is_g() {
        intersect_zk(a)
    } else {
        Ok(a.tail(ctx.depth_count() - 1))
    }
}

/// Depths of `a` not occupied by the subgroup `u <= a`.
fn free_depths(a: &EchelonSubgroup, u: &EchelonSubgroup) -> Vec<usize> {
    let used = u.depths();
    a.depths().into_iter().filter(|d| !used.contains(d)).collect()
}

/// Size (as `log_p`) of the transversal exact mode would enumerate.
pub fn transversal_log(a: &EchelonSubgroup) -> Result<usize> {
    if !a.ctx().is_g() {
        return Ok(a.depths().into_iter().filter(|&d| d < a.ctx().x_depths()).count());
    }
    Ok(free_depths(a, &central_part(a)?).len())
}

/// `⟨a^{p^m} : a ∈ A⟩`.
pub fn agemo(a: &EchelonSubgroup, m: u32, mode: AgemoMode, budget: &Budget) -> Result<AgemoResult> {
    if m == 0 {
        return Ok(AgemoResult { subgroup: a.clone(), exact: true });
    }
    match mode {
        AgemoMode::Exact => Ok(AgemoResult { subgroup: agemo_exact(a, m, budget)?, exact: true }),
        AgemoMode::Formula => Ok(AgemoResult { subgroup: agemo_formula(a, m)?, exact: false }),
        AgemoMode::Auto => {
            if budget.allows(a.ctx().p(), transversal_log(a)?) {
                agemo(a, m, AgemoMode::Exact, budget)
            } else {
                agemo(a, m, AgemoMode::Formula, budget)
            }
        }
    }
}

fn agemo_exact(a: &EchelonSubgroup, m: u32, budget: &Budget) -> Result<EchelonSubgroup> {
    let ctx = a.ctx();
    if !ctx.is_g() {
        return Ok(wreath_powers(a, m, &EchelonSubgroup::trivial(ctx)));
    }
    let u = central_part(a)?;
    enumerate_powers(a, &u, m, EchelonSubgroup::trivial(ctx), budget)
}

/// Sifts `t^{p^m}` for every `t` in the transversal of `a` modulo `u` into `start`.
fn enumerate_powers(
    a: &EchelonSubgroup,
    u: &EchelonSubgroup,
    m: u32,
    start: EchelonSubgroup,
    budget: &Budget,
) -> Result<EchelonSubgroup> {
    let ctx = a.ctx().clone();
    let free = free_depths(a, u);
    budget.check(ctx.p(), free.len())?;
    let n = pow(ctx.p(), m);
    let mut ech = start.echelon().clone();
    a.echelon().for_each_product(&ctx, &free, |t| {
        let pw = PcGroup::pow(&ctx, t, n);
        if !ech.contains(&ctx, &pw) {
            ech.close(&ctx, vec![pw], &[]);
        }
    });
    Ok(EchelonSubgroup::from_echelon(&ctx, ech))
}

/// Exact power subgroup in `W_k`, joined with `extra`.
///
/// For `g = (a, f)` and a base element `h`, `(g h)^n = g^n (h S)` where
/// `S = 1 + (1+t)^a + ... + (1+t)^{(n-1)a}`.
fn wreath_powers(a: &EchelonSubgroup, m: u32, extra: &EchelonSubgroup) -> EchelonSubgroup {
    let ctx = a.ctx().clone();
    let xd = ctx.x_depths();
    let n = pow(ctx.p(), m);
    let top: Vec<usize> = a.depths().into_iter().filter(|&d| d < xd).collect();
    let v = a.tail(xd);
    let vbasis = v.basis();
    let ideal = vbasis.iter().all(|b| v.contains(&ctx.conj(b, &ctx.x())));
    let mut gens: Vec<Element> = Vec::new();
    let mut sums: Vec<(u64, Vec<u8>)> = Vec::new();
    a.echelon().for_each_product(&ctx, &top, |t| {
        gens.push(PcGroup::pow(&ctx, t, n));
        if !sums.iter().any(|(x, _)| *x == t.a) {
            let mut unit = ctx.identity();
            unit.a = t.a;
            unit.body[0] = 1;
            sums.push((t.a, ctx.pow(&unit, n as i64).body));
        }
    });
    let shifted = |h: &Element, s: &[u8]| -> Element {
        // (0, h) * s, computed as a product in the polynomial ring.
        let q = ctx.q();
        let p = ctx.p() as u32;
        let mut acc = vec![0u32; q];
        for (i, &hi) in h.body.iter().enumerate() {
            if hi == 0 {
                continue;
            }
            for (j, &sj) in s.iter().enumerate() {
                if i + j >= q {
                    break;
                }
                acc[i + j] += hi as u32 * sj as u32;
            }
        }
        Element { a: 0, body: acc.into_iter().map(|c| (c % p) as u8).collect() }
    };
    if ideal {
        let val = sums.iter().filter_map(|(_, s)| s.iter().position(|&c| c != 0)).min();
        if let Some(val) = val {
            let mut mono = vec![0u8; ctx.q()];
            mono[val] = 1;
            gens.extend(vbasis.iter().map(|h| shifted(h, &mono)));
        }
    } else {
        for (_, s) in &sums {
            gens.extend(vbasis.iter().map(|h| shifted(h, s)));
        }
    }
    gens.retain(|g| !g.is_identity());
    let mut ech: Echelon<Element> = extra.echelon().clone();
    ech.close(&ctx, gens, &[]);
    EchelonSubgroup::from_echelon(&ctx, ech)
}

/// Closed-form bound `⟨x^{p^m}⟩ γ_{p^m}` (with `y^p` added for `m = 1` in `G_k`);
/// available for the whole group and odd `p` only.
fn agemo_formula(a: &EchelonSubgroup, m: u32) -> Result<EchelonSubgroup> {
    let ctx = a.ctx();
    if !a.is_full() {
        return Err(Error::NoFormula("power subgroups of proper subgroups".into()));
    }
    if ctx.p() == 2 {
        return Err(Error::NoFormula("power subgroups for p = 2".into()));
    }
    let pm = checked_pow(ctx.p(), m).unwrap_or(u64::MAX);
    let gamma = crate::series::gamma_term(ctx, pm.min(usize::MAX as u64) as usize);
    let mut gens = Vec::new();
    if pm < ctx.x_order() {
        gens.push(ctx.x_pow(pm as i64));
    }
    if m == 1 && ctx.is_g() {
        gens.push(ctx.y_p());
    }
    Ok(join(&generate(ctx, &gens), &gamma))
}

/// `⟨a^{p^m} : a ∈ A⟩ N` for a normal subgroup `N` containing `[A, A]`.
///
/// The power map is a homomorphism on the abelian group `AN/N`, so powers of
/// the basis suffice.
pub fn agemo_mod_abelian(a: &EchelonSubgroup, m: u32, n: &EchelonSubgroup) -> EchelonSubgroup {
    let ctx = a.ctx();
    let e = pow(ctx.p(), m) as i64;
    let gens: Vec<Element> = a.basis().iter().map(|b| ctx.pow(b, e)).collect();
    super::extend(n, gens, &[])
}

/// `⟨a^{p^m} : a ∈ A⟩ N` for a normal subgroup `N`.
pub fn agemo_mod(a: &EchelonSubgroup, m: u32, n: &EchelonSubgroup, budget: &Budget) -> Result<EchelonSubgroup> {
    let ctx = a.ctx();
    let basis = a.basis();
    let depths = a.depths();
    let quotient_abelian = basis.iter().enumerate().all(|(i, b)| {
        basis[..i].iter().enumerate().all(|(j, c)| {
            PcGroup::commute_hint(ctx, depths[i], depths[j]) || n.contains(&ctx.comm(b, c))
        })
    });
    if quotient_abelian {
        return Ok(agemo_mod_abelian(a, m, n));
    }
    if !ctx.is_g() {
        return Ok(wreath_powers(a, m, n));
    }
    let c = central_part(a)?;
    let u = if n.is_subgroup_of(a) { join(n, &c) } else { c };
    enumerate_powers(a, &u, m, n.clone(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collector::GroupCtx;

    #[test]
    fn budget_limits() {
        assert!(Budget::Count(27).allows(3, 3));
        assert!(!Budget::Count(26).allows(3, 3));
        assert!(Budget::LogP(5).allows(7, 5));
        assert!(!Budget::LogP(5).allows(7, 6));
        assert!(matches!(Budget::Count(10).check(3, 3), Err(Error::Budget { .. })));
    }

    #[test]
    fn ninth_powers_of_g1() {
        let ctx = GroupCtx::g(3, 1).unwrap();
        let full = EchelonSubgroup::full(&ctx);
        let r = agemo(&full, 2, AgemoMode::Exact, &Budget::default()).unwrap();
        assert!(ctx.x_pow(9).is_identity());
        assert!(r.subgroup.is_trivial());
    }
}

//! The simplified power and commutator collection congruences, valid when
//! `γ_2(G)^p = 1` and `[γ_2(G), γ_2(G)]` is central.

use serde::{Deserialize, Serialize};

use crate::arith::pow;
use crate::collector::{eval_word, Element, GroupCtx, Word};
use crate::error::{Error, Result};
use crate::series::gamma_term;
use crate::subgroups::{agemo, commutator_subgroup, normal_closure, AgemoMode, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CongruenceKind {
    /// `(ab)^{p^r} ≡ a^{p^r} b^{p^r} [b, a, ..., a]` modulo `L(a, b)`.
    Power,
    /// `[a^{p^r}, b] ≡ [a, b, a, ..., a]` modulo `M(a, b)`.
    Commutator,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub a: String,
    pub b: String,
    pub r: u32,
    pub kind: CongruenceKind,
    /// `log_p` of the normal subgroup the congruence is taken modulo.
    pub modulus_log: usize,
    /// Whether both sides are equal without reduction.
    pub equal_outright: bool,
    pub holds: bool,
}

/// Checks `γ_2^p = 1` and `[γ_2, γ_2] ⊆ Z(G)`.
pub fn hypotheses_hold(ctx: &GroupCtx) -> Result<bool> {
    let g2 = gamma_term(ctx, 2);
    let exp_p = agemo(&g2, 1, AgemoMode::Exact, &Budget::default())?.subgroup.is_trivial();
    let d = commutator_subgroup(&g2, &g2);
    let central = d.basis().iter().all(|z| [ctx.x(), ctx.y()].iter().all(|g| ctx.comm(z, g).is_identity()));
    Ok(exp_p && central)
}

/// `[u, a, ..., a]` with `n` copies of `a`.
fn comm_tail(ctx: &GroupCtx, u: &Element, a: &Element, n: usize) -> Element {
    (0..n).fold(u.clone(), |acc, _| ctx.comm(&acc, a))
}

/// Left-normed commutators in `{a, b}` of weight `w` with at least two `b` entries.
fn left_normed(ctx: &GroupCtx, a: &Element, b: &Element, w: usize, out: &mut Vec<Element>) {
    for mask in 0u64..(1u64 << w) {
        if mask.count_ones() < 2 || (mask & 1) == ((mask >> 1) & 1) {
            continue;
        }
        let letter = |i: usize| if (mask >> i) & 1 == 1 { b } else { a };
        let mut c = ctx.comm(letter(0), letter(1));
        for i in 2..w {
            c = ctx.comm(&c, letter(i));
        }
        if !c.is_identity() {
            out.push(c);
        }
    }
}

fn nilpotency_class(ctx: &GroupCtx) -> usize {
    (1..).find(|&i| gamma_term(ctx, i + 1).is_trivial()).unwrap()
}

/// Evaluates one congruence for the words `a`, `b` at exponent `p^r`.
pub fn check_congruence(ctx: &GroupCtx, a: &Word, b: &Word, r: u32, kind: CongruenceKind) -> Result<CongruenceReport> {
    if ctx.p() == 2 {
        return Err(Error::Invalid("the simplified congruences need an odd prime".into()));
    }
    if !ctx.is_g() {
        return Err(Error::Invalid("the congruences are checked in G_k contexts".into()));
    }
    if !hypotheses_hold(ctx)? {
        return Err(Error::Invalid(format!("{}: γ_2 is not of exponent p with central derived subgroup", ctx.params())));
    }
    let (ea, eb) = (eval_word(a, ctx), eval_word(b, ctx));
    let n = pow(ctx.p(), r);
    let class = nilpotency_class(ctx);
    let (lhs, rhs, modulus) = match kind {
        CongruenceKind::Power => {
            let lhs = ctx.pow(&ctx.mul(&ea, &eb), n as i64);
            let tail = comm_tail(ctx, &ctx.comm(&eb, &ea), &ea, n as usize - 2);
            let rhs = ctx.mul(&ctx.mul(&ctx.pow(&ea, n as i64), &ctx.pow(&eb, n as i64)), &tail);
            let mut gens = Vec::new();
            for w in (n as usize).max(2)..=class {
                left_normed(ctx, &ea, &eb, w, &mut gens);
            }
            (lhs, rhs, normal_closure(ctx, &gens))
        }
        CongruenceKind::Commutator => {
            let lhs = ctx.comm(&ctx.pow(&ea, n as i64), &eb);
            let rhs = comm_tail(ctx, &ctx.comm(&ea, &eb), &ea, n as usize - 1);
            let mut gens = Vec::new();
            for i in 0..=class {
                for j in 0..=class {
                    if i + j >= n as usize {
                        let u = comm_tail(ctx, &eb, &ea, i);
                        let v = comm_tail(ctx, &eb, &ea, j);
                        gens.push(ctx.comm(&u, &v));
                    }
                }
            }
            (lhs, rhs, normal_closure(ctx, &gens))
        }
    };
    let diff = ctx.mul(&lhs, &ctx.inv(&rhs));
    Ok(CongruenceReport {
        a: a.to_string(),
        b: b.to_string(),
        r,
        kind,
        modulus_log: modulus.log_order(),
        equal_outright: diff.is_identity(),
        holds: modulus.contains(&diff),
    })
}

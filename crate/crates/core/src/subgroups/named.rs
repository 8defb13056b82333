use super::{generate, normal_closure, EchelonSubgroup};
use crate::arith::pow;
use crate::collector::{Element, GroupCtx};

/// `⟨y^p, e_1, ..., e_E⟩`, the image of the centre of the infinite group
/// (trivial in `W_k`).
pub fn central_z(ctx: &GroupCtx) -> EchelonSubgroup {
    if !ctx.is_g() {
        return EchelonSubgroup::trivial(ctx);
    }
    let mut gens = vec![ctx.y_p()];
    gens.extend((1..=ctx.e_count()).map(|j| ctx.e_j(j)));
    generate(ctx, &gens)
}

/// `Z_k = ⟨x^{p^k}, y^p, e_1, ..., e_E⟩`, the kernel of `G_k -> W_k`.
pub fn zk_subgroup(ctx: &GroupCtx) -> EchelonSubgroup {
    if !ctx.is_g() {
        return EchelonSubgroup::trivial(ctx);
    }
    let mut gens = vec![ctx.x_pow(ctx.q() as i64), ctx.y_p()];
    gens.extend((1..=ctx.e_count()).map(|j| ctx.e_j(j)));
    generate(ctx, &gens)
}

/// `H_k = ⟨x^{p^k}, y⟩^G` in `G_k`; the base group in `W_k`.
pub fn h_subgroup(ctx: &GroupCtx) -> EchelonSubgroup {
    let mut gens = vec![ctx.y()];
    if ctx.is_g() {
        gens.push(ctx.x_pow(ctx.q() as i64));
    }
    normal_closure(ctx, &gens)
}

/// `⟨x^{p^n}, [y,x], [y,x,x], ..., [y,x,...,x]⟩` with `m` commutators.
pub fn k_wreath(ctx: &GroupCtx, n: u32, m: usize) -> EchelonSubgroup {
    let mut gens = vec![ctx.x_pow(pow(ctx.p(), n) as i64)];
    let mut c = ctx.y();
    for _ in 0..m {
        c = ctx.comm(&c, &ctx.x());
        gens.push(c.clone());
    }
    generate(ctx, &gens)
}

/// `⟨x^{p^n}, y_0, y_1, ..., y_{m-1}⟩`.
pub fn k_section(ctx: &GroupCtx, n: u32, m: usize) -> EchelonSubgroup {
    let mut gens = vec![ctx.x_pow(pow(ctx.p(), n) as i64)];
    gens.extend((0..m).map(|i| ctx.y_i(i)));
    generate(ctx, &gens)
}

/// `w = y_{q-1} ... y_1 y_0` and `w' = y_{q-1}^-1 ... y_1^-1 y_0^-1` with `q = p^k`.
pub fn w_pair(ctx: &GroupCtx) -> (Element, Element) {
    let (mut w, mut w2) = (ctx.identity(), ctx.identity());
    for i in (0..ctx.q()).rev() {
        let yi = ctx.y_i(i);
        w = ctx.mul(&w, &yi);
        w2 = ctx.mul(&w2, &ctx.inv(&yi));
    }
    (w, w2)
}

/// `⟨x^{p^k}, w, v⟩` with `v = w w'` for odd `p`, and `⟨x^{2^k}, w, [w, x]⟩`
/// for `p = 2`.
pub fn power_reference(ctx: &GroupCtx) -> EchelonSubgroup {
    let (w, w2) = w_pair(ctx);
    let third = if ctx.p() == 2 { ctx.comm(&w, &ctx.x()) } else { ctx.mul(&w, &w2) };
    generate(ctx, &[ctx.x_pow(ctx.q() as i64), w, third])
}

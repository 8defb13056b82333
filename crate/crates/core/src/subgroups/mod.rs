//! Subgroups as induced generating sequences: membership, orders, joins,
//! normal closures, commutator subgroups, power subgroups, images and kernels.

mod agemo;
mod echelon;
mod named;

pub use agemo::{agemo, agemo_mod, agemo_mod_abelian, transversal_log, AgemoMode, AgemoResult, Budget, BUDGET_ENV, DEFAULT_BUDGET};
pub use echelon::{Echelon, PairGroup, PcGroup, Row};
pub use named::{central_z, h_subgroup, k_section, k_wreath, power_reference, w_pair, zk_subgroup};

use std::fmt;

use crate::collector::{Element, GroupCtx, Hom};
use crate::error::Result;

/// A subgroup of a context, stored as an induced generating sequence.
#[derive(Clone)]
pub struct EchelonSubgroup {
    ctx: GroupCtx,
    ech: Echelon<Element>,
}

impl fmt::Debug for EchelonSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EchelonSubgroup({:?}, log {}, depths {:?})", self.ctx, self.log_order(), self.depths())
    }
}

impl PartialEq for EchelonSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.log_order() == other.log_order() && self.is_subgroup_of(other)
    }
}

impl EchelonSubgroup {
    pub fn trivial(ctx: &GroupCtx) -> Self {
        EchelonSubgroup { ctx: ctx.clone(), ech: Echelon::empty(ctx.depth_count()) }
    }

    /// The whole group, with the polycyclic generators as basis.
    pub fn full(ctx: &GroupCtx) -> Self {
        let rows = (0..ctx.depth_count()).map(|d| ctx.pc_generator(d)).collect();
        EchelonSubgroup { ctx: ctx.clone(), ech: Echelon::from_rows(ctx, rows) }
    }

    pub(crate) fn from_echelon(ctx: &GroupCtx, ech: Echelon<Element>) -> Self {
        EchelonSubgroup { ctx: ctx.clone(), ech }
    }

    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn echelon(&self) -> &Echelon<Element> {
        &self.ech
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> usize {
        self.ech.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ech.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.log_order() == self.ctx.log_order()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.ech.depths()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.ech.basis()
    }

    pub fn sift(&self, g: &Element) -> Element {
        self.ech.sift(&self.ctx, g)
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.ech.contains(&self.ctx, g)
    }

    pub fn is_subgroup_of(&self, other: &EchelonSubgroup) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Whether conjugation by `x` and `y` preserves the subgroup.
    pub fn is_normal(&self) -> bool {
        let gens = [self.ctx.x(), self.ctx.y()];
        self.basis().iter().all(|b| gens.iter().all(|g| self.contains(&self.ctx.conj(b, g))))
    }

    /// `self ∩ {g : depth(g) >= d}`.
    pub fn tail(&self, d: usize) -> EchelonSubgroup {
        let rows = self.depths().into_iter().filter(|&e| e >= d).map(|e| self.ech.row(e).unwrap().elt().clone()).collect();
        EchelonSubgroup { ctx: self.ctx.clone(), ech: Echelon::from_rows(&self.ctx, rows) }
    }

    /// Every element, in a deterministic order.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::new();
        self.ech.for_each_product(&self.ctx, &self.depths(), |g| out.push(g.clone()));
        out
    }
}

/// Smallest subgroup containing `gens`.
pub fn generate(ctx: &GroupCtx, gens: &[Element]) -> EchelonSubgroup {
    let mut ech = Echelon::empty(ctx.depth_count());
    ech.close(ctx, gens.to_vec(), &[]);
    EchelonSubgroup::from_echelon(ctx, ech)
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(ctx: &GroupCtx, gens: &[Element]) -> EchelonSubgroup {
    let mut ech = Echelon::empty(ctx.depth_count());
    ech.close(ctx, gens.to_vec(), &[ctx.x(), ctx.y()]);
    EchelonSubgroup::from_echelon(ctx, ech)
}

/// Extends `a` by further generators, closing under conjugation by `conj_by`.
pub fn extend(a: &EchelonSubgroup, gens: Vec<Element>, conj_by: &[Element]) -> EchelonSubgroup {
    let mut ech = a.ech.clone();
    ech.close(&a.ctx, gens, conj_by);
    EchelonSubgroup::from_echelon(&a.ctx, ech)
}

/// `⟨A, B⟩`.
pub fn join(a: &EchelonSubgroup, b: &EchelonSubgroup) -> EchelonSubgroup {
    assert_eq!(a.ctx, b.ctx, "join across contexts");
    let (big, small) = if a.log_order() >= b.log_order() { (a, b) } else { (b, a) };
    extend(big, small.basis(), &[])
}

/// `⟨A, B⟩` for normal `A`, `B`; the result is normal and closed under conjugation.
pub fn join_normal(a: &EchelonSubgroup, b: &EchelonSubgroup) -> EchelonSubgroup {
    let (big, small) = if a.log_order() >= b.log_order() { (a, b) } else { (b, a) };
    extend(big, small.basis(), &[a.ctx.x(), a.ctx.y()])
}

/// `[A, B]`, the subgroup generated by commutators of elements of `A` and `B`.
pub fn commutator_subgroup(a: &EchelonSubgroup, b: &EchelonSubgroup) -> EchelonSubgroup {
    assert_eq!(a.ctx, b.ctx, "commutator across contexts");
    let ctx = &a.ctx;
    let sb = if b.is_full() { vec![ctx.x(), ctx.y()] } else { b.basis() };
    let sa = if a.is_full() { vec![ctx.x(), ctx.y()] } else { a.basis() };
    let comms: Vec<Element> = sa.iter().flat_map(|u| sb.iter().map(move |v| ctx.comm(u, v))).collect();
    let conj_by: Vec<Element> = if (a.is_full() || a.is_normal()) && (b.is_full() || b.is_normal()) {
        vec![ctx.x(), ctx.y()]
    } else {
        sa.iter().chain(sb.iter()).cloned().collect()
    };
    let mut ech = Echelon::empty(ctx.depth_count());
    ech.close(ctx, comms, &conj_by);
    EchelonSubgroup::from_echelon(ctx, ech)
}

/// `[A, G]` for a normal subgroup `A`.
pub fn commutator_with_group(a: &EchelonSubgroup) -> EchelonSubgroup {
    let ctx = &a.ctx;
    let gens = [ctx.x(), ctx.y()];
    let comms: Vec<Element> = a.basis().iter().flat_map(|u| gens.iter().map(move |v| ctx.comm(u, v))).collect();
    normal_closure(ctx, &comms)
}

/// Image and kernel of the restriction of `hom` to `a`.
pub fn image_and_kernel(a: &EchelonSubgroup, hom: &Hom) -> Result<(EchelonSubgroup, EchelonSubgroup)> {
    if hom.source() != a.ctx() {
        return Err(crate::Error::BadHom(format!(
            "subgroup lives in {} but the map starts at {}",
            a.ctx().params(),
            hom.source().params()
        )));
    }
    let (q, g) = (hom.target(), hom.source());
    let pair = PairGroup { left: q, right: g };
    let gens: Vec<(Element, Element)> = a.basis().into_iter().map(|b| (hom.apply(&b), b)).collect();
    let mut ech = Echelon::empty(pair.depth_count());
    ech.close(&pair, gens, &[]);
    let off = q.depth_count();
    let mut img_rows = Vec::new();
    let mut ker_rows = Vec::new();
    for d in ech.depths() {
        let (l, r) = ech.row(d).unwrap().elt().clone();
        if d < off {
            img_rows.push(l);
        } else {
            ker_rows.push(r);
        }
    }
    Ok((
        EchelonSubgroup::from_echelon(q, Echelon::from_rows(q, img_rows)),
        EchelonSubgroup::from_echelon(g, Echelon::from_rows(g, ker_rows)),
    ))
}

pub fn image(a: &EchelonSubgroup, hom: &Hom) -> Result<EchelonSubgroup> {
    Ok(image_and_kernel(a, hom)?.0)
}

pub fn kernel_restricted(a: &EchelonSubgroup, hom: &Hom) -> Result<EchelonSubgroup> {
    Ok(image_and_kernel(a, hom)?.1)
}

/// `A ∩ Z`, where `Z = ⟨y^p, e_1, ..., e_E⟩` is the image of the centre of
/// the infinite group; computed through the kernel of `G_k -> W_k`.
pub fn intersect_central(a: &EchelonSubgroup) -> Result<EchelonSubgroup> {
    let ctx = a.ctx();
    if !ctx.is_g() {
        return Err(crate::Error::Invalid("intersect_central needs a G_k context".into()));
    }
    let ker = kernel_restricted(a, &Hom::wreath(ctx)?)?;
    Ok(ker.tail(ctx.central_tail_depth()))
}

/// `A ∩ Z_k` with `Z_k = ⟨x^{p^k}, y^p, e_1, ..., e_E⟩`.
pub fn intersect_zk(a: &EchelonSubgroup) -> Result<EchelonSubgroup> {
    kernel_restricted(a, &Hom::wreath(a.ctx())?)
}

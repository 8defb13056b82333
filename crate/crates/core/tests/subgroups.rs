mod common;

use common::{g, random_elements, w};
use pgroup::collector::{parse_word, eval_word, GroupCtx, Hom};
use pgroup::oracle::{index_map, ElementSet, EnumeratedGroup, DEFAULT_ORACLE_BUDGET};
use pgroup::series::gamma_term;
use pgroup::subgroups::{
    agemo, central_z, commutator_subgroup, generate, h_subgroup, image, intersect_central, join, kernel_restricted,
    normal_closure, power_reference, zk_subgroup, AgemoMode, Budget, EchelonSubgroup,
};

struct Oracle {
    group: EnumeratedGroup,
    index: std::collections::HashMap<pgroup::Element, u32>,
}

impl Oracle {
    fn new(ctx: &GroupCtx) -> Self {
        let group = EnumeratedGroup::new(ctx.params(), DEFAULT_ORACLE_BUDGET).unwrap();
        let index = index_map(&group.to_engine(ctx).unwrap());
        Oracle { group, index }
    }

    fn idx(&self, e: &pgroup::Element) -> u32 {
        self.index[e]
    }

    fn set_of(&self, s: &EchelonSubgroup) -> ElementSet {
        let gens: Vec<u32> = s.basis().iter().map(|b| self.idx(b)).collect();
        self.group.closure(&gens)
    }
}

fn sorted(mut v: ElementSet) -> ElementSet {
    v.sort_unstable();
    v
}

fn word(ctx: &GroupCtx, text: &str) -> pgroup::Element {
    eval_word(&parse_word(text).unwrap(), ctx)
}

#[test]
fn sift_examples() {
    let ctx = g(3, 1);
    let z = zk_subgroup(&ctx);
    assert!(z.sift(&ctx.identity()).is_identity());
    assert!(z.sift(&ctx.e_j(1)).is_identity());
    assert!(!z.sift(&ctx.y()).is_identity());
    let o = Oracle::new(&ctx);
    let zset = o.set_of(&z);
    assert!(!zset.contains(&o.idx(&ctx.y())));
}

#[test]
fn generate_examples() {
    let ctx = g(3, 1);
    assert_eq!(ctx.order(&ctx.x()), 9);
    assert_eq!(generate(&ctx, &[ctx.x()]).log_order(), 2);
    let o = Oracle::new(&ctx);
    assert_eq!(o.group.closure(&[o.group.x()]).len(), 9);
    assert_eq!(generate(&ctx, &[]).log_order(), 0);
    assert_eq!(zk_subgroup(&g(3, 2)).log_order(), 6);
}

#[test]
fn generate_matches_brute_force_closure() {
    for ctx in [g(3, 1), g(2, 2), w(3, 2)] {
        let o = Oracle::new(&ctx);
        let elems = random_elements(&ctx, 12, 5);
        for pair in elems.chunks(2) {
            let s = generate(&ctx, pair);
            let brute = o.group.closure(&pair.iter().map(|e| o.idx(e)).collect::<Vec<_>>());
            assert_eq!(brute.len(), (ctx.p() as usize).pow(s.log_order() as u32));
            assert_eq!(sorted(o.set_of(&s)), sorted(brute));
        }
    }
}

#[test]
fn cyclic_subgroup_of_y() {
    let ctx = g(3, 1);
    let o = Oracle::new(&ctx);
    assert_eq!(o.group.closure(&[o.group.y()]).len(), 9);
    assert_eq!(generate(&ctx, &[ctx.y()]).log_order(), 2);
}

#[test]
fn normal_closure_matches_brute_force() {
    let ctx = g(3, 1);
    let o = Oracle::new(&ctx);
    let ny = normal_closure(&ctx, &[ctx.y()]);
    let brute = o.group.normal_closure(&[o.idx(&ctx.y())]);
    assert_eq!(sorted(o.set_of(&ny)), sorted(brute.clone()));
    let h = h_subgroup(&ctx);
    assert_eq!(h.log_order(), 6);
    let brute_h = o.group.normal_closure(&[o.idx(&ctx.y()), o.idx(&ctx.x_pow(3))]);
    assert_eq!(brute_h.len(), 3usize.pow(6));
    assert!(ny.is_subgroup_of(&h));
}

#[test]
fn joins() {
    let ctx = g(3, 2);
    let h = h_subgroup(&ctx);
    let z = zk_subgroup(&ctx);
    assert_eq!(join(&z, &h), h);
    assert!(join(&generate(&ctx, &[ctx.x()]), &h).is_full());
}

#[test]
fn derived_subgroup_of_g1() {
    let ctx = g(3, 1);
    let full = EchelonSubgroup::full(&ctx);
    let d = commutator_subgroup(&full, &full);
    assert_eq!(d.log_order(), 3);
    assert_eq!(d, gamma_term(&ctx, 2));
    let o = Oracle::new(&ctx);
    let all = o.group.all();
    assert_eq!(sorted(o.set_of(&d)), sorted(o.group.commutator(&all, &all)));
}

#[test]
fn agemo_against_brute_force() {
    let ctx = g(3, 1);
    let o = Oracle::new(&ctx);
    let full = EchelonSubgroup::full(&ctx);
    let all = o.group.all();
    for m in 1..=2 {
        let engine = agemo(&full, m, AgemoMode::Exact, &Budget::default()).unwrap().subgroup;
        let brute = o.group.agemo(&all, m);
        assert_eq!(sorted(o.set_of(&engine)), sorted(brute));
    }
    let ninth = agemo(&full, 2, AgemoMode::Exact, &Budget::default()).unwrap().subgroup;
    assert!(ninth.is_trivial());
    assert_eq!(o.group.agemo(&all, 2).len(), 1);
    let cubes = agemo(&full, 1, AgemoMode::Exact, &Budget::default()).unwrap().subgroup;
    assert_eq!(o.group.agemo(&all, 1).len(), 81);
    assert_eq!(cubes.log_order(), 4);
}

#[test]
fn top_agemo_for_p_two() {
    let ctx = g(2, 3);
    let top = agemo(&EchelonSubgroup::full(&ctx), 3, AgemoMode::Exact, &Budget::default()).unwrap().subgroup;
    assert_eq!(top, power_reference(&ctx));
    assert_eq!(top.log_order(), 3);
    let x8 = ctx.x_pow(8);
    assert!(top.contains(&x8));
    assert!(top.basis().iter().all(|b| ctx.order(b) == 2));
}

#[test]
fn image_and_kernel_of_wreath_map() {
    for k in 1..=2 {
        let ctx = g(3, k);
        let hom = Hom::wreath(&ctx).unwrap();
        let base = image(&h_subgroup(&ctx), &hom).unwrap();
        assert_eq!(base.log_order(), ctx.q());
        let full = EchelonSubgroup::full(&ctx);
        assert_eq!(kernel_restricted(&full, &hom).unwrap(), zk_subgroup(&ctx));
    }
}

#[test]
fn kernel_of_section_subgroup_grows() {
    let sizes: Vec<usize> = (1..=3)
        .map(|k| {
            let ctx = g(3, k);
            let kk = generate(&ctx, &[word(&ctx, "x^3"), ctx.y()]);
            let hom = Hom::wreath(&ctx).unwrap();
            kernel_restricted(&kk, &hom).unwrap().log_order()
        })
        .collect();
    assert!(sizes.windows(2).all(|s| s[0] < s[1]), "{sizes:?}");
}

#[test]
fn central_intersections() {
    let ctx = g(3, 2);
    assert_eq!(intersect_central(&gamma_term(&ctx, 2)).unwrap().log_order(), 4);
    assert_eq!(intersect_central(&zk_subgroup(&ctx)).unwrap().log_order(), 5);
    assert_eq!(intersect_central(&zk_subgroup(&ctx)).unwrap(), central_z(&ctx));
    assert!(intersect_central(&EchelonSubgroup::trivial(&ctx)).unwrap().is_trivial());
}

#[test]
fn named_subgroups_are_normal() {
    for ctx in [g(3, 1), g(3, 2), g(2, 2)] {
        assert!(zk_subgroup(&ctx).is_normal());
        assert!(h_subgroup(&ctx).is_normal());
        assert!(central_z(&ctx).is_normal());
    }
}

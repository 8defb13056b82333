use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{index_map, ElementSet, EnumeratedGroup, DEFAULT_ORACLE_BUDGET};
use crate::collector::{Element, GroupCtx};
use crate::error::Result;
use crate::series::{series, JenningsMethod, SeriesKind, SeriesOptions};
use crate::subgroups::{
    agemo, central_z, generate, h_subgroup, join, normal_closure, zk_subgroup, AgemoMode, Budget, EchelonSubgroup,
};

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
}

/// Engine against brute force on one enumerable context.
#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub group: String,
    pub order: usize,
    pub checks: Vec<CrossCheck>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_divergence(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name.as_str())
    }
}

struct Bridge<'a> {
    ctx: &'a GroupCtx,
    images: Vec<Element>,
    index: HashMap<Element, u32>,
}

impl Bridge<'_> {
    fn set_of(&self, s: &EchelonSubgroup) -> Option<ElementSet> {
        let mut v: Vec<u32> = s.elements().iter().map(|e| self.index.get(e).copied()).collect::<Option<_>>()?;
        v.sort_unstable();
        Some(v)
    }

    fn same(&self, s: &EchelonSubgroup, brute: &ElementSet) -> bool {
        s.log_order() < 64 && self.set_of(s).as_ref() == Some(brute)
    }

    fn engine(&self, g: u32) -> Element {
        self.images[g as usize].clone()
    }

    fn engine_gens(&self, gs: &[u32]) -> Vec<Element> {
        gs.iter().map(|&g| self.engine(g)).collect()
    }

    fn same_series(&self, engine: &[EchelonSubgroup], brute: &[ElementSet]) -> bool {
        engine.len() == brute.len() && engine.iter().zip(brute).all(|(e, b)| self.same(e, b))
    }
}

/// Compares the collector and the subgroup engine with brute force.
///
/// Covers multiplication by generators, membership for every element, random
/// closures, joins and normal closures, every power subgroup of the whole
/// group and the five series.
pub fn cross_validate(ctx: &GroupCtx, random_sets: usize, seed: u64) -> Result<CrossReport> {
    let start = Instant::now();
    let oracle = EnumeratedGroup::new(ctx.params(), DEFAULT_ORACLE_BUDGET)?;
    let images = oracle.to_engine(ctx)?;
    let index = index_map(&images);
    let b = Bridge { ctx, images, index };
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool| checks.push(CrossCheck { name, passed });

    let expected = crate::arith::pow(ctx.p(), ctx.log_order() as u32) as usize;
    push(format!("order {expected}"), oracle.order() == expected);
    push("bijection with normal forms".into(), b.index.len() == oracle.order());
    let letters = [ctx.x(), ctx.inv(&ctx.x()), ctx.y(), ctx.inv(&ctx.y())];
    let edges_ok = (0..oracle.order() as u32).all(|g| {
        (0..4u8).all(|l| b.ctx.mul(&b.engine(g), &letters[l as usize]) == b.engine(oracle.letter_action(g, l)))
    });
    push("multiplication by generators".into(), edges_ok);

    let named = [("Z", central_z(ctx)), ("Z_k", zk_subgroup(ctx)), ("H_k", h_subgroup(ctx))];
    for (name, s) in &named {
        let brute = b.set_of(s).unwrap_or_default();
        let member = vec_indicator(oracle.order(), &brute);
        let brute_gens = oracle.generators(&brute);
        let closed = oracle.closure(&brute_gens);
        let all_members = (0..oracle.order() as u32).all(|g| s.contains(&b.engine(g)) == member[g as usize]);
        push(format!("membership in {name}"), all_members && closed == brute);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = oracle.order() as u32;
    for t in 0..random_sets {
        let size = rng.gen_range(1..=3);
        let gs: Vec<u32> = (0..size).map(|_| rng.gen_range(0..n)).collect();
        let hs: Vec<u32> = (0..2).map(|_| rng.gen_range(0..n)).collect();
        let eg = generate(ctx, &b.engine_gens(&gs));
        let bg = oracle.closure(&gs);
        let gen_ok = b.same(&eg, &bg);
        let eh = generate(ctx, &b.engine_gens(&hs));
        let bh = oracle.closure(&hs);
        let join_ok = b.same(&join(&eg, &eh), &oracle.join(&bg, &bh));
        let en = normal_closure(ctx, &b.engine_gens(&gs));
        let nc_ok = b.same(&en, &oracle.normal_closure(&gs));
        let ag = agemo(&eg, 1, AgemoMode::Exact, &Budget::default()).map(|r| b.same(&r.subgroup, &oracle.agemo(&bg, 1)));
        push(format!("random set {t}: generate"), gen_ok);
        push(format!("random set {t}: join"), join_ok);
        push(format!("random set {t}: normal closure"), nc_ok);
        push(format!("random set {t}: p-th powers"), ag.unwrap_or(false));
    }

    let full = EchelonSubgroup::full(ctx);
    let all = oracle.all();
    for m in 1.. {
        let brute = oracle.agemo(&all, m);
        let ok = agemo(&full, m, AgemoMode::Exact, &Budget::default()).map(|r| b.same(&r.subgroup, &brute));
        push(format!("power subgroup m = {m}"), ok.unwrap_or(false));
        if brute.len() == 1 {
            break;
        }
    }

    let exact = SeriesOptions::exact();
    let closed = SeriesOptions { jennings: JenningsMethod::ClosedForm, ..exact };
    let brute: [(SeriesKind, Vec<ElementSet>); 5] = [
        (SeriesKind::LowerCentral, oracle.lower_central()),
        (SeriesKind::LowerP, oracle.lower_p()),
        (SeriesKind::Frattini, oracle.frattini()),
        (SeriesKind::Jennings, oracle.jennings()),
        (SeriesKind::PPower, oracle.p_power()),
    ];
    for (kind, terms) in &brute {
        let e = series(ctx, *kind, &exact).map(|s| b.same_series(&s.terms, terms));
        push(format!("{} series", kind.name()), e.unwrap_or(false));
        if *kind == SeriesKind::Jennings {
            let e = series(ctx, *kind, &closed).map(|s| b.same_series(&s.terms, terms));
            push("Jennings series (closed form)".into(), e.unwrap_or(false));
        }
    }

    Ok(CrossReport { group: ctx.params().to_string(), order: oracle.order(), checks, elapsed: start.elapsed() })
}

fn vec_indicator(n: usize, set: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &g in set {
        m[g as usize] = true;
    }
    m
}

/// Largest order for which every triple is checked.
pub const EXHAUSTIVE_LIMIT: usize = 1 << 12;

/// `(gh)l = g(hl)` for every triple of elements.
pub fn associativity_exhaustive(ctx: &GroupCtx) -> Result<bool> {
    if ctx.log_order() as f64 * (ctx.p() as f64).log2() > EXHAUSTIVE_LIMIT.ilog2() as f64 {
        return Err(crate::Error::TooLarge(format!("{} has more than {EXHAUSTIVE_LIMIT} elements", ctx.params())));
    }
    let all = EchelonSubgroup::full(ctx).elements();
    let prods: Vec<Vec<Element>> = all.iter().map(|g| all.iter().map(|h| ctx.mul(g, h)).collect()).collect();
    let index: HashMap<&Element, usize> = all.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let table: Vec<Vec<usize>> = prods.iter().map(|row| row.iter().map(|e| index[e]).collect()).collect();
    let n = all.len();
    Ok((0..n).all(|g| (0..n).all(|h| (0..n).all(|l| table[table[g][h]][l] == table[g][table[h][l]]))))
}

/// `(gh)l = g(hl)` on random triples, with products also compared to the
/// enumerated group when `oracle` is given.
pub fn associativity_sampled(ctx: &GroupCtx, samples: usize, seed: u64, oracle: Option<&EnumeratedGroup>) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bridge = match oracle {
        Some(o) => {
            let images = o.to_engine(ctx)?;
            Some((o, index_map(&images), images))
        }
        None => None,
    };
    for _ in 0..samples {
        let (g, h, l) = (ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
        let gh = ctx.mul(&g, &h);
        if ctx.mul(&gh, &l) != ctx.mul(&g, &ctx.mul(&h, &l)) {
            return Ok(false);
        }
        if let Some((o, index, images)) = &bridge {
            let (gi, hi) = (index[&g], index[&h]);
            if images[o.mul(gi, hi) as usize] != gh {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#![allow(dead_code)]

use pgroup::collector::{Element, GroupCtx};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elements(ctx: &GroupCtx, n: usize, seed: u64) -> Vec<Element> {
    let mut r = rng(seed);
    (0..n).map(|_| ctx.random(&mut r)).collect()
}

pub fn g(p: u64, k: u32) -> GroupCtx {
    GroupCtx::g(p, k).expect("context")
}

pub fn w(p: u64, k: u32) -> GroupCtx {
    GroupCtx::w(p, k).expect("context")
}

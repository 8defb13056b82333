//! Brute-force reference computations on fully enumerated groups.
//!
//! The group is rebuilt from its defining relators by coset enumeration, so
//! the arithmetic here shares nothing with the collector. Subgroups are
//! sorted lists of element indices.

pub mod congruence;
pub mod coset;
mod cross;

pub use congruence::{check_congruence, CongruenceKind, CongruenceReport};
pub use cross::{associativity_exhaustive, associativity_sampled, cross_validate, CrossReport};

use std::collections::HashMap;

use coset::{comm_word, conj_word, inverse_word, power_word, X, XI, Y, YI};

use crate::collector::{Element, Family, GroupCtx, GroupParams};
use crate::error::{Error, Result};

/// Default bound on the number of elements of an enumerated group.
pub const DEFAULT_ORACLE_BUDGET: usize = 10_000_000;

/// Sorted element indices.
pub type ElementSet = Vec<u32>;

/// A group given by its right regular action on itself.
pub struct EnumeratedGroup {
    pub params: GroupParams,
    action: Vec<[u32; 4]>,
    /// Breadth-first word (in letters) of each element.
    words: Vec<Vec<u8>>,
}

/// The defining relators of `G_k` or `W_k` as letter words.
pub fn presentation(params: GroupParams) -> Vec<Vec<u8>> {
    let p = params.p as i64;
    let q = params.q() as i64;
    let y_i = |i: i64| conj_word(&[Y], &power_word(&[X], i));
    let mut rels = Vec::new();
    match params.family {
        Family::Gk => {
            rels.push(power_word(&[X], q * p));
            rels.push(power_word(&[Y], p * p));
            rels.push(comm_word(&power_word(&[X], q), &[Y]));
            rels.push(comm_word(&power_word(&[Y], p), &[X]));
            for i in 1..=params.e() as i64 {
                let c = comm_word(&[Y], &y_i(i));
                rels.push(power_word(&c, p));
                rels.push(comm_word(&c, &[X]));
                rels.push(comm_word(&c, &[Y]));
            }
        }
        Family::Wk => {
            rels.push(power_word(&[X], q));
            rels.push(power_word(&[Y], p));
            for i in 1..q {
                rels.push(comm_word(&[Y], &y_i(i)));
            }
        }
    }
    rels.into_iter().map(|r| coset::free_reduce(&r)).collect()
}

impl EnumeratedGroup {
    /// Enumerates the group defined by the relators of `params`.
    pub fn new(params: GroupParams, budget: usize) -> Result<Self> {
        let expected = u32::try_from(params.log_order())
            .ok()
            .and_then(|l| crate::arith::checked_pow(params.p, l))
            .filter(|&n| n <= budget as u64)
            .ok_or_else(|| Error::TooLarge(format!("{params} has more than {budget} elements")))?;
        let table = coset::enumerate(&presentation(params), (expected as usize).saturating_mul(64).max(1 << 16))?;
        let n = table.action.len();
        let mut words: Vec<Option<Vec<u8>>> = vec![None; n];
        words[0] = Some(Vec::new());
        for c in 0..n {
            let w = words[c].clone().expect("breadth-first numbering");
            for l in 0..4u8 {
                let d = table.action[c][l as usize] as usize;
                if words[d].is_none() {
                    let mut w2 = w.clone();
                    w2.push(l);
                    words[d] = Some(w2);
                }
            }
        }
        Ok(EnumeratedGroup { params, action: table.action, words: words.into_iter().map(Option::unwrap).collect() })
    }

    pub fn order(&self) -> usize {
        self.action.len()
    }

    pub fn word(&self, g: u32) -> &[u8] {
        &self.words[g as usize]
    }

    /// `g` followed by the letters of `w`.
    pub fn act(&self, mut g: u32, w: &[u8]) -> u32 {
        for &l in w {
            g = self.action[g as usize][l as usize];
        }
        g
    }

    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.act(g, &self.words[h as usize])
    }

    pub fn inv(&self, g: u32) -> u32 {
        self.act(0, &inverse_word(&self.words[g as usize]))
    }

    pub fn pow(&self, g: u32, n: u64) -> u32 {
        let w = &self.words[g as usize];
        (0..n).fold(0, |acc, _| self.act(acc, w))
    }

    pub fn comm(&self, g: u32, h: u32) -> u32 {
        self.act(0, &comm_word(&self.words[g as usize], &self.words[h as usize]))
    }

    pub fn x(&self) -> u32 {
        self.action[0][X as usize]
    }

    pub fn y(&self) -> u32 {
        self.action[0][Y as usize]
    }

    fn conj_by_letter(&self, g: u32, l: u8) -> u32 {
        let start = self.action[0][coset::inv_letter(l) as usize];
        self.act(self.act(start, &self.words[g as usize]), &[l])
    }

    pub fn all(&self) -> ElementSet {
        (0..self.order() as u32).collect()
    }

    /// `<gens>`, by closing `{1}` under right multiplication.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        while head < out.len() {
            let a = out[head];
            head += 1;
            for &g in &gens {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    out.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `<elems>` together with the elements kept as generators, adding only
    /// elements not yet reached.
    pub fn span_with_generators(&self, elems: &[u32]) -> (ElementSet, Vec<u32>) {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut h = vec![0u32];
        for &g in elems {
            if !member[g as usize] {
                gens.push(g);
                h = self.closure(&gens);
                member = self.indicator(&h);
            }
        }
        (h, gens)
    }

    pub fn span(&self, elems: &[u32]) -> ElementSet {
        self.span_with_generators(elems).0
    }

    /// A generating set of the subgroup `set`, chosen greedily.
    pub fn generators(&self, set: &[u32]) -> Vec<u32> {
        self.span_with_generators(set).1
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> ElementSet {
        let (mut h, mut gens) = self.span_with_generators(gens);
        loop {
            let member = self.indicator(&h);
            let extra: Vec<u32> = gens
                .iter()
                .flat_map(|&g| [X, XI, Y, YI].map(|l| self.conj_by_letter(g, l)))
                .filter(|&c| !member[c as usize])
                .collect();
            if extra.is_empty() {
                return h;
            }
            gens.extend(extra);
            (h, gens) = self.span_with_generators(&gens);
        }
    }

    fn indicator(&self, set: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &g in set {
            m[g as usize] = true;
        }
        m
    }

    pub fn join(&self, a: &[u32], b: &[u32]) -> ElementSet {
        let mut gens = self.generators(a);
        gens.extend(self.generators(b));
        self.closure(&gens)
    }

    /// `<g^{p^m} : g in a>`, from every element literally.
    pub fn agemo(&self, a: &[u32], m: u32) -> ElementSet {
        let n = crate::arith::pow(self.params.p, m);
        let mut powers: Vec<u32> = a.iter().map(|&g| self.pow(g, n)).collect();
        powers.sort_unstable();
        powers.dedup();
        self.span(&powers)
    }

    /// `[A, B]` for normal subgroups. Small cases take every pair of elements,
    /// larger ones the commutators of generating sets closed normally.
    pub fn commutator(&self, a: &[u32], b: &[u32]) -> ElementSet {
        let (sa, sb): (Vec<u32>, Vec<u32>) = if a.len().saturating_mul(b.len()) <= 4_000_000 {
            (a.to_vec(), b.to_vec())
        } else {
            (self.generators(a), self.generators(b))
        };
        let mut comms: Vec<u32> = sa.iter().flat_map(|&u| sb.iter().map(move |&v| (u, v))).map(|(u, v)| self.comm(u, v)).collect();
        comms.sort_unstable();
        comms.dedup();
        self.normal_closure(&comms)
    }

    fn until_trivial(&self, first: ElementSet, next: impl Fn(&ElementSet) -> ElementSet) -> Vec<ElementSet> {
        let mut out = vec![first];
        loop {
            let n = next(out.last().unwrap());
            if n.len() <= 1 {
                return out;
            }
            out.push(n);
        }
    }

    pub fn lower_central(&self) -> Vec<ElementSet> {
        let g = self.all();
        self.until_trivial(g.clone(), |t| self.commutator(t, &g))
    }

    pub fn lower_p(&self) -> Vec<ElementSet> {
        let g = self.all();
        self.until_trivial(g.clone(), |t| self.join(&self.agemo(t, 1), &self.commutator(t, &g)))
    }

    pub fn frattini(&self) -> Vec<ElementSet> {
        self.until_trivial(self.all(), |t| self.join(&self.agemo(t, 1), &self.commutator(t, t)))
    }

    /// `D_i = prod_{j p^h >= i} γ_j^{p^h}`.
    pub fn jennings(&self) -> Vec<ElementSet> {
        let gamma = self.lower_central();
        let p = self.params.p as usize;
        let mut powers: HashMap<(usize, u32), ElementSet> = HashMap::new();
        let mut out = Vec::new();
        for i in 1.. {
            let mut gens = Vec::new();
            for (j, g) in gamma.iter().enumerate().map(|(j, g)| (j + 1, g)) {
                let mut h = 0u32;
                while j * p.pow(h) < i {
                    h += 1;
                }
                let s = powers.entry((j, h)).or_insert_with(|| self.agemo(g, h));
                gens.extend(self.generators(s));
            }
            let d = self.span(&gens);
            if d.len() <= 1 {
                return out;
            }
            out.push(d);
        }
        unreachable!()
    }

    pub fn p_power(&self) -> Vec<ElementSet> {
        let g = self.all();
        let mut out = vec![g.clone()];
        for m in 1.. {
            let a = self.agemo(&g, m);
            if a.len() <= 1 {
                return out;
            }
            out.push(a);
        }
        unreachable!()
    }

    /// The collector image of every element, evaluated along breadth-first words.
    pub fn to_engine(&self, ctx: &GroupCtx) -> Result<Vec<Element>> {
        if ctx.params() != self.params {
            return Err(Error::ContextMismatch(format!("{} vs {}", ctx.params(), self.params)));
        }
        let letters = [ctx.x(), ctx.inv(&ctx.x()), ctx.y(), ctx.inv(&ctx.y())];
        let mut out: Vec<Option<Element>> = vec![None; self.order()];
        out[0] = Some(ctx.identity());
        for g in 0..self.order() {
            let e = out[g].clone().expect("breadth-first numbering");
            for (l, letter) in letters.iter().enumerate() {
                let d = self.action[g][l] as usize;
                if out[d].is_none() {
                    out[d] = Some(ctx.mul(&e, letter));
                }
            }
        }
        Ok(out.into_iter().map(Option::unwrap).collect())
    }

    /// Right action of each letter, for consistency checks.
    pub fn letter_action(&self, g: u32, l: u8) -> u32 {
        self.action[g as usize][l as usize]
    }
}

/// Index map from collector elements to enumerated elements.
pub fn index_map(images: &[Element]) -> HashMap<Element, u32> {
    images.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        for (p, k) in [(3, 1), (2, 1), (2, 2)] {
            let params = GroupParams::g(p, k).unwrap();
            let g = EnumeratedGroup::new(params, DEFAULT_ORACLE_BUDGET).unwrap();
            assert_eq!(g.order() as u64, crate::arith::pow(p, params.log_order() as u32));
        }
    }

    #[test]
    fn cyclic_subgroup_of_y() {
        let g = EnumeratedGroup::new(GroupParams::g(3, 1).unwrap(), DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(g.closure(&[g.y()]).len(), 9);
        assert_eq!(g.closure(&[g.x()]).len(), 9);
    }
}

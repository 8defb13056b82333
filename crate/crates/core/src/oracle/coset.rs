//! Coset enumeration (HLT strategy) over the trivial subgroup.

use crate::error::{Error, Result};

/// Letters: `x`, `x^-1`, `y`, `y^-1`.
pub const X: u8 = 0;
pub const XI: u8 = 1;
pub const Y: u8 = 2;
pub const YI: u8 = 3;

const NONE: u32 = u32::MAX;

#[inline]
pub fn inv_letter(l: u8) -> u8 {
    l ^ 1
}

pub fn inverse_word(w: &[u8]) -> Vec<u8> {
    w.iter().rev().map(|&l| inv_letter(l)).collect()
}

pub fn power_word(w: &[u8], n: i64) -> Vec<u8> {
    let base = if n < 0 { inverse_word(w) } else { w.to_vec() };
    base.repeat(n.unsigned_abs() as usize)
}

/// `[u, v] = u^-1 v^-1 u v`.
pub fn comm_word(u: &[u8], v: &[u8]) -> Vec<u8> {
    [inverse_word(u), inverse_word(v), u.to_vec(), v.to_vec()].concat()
}

/// `u^v = v^-1 u v`.
pub fn conj_word(u: &[u8], v: &[u8]) -> Vec<u8> {
    [inverse_word(v), u.to_vec(), v.to_vec()].concat()
}

/// Removes adjacent inverse pairs.
pub fn free_reduce(w: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&inv_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Right regular action of the four letters on the elements of the group.
pub struct CosetTable {
    pub action: Vec<[u32; 4]>,
}

struct Enumerator {
    table: Vec<[u32; 4]>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    limit: usize,
}

impl Enumerator {
    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, l: u8) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::TooLarge(format!("coset enumeration exceeded {} cosets", self.limit)));
        }
        let d = self.table.len() as u32;
        self.table.push([NONE; 4]);
        self.parent.push(d);
        self.table[c as usize][l as usize] = d;
        self.table[d as usize][inv_letter(l) as usize] = c;
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for l in 0..4u8 {
                let d = self.table[g as usize][l as usize];
                if d == NONE {
                    continue;
                }
                let li = inv_letter(l) as usize;
                if self.table[d as usize][li] == g {
                    self.table[d as usize][li] = NONE;
                }
                let (mu, nu) = (self.rep(g), self.rep(d));
                let t = self.table[mu as usize][l as usize];
                if t != NONE {
                    self.merge(nu, t);
                } else {
                    let s = self.table[nu as usize][li];
                    if s != NONE {
                        self.merge(mu, s);
                    } else {
                        self.table[mu as usize][l as usize] = nu;
                        self.table[nu as usize][li] = mu;
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, rel: &[u8]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][rel[i] as usize] != NONE {
                f = self.table[f as usize][rel[i] as usize];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][inv_letter(rel[j as usize]) as usize] != NONE {
                b = self.table[b as usize][inv_letter(rel[j as usize]) as usize];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let l = rel[i];
                self.table[f as usize][l as usize] = b;
                self.table[b as usize][inv_letter(l) as usize] = f;
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of `<x, y | relators>`.
///
/// Elements are renumbered in breadth-first order, so element 0 is the identity.
pub fn enumerate(relators: &[Vec<u8>], limit: usize) -> Result<CosetTable> {
    let mut e = Enumerator { table: vec![[NONE; 4]], parent: vec![0], queue: Vec::new(), limit };
    let mut c = 0u32;
    while (c as usize) < e.table.len() {
        if e.alive(c) {
            for rel in relators {
                e.scan_and_fill(c, rel)?;
                if !e.alive(c) {
                    break;
                }
            }
            if e.alive(c) {
                for l in 0..4u8 {
                    if e.table[c as usize][l as usize] == NONE {
                        e.define(c, l)?;
                    }
                }
            }
        }
        c += 1;
    }
    // Breadth-first renumbering of the live cosets.
    let mut index = vec![NONE; e.table.len()];
    let mut order = vec![0u32];
    index[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for l in 0..4 {
            let d = e.rep(e.table[c as usize][l]);
            if index[d as usize] == NONE {
                index[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    let action = order
        .iter()
        .map(|&c| {
            let row = e.table[c as usize];
            let mut out = [0u32; 4];
            for l in 0..4 {
                out[l] = index[e.rep(row[l]) as usize];
            }
            out
        })
        .collect();
    Ok(CosetTable { action })
}

//! Structure-constant contexts for the groups `G_k(p)` and `W_k(p)`.
//!
//! An element of `G_k` is stored in collected normal form
//! `x^a * y_0^{v_0} ... y_{q-1}^{v_{q-1}} * (y^p)^c * e_1^{w_1} ... e_E^{w_E}`
//! where `y_i = y^(x^i) = x^-i y x^i`, `e_j = [y_0, y_j]` and `q = p^k`.
//! The body vector is laid out as `[v_0 .. v_{q-1}, c, w_1 .. w_E]`.
//!
//! An element of `W_k = C_p wr C_{p^k}` is a pair `(a, f)` with `f` a
//! truncated polynomial in `t = (y^x)/y - 1` written additively, so that
//! `y^(x^i)` corresponds to `(1+t)^i`.

mod hom;
mod relations;
pub mod word;

pub use hom::{project, Hom, HomKind};
pub use relations::{check_relations, relators, RelationCheck, RelationReport};
pub use word::{canonical_word, eval_word, parse_word, Word};

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime, pow, val_p};
use crate::error::{Error, Result};

/// The two families of groups handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// The central extension `G_k` of `W_k` by `Z_k`.
    Gk,
    /// The wreath product `C_p wr C_{p^k}`.
    Wk,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gk => write!(f, "G"),
            Family::Wk => write!(f, "W"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "G" | "g" | "Gk" => Ok(Family::Gk),
            "W" | "w" | "Wk" => Ok(Family::Wk),
            other => Err(Error::Invalid(format!("unknown family '{other}' (expected G or W)"))),
        }
    }
}

/// Family, prime and level of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub family: Family,
    pub p: u64,
    pub k: u32,
}

/// Largest supported `p^k`; keeps bodies addressable and products cheap.
const MAX_Q: u64 = 1 << 16;

impl GroupParams {
    pub fn new(family: Family, p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::BadLevel(k));
        }
        match checked_pow(p, k + 1) {
            Some(q) if q / p <= MAX_Q => {}
            _ => return Err(Error::TooLarge(format!("p^k with p = {p}, k = {k}"))),
        }
        Ok(GroupParams { family, p, k })
    }

    pub fn g(p: u64, k: u32) -> Result<Self> {
        Self::new(Family::Gk, p, k)
    }

    pub fn w(p: u64, k: u32) -> Result<Self> {
        Self::new(Family::Wk, p, k)
    }

    /// `q = p^k`.
    pub fn q(&self) -> u64 {
        pow(self.p, self.k)
    }

    /// Number of independent commutators `e_j`.
    pub fn e(&self) -> u64 {
        let q = self.q();
        if self.p == 2 {
            q / 2
        } else {
            (q - 1) / 2
        }
    }

    /// Order of the image of `x`.
    pub fn x_order(&self) -> u64 {
        match self.family {
            Family::Gk => pow(self.p, self.k + 1),
            Family::Wk => self.q(),
        }
    }

    /// Number of p-adic digits of the `x` exponent.
    pub fn x_depths(&self) -> usize {
        match self.family {
            Family::Gk => self.k as usize + 1,
            Family::Wk => self.k as usize,
        }
    }

    /// Length of the body vector.
    pub fn body_len(&self) -> usize {
        match self.family {
            Family::Gk => (self.q() + 1 + self.e()) as usize,
            Family::Wk => self.q() as usize,
        }
    }

    /// `log_p` of the group order, i.e. the number of normal-form coordinates.
    pub fn log_order(&self) -> usize {
        self.x_depths() + self.body_len()
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.family, self.k, self.p)
    }
}

/// A group element in collected normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    /// Exponent of `x`.
    pub a: u64,
    /// Remaining coordinates; layout depends on the family.
    pub body: Vec<u8>,
}

impl Element {
    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.body.iter().all(|&b| b == 0)
    }
}

struct Inner {
    params: GroupParams,
    p: u8,
    q: usize,
    e: usize,
    x_mod: u64,
    x_depths: usize,
    body_len: usize,
    /// For `G_k`: `[y_i, y_j]` with `i - j = d` equals `e_{idx+1}^{mult}`, stored at `fold[d]`.
    fold: Vec<(usize, u8)>,
    /// For `W_k`: sparse coefficients of `(1+t)^s`, `0 <= s < q`.
    binom: Vec<Vec<(usize, u8)>>,
}

/// Immutable, cheaply clonable handle on a group context.
#[derive(Clone)]
pub struct GroupCtx(Arc<Inner>);

impl fmt::Debug for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupCtx({})", self.0.params)
    }
}

impl PartialEq for GroupCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.params == other.0.params
    }
}
impl Eq for GroupCtx {}

impl GroupCtx {
    pub fn new(params: GroupParams) -> Result<Self> {
        let params = GroupParams::new(params.family, params.p, params.k)?;
        let p = params.p as u8;
        let q = params.q() as usize;
        let e = params.e() as usize;
        let fold = match params.family {
            Family::Gk => (0..q)
                .map(|d| {
                    if d == 0 {
                        return (0, 0);
                    }
                    // [y_i, y_j] = [y_0, y_{q-d}] for i - j = d.
                    let r = q - d;
                    if r <= e {
                        (r - 1, 1)
                    } else {
                        (d - 1, p - 1)
                    }
                })
                .collect(),
            Family::Wk => Vec::new(),
        };
        let binom = match params.family {
            Family::Wk => (0..q).map(|s| binomial_row(s, q, params.p)).collect(),
            Family::Gk => Vec::new(),
        };
        Ok(GroupCtx(Arc::new(Inner {
            params,
            p,
            q,
            e,
            x_mod: params.x_order(),
            x_depths: params.x_depths(),
            body_len: params.body_len(),
            fold,
            binom,
        })))
    }

    pub fn g(p: u64, k: u32) -> Result<Self> {
        Self::new(GroupParams::g(p, k)?)
    }

    pub fn w(p: u64, k: u32) -> Result<Self> {
        Self::new(GroupParams::w(p, k)?)
    }

    pub fn params(&self) -> GroupParams {
        self.0.params
    }
    pub fn family(&self) -> Family {
        self.0.params.family
    }
    pub fn p(&self) -> u64 {
        self.0.params.p
    }
    pub fn k(&self) -> u32 {
        self.0.params.k
    }
    pub fn q(&self) -> usize {
        self.0.q
    }
    pub fn e_count(&self) -> usize {
        self.0.e
    }
    pub fn x_order(&self) -> u64 {
        self.0.x_mod
    }
    pub fn x_depths(&self) -> usize {
        self.0.x_depths
    }
    pub fn body_len(&self) -> usize {
        self.0.body_len
    }
    /// Number of polycyclic depths, equal to `log_p |group|`.
    pub fn depth_count(&self) -> usize {
        self.0.x_depths + self.0.body_len
    }
    pub fn log_order(&self) -> usize {
        self.depth_count()
    }
    pub fn is_g(&self) -> bool {
        self.family() == Family::Gk
    }

    /// Index of the `c` coordinate (exponent of `y^p`) in a `G_k` body.
    pub fn c_index(&self) -> usize {
        self.0.q
    }
    /// Index of the `e_j` coordinate in a `G_k` body (`1 <= j <= E`).
    pub fn e_index(&self, j: usize) -> usize {
        self.0.q + j
    }

    // ----- distinguished elements -------------------------------------

    pub fn identity(&self) -> Element {
        Element { a: 0, body: vec![0; self.0.body_len] }
    }

    pub fn x(&self) -> Element {
        Element { a: 1 % self.0.x_mod, body: vec![0; self.0.body_len] }
    }

    pub fn x_pow(&self, n: i64) -> Element {
        Element { a: n.rem_euclid(self.0.x_mod as i64) as u64, body: vec![0; self.0.body_len] }
    }

    pub fn y(&self) -> Element {
        self.y_i(0)
    }

    /// `y_i = y^(x^i)`.
    pub fn y_i(&self, i: usize) -> Element {
        let mut g = self.identity();
        match self.family() {
            Family::Gk => g.body[i % self.0.q] = 1,
            Family::Wk => {
                for &(d, c) in &self.0.binom[i % self.0.q] {
                    g.body[d] = c;
                }
            }
        }
        g
    }

    /// `y^p`; the identity in `W_k`.
    pub fn y_p(&self) -> Element {
        let mut g = self.identity();
        if self.is_g() {
            g.body[self.0.q] = 1;
        }
        g
    }

    /// `e_j = [y_0, y_j]` for `1 <= j <= E` (`G_k` only).
    pub fn e_j(&self, j: usize) -> Element {
        assert!(self.is_g() && (1..=self.0.e).contains(&j));
        let mut g = self.identity();
        g.body[self.0.q + j] = 1;
        g
    }

    /// The base element `t^j` of `W_k`, i.e. `[y, x, ..., x]` with `j` copies of `x`.
    pub fn t_pow(&self, j: usize) -> Element {
        assert!(!self.is_g() && j < self.0.q);
        let mut g = self.identity();
        g.body[j] = 1;
        g
    }

    /// The polycyclic generator sitting at `depth` with leading coefficient 1.
    pub fn pc_generator(&self, depth: usize) -> Element {
        let xd = self.0.x_depths;
        if depth < xd {
            self.x_pow(pow(self.p(), depth as u32) as i64)
        } else {
            let mut g = self.identity();
            g.body[depth - xd] = 1;
            g
        }
    }

    // ----- validation ---------------------------------------------------

    /// Checks that `g` is a normal-form element of this context.
    pub fn validate(&self, g: &Element) -> Result<()> {
        if g.body.len() != self.0.body_len {
            return Err(Error::ContextMismatch(format!(
                "body length {} but {} expects {}",
                g.body.len(),
                self.0.params,
                self.0.body_len
            )));
        }
        if g.a >= self.0.x_mod {
            return Err(Error::ContextMismatch(format!("x exponent {} out of range", g.a)));
        }
        if let Some(b) = g.body.iter().find(|&&b| b >= self.0.p) {
            return Err(Error::ContextMismatch(format!("coordinate {b} not reduced mod p")));
        }
        Ok(())
    }

    pub fn try_mul(&self, g: &Element, h: &Element) -> Result<Element> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(self.mul(g, h))
    }

    // ----- group law ----------------------------------------------------

    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        match self.family() {
            Family::Gk => {
                let s = (h.a % self.0.q as u64) as usize;
                let mut body = self.conj_body(&g.body, s);
                self.h_mul_assign(&mut body, &h.body);
                Element { a: (g.a + h.a) % self.0.x_mod, body }
            }
            Family::Wk => {
                let s = (h.a % self.0.q as u64) as usize;
                let mut body = self.shift_poly(&g.body, s);
                let p = self.0.p;
                for (b, &c) in body.iter_mut().zip(&h.body) {
                    *b = (*b + c) % p;
                }
                Element { a: (g.a + h.a) % self.0.x_mod, body }
            }
        }
    }

    pub fn inv(&self, g: &Element) -> Element {
        let a = (self.0.x_mod - g.a) % self.0.x_mod;
        let s = (a % self.0.q as u64) as usize;
        match self.family() {
            Family::Gk => {
                let hinv = self.h_inv(&g.body);
                Element { a, body: self.conj_body(&hinv, s) }
            }
            Family::Wk => {
                let p = self.0.p;
                let mut body = self.shift_poly(&g.body, s);
                for b in body.iter_mut() {
                    *b = (p - *b) % p;
                }
                Element { a, body }
            }
        }
    }

    /// `g^n` for any integer `n`.
    pub fn pow(&self, g: &Element, n: i64) -> Element {
        let (mut base, mut e) = if n < 0 { (self.inv(g), n.unsigned_abs()) } else { (g.clone(), n as u64) };
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn comm(&self, g: &Element, h: &Element) -> Element {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(&self.inv(&hg), &gh)
    }

    /// Left-normed commutator `[g_1, g_2, ..., g_n]`.
    pub fn comm_left_normed(&self, gs: &[Element]) -> Element {
        let mut it = gs.iter();
        let mut acc = it.next().cloned().unwrap_or_else(|| self.identity());
        for g in it {
            acc = self.comm(&acc, g);
        }
        acc
    }

    /// `g^h = h^-1 g h`.
    pub fn conj(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    /// Least `n >= 1` with `g^n = 1`; always a power of `p`.
    pub fn order(&self, g: &Element) -> u64 {
        let mut n = 1u64;
        let mut h = g.clone();
        let p = self.p();
        while !h.is_identity() {
            h = self.pow(&h, p as i64);
            n *= p;
        }
        n
    }

    /// Depth and leading coefficient of a non-identity element.
    pub fn lead(&self, g: &Element) -> Option<(usize, u8)> {
        if g.a != 0 {
            let p = self.p();
            let d = val_p(g.a, p);
            return Some((d as usize, ((g.a / pow(p, d)) % p) as u8));
        }
        g.body.iter().position(|&b| b != 0).map(|i| (self.0.x_depths + i, g.body[i]))
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let a = rng.gen_range(0..self.0.x_mod);
        let body = (0..self.0.body_len).map(|_| rng.gen_range(0..self.0.p)).collect();
        Element { a, body }
    }

    /// Coordinates as a flat vector: the p-adic digits of `a` followed by the body.
    pub fn coords(&self, g: &Element) -> Vec<u8> {
        let p = self.p();
        let mut out = Vec::with_capacity(self.depth_count());
        let mut a = g.a;
        for _ in 0..self.0.x_depths {
            out.push((a % p) as u8);
            a /= p;
        }
        out.extend_from_slice(&g.body);
        out
    }

    // ----- internals ----------------------------------------------------

    /// Image of the `H_k` part `h` under conjugation by `x^s`.
    fn conj_body(&self, body: &[u8], s: usize) -> Vec<u8> {
        if s == 0 {
            return body.to_vec();
        }
        let q = self.0.q;
        let p = self.0.p as u32;
        let mut out = body.to_vec();
        for i in 0..q {
            out[(i + s) % q] = body[i];
        }
        // The factors y_{q-s}..y_{q-1} wrap to the front; moving them past
        // the others contributes central commutators.
        let split = q - s;
        let front: Vec<(usize, u32)> =
            (0..split).filter(|&i| body[i] != 0).map(|i| (i, body[i] as u32)).collect();
        if !front.is_empty() {
            let mut acc = vec![0u32; self.0.e];
            let mut any = false;
            for (ib, &b) in body.iter().enumerate().take(q).skip(split) {
                let beta = b as u32;
                if beta == 0 {
                    continue;
                }
                any = true;
                for &(ia, alpha) in &front {
                    let (idx, m) = self.0.fold[ia + q - ib];
                    acc[idx] += alpha * beta * m as u32;
                }
            }
            if any {
                for (j, v) in acc.into_iter().enumerate() {
                    let slot = &mut out[q + 1 + j];
                    *slot = ((*slot as u32 + v) % p) as u8;
                }
            }
        }
        out
    }

    /// In-place product of two `H_k` parts.
    fn h_mul_assign(&self, left: &mut [u8], right: &[u8]) {
        let q = self.0.q;
        let p = self.0.p as u32;
        let right_nz: Vec<(usize, u32)> =
            (0..q).filter(|&j| right[j] != 0).map(|j| (j, right[j] as u32)).collect();
        if !right_nz.is_empty() {
            let left_nz: Vec<(usize, u32)> =
                (0..q).filter(|&i| left[i] != 0).map(|i| (i, left[i] as u32)).collect();
            if !left_nz.is_empty() {
                let mut acc = vec![0u32; self.0.e];
                let mut any = false;
                for &(j, beta) in &right_nz {
                    for &(i, alpha) in left_nz.iter().rev() {
                        if i <= j {
                            break;
                        }
                        any = true;
                        let (idx, m) = self.0.fold[i - j];
                        acc[idx] += alpha * beta * m as u32;
                    }
                }
                if any {
                    for (j, v) in acc.into_iter().enumerate() {
                        let slot = &mut left[q + 1 + j];
                        *slot = ((*slot as u32 + v) % p) as u8;
                    }
                }
            }
        }
        let mut carry = 0u32;
        for i in 0..q {
            let s = left[i] as u32 + right[i] as u32;
            if s >= p {
                carry += 1;
                left[i] = (s - p) as u8;
            } else {
                left[i] = s as u8;
            }
        }
        let c = &mut left[q];
        *c = ((*c as u32 + right[q] as u32 + carry) % p) as u8;
        for j in q + 1..left.len() {
            left[j] = ((left[j] as u32 + right[j] as u32) % p) as u8;
        }
    }

    /// Inverse of an `H_k` part.
    fn h_inv(&self, body: &[u8]) -> Vec<u8> {
        let q = self.0.q;
        let p = self.0.p;
        let mut neg = vec![0u8; body.len()];
        for i in 0..q {
            if body[i] != 0 {
                neg[i] = p - body[i];
            }
        }
        // body * (neg, 0, 0) has trivial v-part; its central part is then negated.
        let mut prod = body.to_vec();
        self.h_mul_assign(&mut prod, &neg);
        debug_assert!(prod[..q].iter().all(|&b| b == 0));
        for j in q..body.len() {
            neg[j] = (p - prod[j]) % p;
        }
        neg
    }

    /// `f * (1+t)^s` truncated at degree `q`.
    fn shift_poly(&self, f: &[u8], s: usize) -> Vec<u8> {
        if s == 0 {
            return f.to_vec();
        }
        let q = self.0.q;
        let p = self.0.p as u32;
        let row = &self.0.binom[s];
        let mut acc = vec![0u32; q];
        for (i, &fi) in f.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for &(d, c) in row {
                if i + d >= q {
                    break;
                }
                acc[i + d] += fi as u32 * c as u32;
            }
        }
        acc.into_iter().map(|v| (v % p) as u8).collect()
    }
}

/// Coefficients of `(1+t)^s` modulo `p` and `t^q`, via Lucas' theorem.
fn binomial_row(s: usize, q: usize, p: u64) -> Vec<(usize, u8)> {
    let p = p as usize;
    let mut out = Vec::new();
    for d in 0..=s.min(q - 1) {
        let (mut a, mut b) = (s, d);
        let mut c = 1usize;
        while b > 0 && c != 0 {
            let (ad, bd) = (a % p, b % p);
            if bd > ad {
                c = 0;
                break;
            }
            c = c * small_binom(ad, bd) % p;
            a /= p;
            b /= p;
        }
        if c != 0 {
            out.push((d, c as u8));
        }
    }
    out
}

fn small_binom(n: usize, k: usize) -> usize {
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_counts() {
        assert_eq!(GroupCtx::g(3, 1).unwrap().log_order(), 7);
        assert_eq!(GroupCtx::g(2, 3).unwrap().log_order(), 17);
        assert_eq!(GroupCtx::w(3, 1).unwrap().log_order(), 4);
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(GroupCtx::g(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(GroupCtx::g(3, 0).unwrap_err(), Error::BadLevel(0));
    }

    #[test]
    fn y_cubed_carries() {
        let g = GroupCtx::g(3, 1).unwrap();
        let y = g.y();
        assert_eq!(g.pow(&y, 3), g.y_p());
        assert_eq!(g.order(&y), 9);
    }

    #[test]
    fn fold_sign() {
        let g = GroupCtx::g(3, 1).unwrap();
        let c = g.comm(&g.y_i(0), &g.y_i(2));
        assert_eq!(c, g.inv(&g.e_j(1)));
    }

    #[test]
    fn binomial_rows() {
        let r = binomial_row(4, 9, 3);
        // (1+t)^4 = 1 + t + t^3 + t^4 mod 3
        assert_eq!(r, vec![(0, 1), (1, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn wreath_conjugation() {
        let w = GroupCtx::w(3, 2).unwrap();
        let y1 = w.conj(&w.y(), &w.x());
        assert_eq!(y1, w.y_i(1));
        assert_eq!(w.comm(&w.y(), &w.x()), w.t_pow(1));
    }
}

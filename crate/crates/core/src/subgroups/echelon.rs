//! Generic sifting engine over any group with a polycyclic depth ladder of
//! relative order `p`.

use std::fmt::Debug;
use std::hash::Hash;

use crate::arith::inv_mod_p;
use crate::collector::{Element, GroupCtx};

/// A finite p-group whose elements carry a depth and a leading coefficient.
///
/// The subgroups `{g : depth(g) >= d}` must form a chain in which each term
/// is normal in its predecessor with quotient of order `p`.
pub trait PcGroup {
    type Elt: Clone + Eq + Hash + Debug;

    fn prime(&self) -> u64;
    fn depth_count(&self) -> usize;
    fn identity(&self) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Self::Elt;
    fn lead(&self, a: &Self::Elt) -> Option<(usize, u8)>;

    fn is_identity(&self, a: &Self::Elt) -> bool {
        self.lead(a).is_none()
    }

    fn pow(&self, g: &Self::Elt, mut e: u64) -> Self::Elt {
        let mut base = g.clone();
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

    fn comm(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    fn conj(&self, a: &Self::Elt, by: &Self::Elt) -> Self::Elt {
        self.mul(&self.mul(&self.inv(by), a), by)
    }

    /// True when any two elements of depths at least `d1` and `d2` commute.
    fn commute_hint(&self, _d1: usize, _d2: usize) -> bool {
        false
    }

    /// True when every element of depth at least `d` has order dividing `p`
    /// and lies in an abelian section, so `p`-th powers are trivial.
    fn power_hint(&self, _d: usize) -> bool {
        false
    }
}

impl PcGroup for GroupCtx {
    type Elt = Element;

    fn prime(&self) -> u64 {
        self.p()
    }
    fn depth_count(&self) -> usize {
        GroupCtx::depth_count(self)
    }
    fn identity(&self) -> Element {
        GroupCtx::identity(self)
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        GroupCtx::mul(self, a, b)
    }
    fn inv(&self, a: &Element) -> Element {
        GroupCtx::inv(self, a)
    }
    fn lead(&self, a: &Element) -> Option<(usize, u8)> {
        GroupCtx::lead(self, a)
    }
    fn is_identity(&self, a: &Element) -> bool {
        a.is_identity()
    }
    fn comm(&self, a: &Element, b: &Element) -> Element {
        GroupCtx::comm(self, a, b)
    }
    fn commute_hint(&self, d1: usize, d2: usize) -> bool {
        let t = self.central_tail_depth();
        if self.is_g() {
            d1 >= t || d2 >= t
        } else {
            d1 >= t && d2 >= t
        }
    }
    fn power_hint(&self, d: usize) -> bool {
        d >= self.central_tail_depth()
    }
}

impl GroupCtx {
    /// First depth of the tail that is central of exponent `p` (`G_k`), or
    /// first depth of the abelian base group (`W_k`).
    pub fn central_tail_depth(&self) -> usize {
        if self.is_g() {
            self.x_depths() + self.q()
        } else {
            self.x_depths()
        }
    }
}

/// `Q x G` with the depths of `Q` first; used to compute images and kernels.
pub struct PairGroup<'a> {
    pub left: &'a GroupCtx,
    pub right: &'a GroupCtx,
}

impl<'a> PcGroup for PairGroup<'a> {
    type Elt = (Element, Element);

    fn prime(&self) -> u64 {
        self.left.p()
    }
    fn depth_count(&self) -> usize {
        self.left.depth_count() + self.right.depth_count()
    }
    fn identity(&self) -> Self::Elt {
        (self.left.identity(), self.right.identity())
    }
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        (self.left.mul(&a.0, &b.0), self.right.mul(&a.1, &b.1))
    }
    fn inv(&self, a: &Self::Elt) -> Self::Elt {
        (self.left.inv(&a.0), self.right.inv(&a.1))
    }
    fn lead(&self, a: &Self::Elt) -> Option<(usize, u8)> {
        match self.left.lead(&a.0) {
            Some(l) => Some(l),
            None => self.right.lead(&a.1).map(|(d, c)| (d + self.left.depth_count(), c)),
        }
    }
    fn commute_hint(&self, d1: usize, d2: usize) -> bool {
        let off = self.left.depth_count();
        d1 >= off && d2 >= off && PcGroup::commute_hint(self.right, d1 - off, d2 - off)
    }
    fn power_hint(&self, d: usize) -> bool {
        let off = self.left.depth_count();
        d >= off && PcGroup::power_hint(self.right, d - off)
    }
}

/// A basis element together with its powers `b, b^2, ..., b^{p-1}`.
#[derive(Clone, Debug)]
pub struct Row<E> {
    pub powers: Vec<E>,
}

impl<E> Row<E> {
    pub fn elt(&self) -> &E {
        &self.powers[0]
    }
}

/// Induced generating sequence indexed by depth.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    rows: Vec<Option<Row<E>>>,
    count: usize,
}

impl<E: Clone + Eq + Hash + Debug> Echelon<E> {
    pub fn empty(depths: usize) -> Self {
        Echelon { rows: vec![None; depths], count: 0 }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn row(&self, d: usize) -> Option<&Row<E>> {
        self.rows.get(d).and_then(|r| r.as_ref())
    }

    pub fn depths(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&d| self.rows[d].is_some()).collect()
    }

    /// Basis elements in increasing depth.
    pub fn basis(&self) -> Vec<E> {
        self.rows.iter().flatten().map(|r| r.elt().clone()).collect()
    }

    fn make_row<G: PcGroup<Elt = E>>(grp: &G, b: E) -> Row<E> {
        let p = grp.prime() as usize;
        let mut powers = Vec::with_capacity(p - 1);
        powers.push(b);
        for i in 1..p - 1 {
            let next = grp.mul(&powers[i - 1], &powers[0]);
            powers.push(next);
        }
        Row { powers }
    }

    /// Builds an echelon from rows already known to form an induced sequence.
    pub fn from_rows<G: PcGroup<Elt = E>>(grp: &G, rows: Vec<E>) -> Self {
        let mut e = Echelon::empty(grp.depth_count());
        for b in rows {
            let (d, c) = grp.lead(&b).expect("rows are non-trivial");
            debug_assert_eq!(c, 1);
            debug_assert!(e.rows[d].is_none());
            e.rows[d] = Some(Self::make_row(grp, b));
            e.count += 1;
        }
        e
    }

    /// Residue of `g` after stripping leading terms with basis rows.
    pub fn sift<G: PcGroup<Elt = E>>(&self, grp: &G, g: &E) -> E {
        let p = grp.prime() as u8;
        let mut g = g.clone();
        while let Some((d, c)) = grp.lead(&g) {
            match &self.rows[d] {
                Some(row) => g = grp.mul(&row.powers[(p - c - 1) as usize], &g),
                None => break,
            }
        }
        g
    }

    pub fn contains<G: PcGroup<Elt = E>>(&self, grp: &G, g: &E) -> bool {
        grp.is_identity(&self.sift(grp, g))
    }

    /// Adds the candidates and closes under `p`-th powers, commutators of
    /// rows and conjugation by `conj_by`.
    pub fn close<G: PcGroup<Elt = E>>(&mut self, grp: &G, candidates: Vec<E>, conj_by: &[E]) {
        let p = grp.prime();
        let mut queue = candidates;
        while let Some(g) = queue.pop() {
            let r = self.sift(grp, &g);
            let Some((d, c)) = grp.lead(&r) else { continue };
            let r = if c == 1 { r } else { grp.pow(&r, inv_mod_p(c, p as u8) as u64) };
            let row = Self::make_row(grp, r);
            let b = row.elt().clone();
            if !grp.power_hint(d) {
                queue.push(grp.mul(&row.powers[(p - 2) as usize], &b));
            }
            for (e, other) in self.rows.iter().enumerate() {
                if let Some(o) = other {
                    if !grp.commute_hint(d, e) {
                        queue.push(grp.comm(&b, o.elt()));
                    }
                }
            }
            for c in conj_by {
                queue.push(grp.conj(&b, c));
            }
            self.rows[d] = Some(row);
            self.count += 1;
        }
    }

    /// Visits every element of the subgroup generated by the rows at `depths`
    /// as ordered products `b_1^{e_1} ... b_r^{e_r}`.
    pub fn for_each_product<G: PcGroup<Elt = E>, F: FnMut(&E)>(&self, grp: &G, depths: &[usize], mut f: F) {
        fn rec<G: PcGroup, F: FnMut(&G::Elt)>(
            grp: &G,
            rows: &[&Row<G::Elt>],
            prefix: &G::Elt,
            f: &mut F,
        ) {
            match rows.split_first() {
                None => f(prefix),
                Some((row, rest)) => {
                    rec(grp, rest, prefix, f);
                    for pw in &row.powers {
                        let next = grp.mul(prefix, pw);
                        rec(grp, rest, &next, f);
                    }
                }
            }
        }
        let rows: Vec<&Row<E>> = depths.iter().map(|&d| self.rows[d].as_ref().expect("row present")).collect();
        rec(grp, &rows, &grp.identity(), &mut f);
    }
}

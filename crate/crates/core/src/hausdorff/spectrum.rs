use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, SerializeTuple};
use serde::{Serialize, Serializer};

use super::{fmt_ratio, ratio};
use crate::arith::pow;
use crate::error::{Error, Result};
use crate::series::SeriesKind;

/// `[lo, hi]`, or `[lo, hi)` when `closed_right` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub closed_right: bool,
}

impl Interval {
    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        Interval { lo, hi, closed_right: true }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && (q < &self.hi || (self.closed_right && q == &self.hi))
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&fmt_ratio(&self.lo))?;
        t.serialize_element(&fmt_ratio(&self.hi))?;
        t.serialize_element(&self.closed_right)?;
        t.end()
    }
}

/// A finite union of intervals and points inside `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumSet {
    intervals: Vec<Interval>,
    points: Vec<BigRational>,
    normalized: bool,
}

fn in_unit(q: &BigRational) -> bool {
    !(q < &BigRational::zero() || q > &BigRational::one())
}

impl SpectrumSet {
    pub fn new() -> Self {
        SpectrumSet { normalized: true, ..Default::default() }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn add_interval(&mut self, iv: Interval) -> Result<()> {
        if !in_unit(&iv.lo) || !in_unit(&iv.hi) || iv.lo > iv.hi {
            return Err(Error::Invalid(format!("[{}, {}] is not a subinterval of [0,1]", fmt_ratio(&iv.lo), fmt_ratio(&iv.hi))));
        }
        self.intervals.push(iv);
        self.normalized = false;
        Ok(())
    }

    pub fn add_point(&mut self, q: BigRational) -> Result<()> {
        if !in_unit(&q) {
            return Err(Error::Invalid(format!("{} is outside [0,1]", fmt_ratio(&q))));
        }
        self.points.push(q);
        self.normalized = false;
        Ok(())
    }

    /// Sorts and merges so that intervals are disjoint and points isolated.
    pub fn normalize(&mut self) {
        let mut ivs = std::mem::take(&mut self.intervals);
        let mut pts = std::mem::take(&mut self.points);
        ivs.retain(|iv| {
            if iv.lo == iv.hi {
                if iv.closed_right {
                    pts.push(iv.lo.clone());
                }
                false
            } else {
                true
            }
        });
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::new();
        for iv in ivs {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                        last.closed_right = iv.closed_right;
                    } else if iv.hi == last.hi {
                        last.closed_right |= iv.closed_right;
                    }
                }
                _ => merged.push(iv),
            }
        }
        pts.sort();
        pts.dedup();
        pts.retain(|q| {
            for iv in merged.iter_mut() {
                if iv.contains(q) {
                    return false;
                }
                if q == &iv.hi {
                    iv.closed_right = true;
                    return false;
                }
            }
            true
        });
        self.intervals = merged;
        self.points = pts;
        self.normalized = true;
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn union(&self, other: &SpectrumSet) -> SpectrumSet {
        let mut u = SpectrumSet {
            intervals: self.intervals.iter().chain(&other.intervals).cloned().collect(),
            points: self.points.iter().chain(&other.points).cloned().collect(),
            normalized: false,
        };
        u.normalize();
        u
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(q)) || self.points.contains(q)
    }

    /// Number of connected components (requires a normalized set).
    pub fn components(&self) -> usize {
        self.intervals.len() + self.points.len()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invalid(e.to_string()))
    }
}

impl Serialize for SpectrumSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectrumSet", 2)?;
        st.serialize_field("intervals", &self.intervals)?;
        st.serialize_field("points", &self.points.iter().map(fmt_ratio).collect::<Vec<_>>())?;
        st.end()
    }
}

impl fmt::Display for SpectrumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Part<'a> {
            I(&'a Interval),
            P(&'a BigRational),
        }
        let mut parts: Vec<(&BigRational, Part)> = self.intervals.iter().map(|iv| (&iv.lo, Part::I(iv))).collect();
        parts.extend(self.points.iter().map(|q| (q, Part::P(q))));
        parts.sort_by(|a, b| a.0.cmp(b.0));
        if parts.is_empty() {
            return write!(f, "∅");
        }
        let text: Vec<String> = parts
            .iter()
            .map(|(_, part)| match part {
                Part::I(iv) => format!("[{},{}{}", fmt_ratio(&iv.lo), fmt_ratio(&iv.hi), if iv.closed_right { "]" } else { ")" }),
                Part::P(q) => format!("{{{}}}", fmt_ratio(q)),
            })
            .collect();
        write!(f, "{}", text.join(" ∪ "))
    }
}

/// `[0, ξ] ∪ {η} ∪ {1}`.
pub fn normal_spectrum(xi: &BigRational, eta: &BigRational) -> Result<SpectrumSet> {
    if !(in_unit(xi) && in_unit(eta) && xi <= eta) {
        return Err(Error::Invalid(format!("need 0 ≤ ξ ≤ η ≤ 1 (ξ = {}, η = {})", fmt_ratio(xi), fmt_ratio(eta))));
    }
    let mut s = SpectrumSet::new();
    s.add_interval(Interval::closed(BigRational::zero(), xi.clone()))?;
    s.add_point(eta.clone())?;
    s.add_point(BigRational::one())?;
    Ok(s.normalized())
}

/// `[0, ξ] ∪ ⋃_{1 ≤ l < m} [l/m, (l + (m-l)ξ)/m] ∪ {1}`.
pub fn product_spectrum(m: u64, xi: &BigRational) -> Result<SpectrumSet> {
    if m == 0 || !in_unit(xi) {
        return Err(Error::Invalid(format!("need m ≥ 1 and 0 ≤ ξ ≤ 1 (m = {m}, ξ = {})", fmt_ratio(xi))));
    }
    let mut s = SpectrumSet::new();
    s.add_interval(Interval::closed(BigRational::zero(), xi.clone()))?;
    let mm = BigRational::from_integer(m.into());
    for l in 1..m {
        let lo = ratio(l, m);
        let hi = (BigRational::from_integer(l.into()) + BigRational::from_integer((m - l).into()) * xi) / &mm;
        s.add_interval(Interval::closed(lo, hi))?;
    }
    s.add_point(BigRational::one())?;
    Ok(s.normalized())
}

/// The merged form of `product_spectrum(m, 1/n)` for `m ≥ max(2, n-1)`:
/// `[0, (mn - (n-1)^2)/(mn)] ∪ ⋃_{m-n+2 ≤ l < m} [l/m, (l + (m-l)/n)/m] ∪ {1}`.
pub fn product_spectrum_closed_form(m: u64, n: u64) -> Result<SpectrumSet> {
    if n < 2 || m < 2.max(n - 1) {
        return Err(Error::Invalid(format!("need n ≥ 2 and m ≥ max(2, n-1) (m = {m}, n = {n})")));
    }
    let mut s = SpectrumSet::new();
    let (mi, ni) = (m as i64, n as i64);
    s.add_interval(Interval::closed(BigRational::zero(), ratio(mi * ni - (ni - 1) * (ni - 1), mi * ni)))?;
    for l in (mi - ni + 2).max(1)..mi {
        s.add_interval(Interval::closed(ratio(l, mi), ratio(l * ni + mi - l, mi * ni)))?;
    }
    s.add_point(BigRational::one())?;
    Ok(s)
}

/// Points `m/p^n` (or `1/2 + m/(2p^n)` and `0` for the lower `p`-series)
/// with `n ≤ n_max`, `0 ≤ m ≤ p^n`.
pub fn fg_spectrum_w(kind: SeriesKind, p: u64, n_max: u32) -> Result<SpectrumSet> {
    let mut s = SpectrumSet::new();
    for n in 0..=n_max {
        let pn = pow(p, n);
        for m in 0..=pn {
            s.add_point(match kind {
                SeriesKind::LowerP => ratio(pn + m, 2 * pn),
                SeriesKind::LowerCentral => return Err(Error::NoFormula("no spectrum for the lower central series".into())),
                _ => ratio(m, pn),
            })?;
        }
    }
    if kind == SeriesKind::LowerP {
        s.add_point(BigRational::zero())?;
    }
    Ok(s.normalized())
}

/// `[0, 1/2] ∪ {1/2 + m/(2p^n)} ∪ {1}`, truncated at `n ≤ n_max`.
pub fn l_spectrum_w(p: u64, n_max: u32) -> Result<SpectrumSet> {
    let mut s = fg_spectrum_w(SeriesKind::LowerP, p, n_max)?;
    s.add_interval(Interval::closed(BigRational::zero(), ratio(1, 2)))?;
    Ok(s.normalized())
}

/// `[0, 4/5) ∪ {3/5 + 2m/(5p^n) : p^n/2 < m ≤ p^n}`, truncated at `n ≤ n_max`.
pub fn l_spectrum_g(p: u64, n_max: u32) -> Result<SpectrumSet> {
    let mut s = SpectrumSet::new();
    s.add_interval(Interval { lo: BigRational::zero(), hi: ratio(4, 5), closed_right: false })?;
    for n in 0..=n_max {
        let pn = pow(p, n);
        for m in pn / 2 + 1..=pn {
            s.add_point(ratio(3 * pn + 2 * m, 5 * pn))?;
        }
    }
    Ok(s.normalized())
}

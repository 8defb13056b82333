//! JSON subgroup specifications.
//!
//! ```json
//! {
//!   "id": "K",
//!   "group": {"family": "G", "p": 3, "k": "auto"},
//!   "generators": [
//!     {"word": "x^3"},
//!     {"pattern": "y_j", "residues": [0, 1], "modulus": 3, "from": 0, "to": 8},
//!     {"named": "Z"}
//!   ]
//! }
//! ```
//!
//! Patterns are `y_j`, `e_j` and `x^(p^n)`; the index runs over `from..=to`
//! (to the largest valid index when `to` is absent) restricted to the given
//! residues. Named subgroups are `Z`, `H`, `base`, `K_{n,m}`, `full` and
//! `trivial`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::pow;
use crate::collector::{eval_word, parse_word, Element, Family, GroupCtx, GroupParams, Word};
use crate::error::{Error, Result};
use crate::subgroups::{central_z, generate, h_subgroup, k_wreath, EchelonSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelSel {
    Fixed(u32),
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSelector {
    pub family: Option<Family>,
    pub p: Option<u64>,
    pub k: LevelSel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Template {
    /// `y_j = y^(x^j)`.
    YJ,
    /// `e_j = [y_0, y_j]`.
    EJ,
    /// `x^(p^n)`.
    XPow,
}

impl Template {
    fn text(self) -> &'static str {
        match self {
            Template::YJ => "y_j",
            Template::EJ => "e_j",
            Template::XPow => "x^(p^n)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub template: Template,
    /// `(residues, modulus)`; every index when absent.
    pub residues: Option<(Vec<u64>, u64)>,
    pub from: u64,
    pub to: Option<u64>,
}

impl Pattern {
    fn admits(&self, j: u64) -> bool {
        self.residues.as_ref().is_none_or(|(r, m)| r.contains(&(j % m)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Z,
    H,
    Base,
    K { n: u32, m: usize },
    Full,
    Trivial,
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Z => write!(f, "Z"),
            Named::H => write!(f, "H"),
            Named::Base => write!(f, "base"),
            Named::K { n, m } => write!(f, "K_{{{n},{m}}}"),
            Named::Full => write!(f, "full"),
            Named::Trivial => write!(f, "trivial"),
        }
    }
}

impl std::str::FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Z" => Named::Z,
            "H" => Named::H,
            "base" => Named::Base,
            "full" | "G" => Named::Full,
            "trivial" | "1" => Named::Trivial,
            other => {
                let inner = other
                    .strip_prefix("K_")
                    .map(|r| r.trim_start_matches('{').trim_end_matches('}'))
                    .ok_or_else(|| Error::Spec(format!("unknown named subgroup '{other}'")))?;
                let (n, m) = inner.split_once(',').ok_or_else(|| Error::Spec(format!("expected K_{{n,m}}, got '{other}'")))?;
                let n = n.trim().parse().map_err(|_| Error::Spec(format!("bad n in '{other}'")))?;
                let m = m.trim().parse().map_err(|_| Error::Spec(format!("bad m in '{other}'")))?;
                Named::K { n, m }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Word(Word),
    Pattern(Pattern),
    Named(Named),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub id: Option<String>,
    pub group: GroupSelector,
    pub generators: Vec<Generator>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum RawLevel {
    Fixed(u32),
    Text(String),
}

#[derive(Deserialize, Serialize, Default)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<RawLevel>,
}

#[derive(Deserialize, Serialize, Default)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    named: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residues: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    to: Option<u64>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<RawGroup>,
    generators: Vec<RawEntry>,
}

fn entry_err(i: usize, msg: impl fmt::Display) -> Error {
    Error::Spec(format!("generator {i}: {msg}"))
}

fn parse_entry(i: usize, e: RawEntry) -> Result<Generator> {
    let given = [e.word.is_some(), e.pattern.is_some(), e.named.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(entry_err(i, "exactly one of 'word', 'pattern', 'named' is required"));
    }
    let pattern_fields = e.residues.is_some() || e.modulus.is_some() || e.from.is_some() || e.to.is_some();
    if e.pattern.is_none() && pattern_fields {
        return Err(entry_err(i, "'residues', 'modulus', 'from', 'to' belong to pattern entries"));
    }
    if let Some(w) = e.word {
        return parse_word(&w).map(Generator::Word).map_err(|err| entry_err(i, format!("malformed word '{w}': {err}")));
    }
    if let Some(n) = e.named {
        return n.parse().map(Generator::Named).map_err(|err| entry_err(i, err));
    }
    let text = e.pattern.unwrap();
    let template = match text.replace(' ', "").as_str() {
        "y_j" => Template::YJ,
        "e_j" => Template::EJ,
        "x^(p^n)" => Template::XPow,
        _ => return Err(entry_err(i, format!("unknown pattern '{text}' (expected y_j, e_j or x^(p^n))"))),
    };
    let residues = match (e.residues, e.modulus) {
        (None, None) => None,
        (Some(r), Some(m)) => {
            if m == 0 {
                return Err(entry_err(i, "modulus must be positive"));
            }
            let mut r: Vec<u64> = r.into_iter().filter(|&x| x < m).collect();
            r.sort_unstable();
            r.dedup();
            Some((r, m))
        }
        _ => return Err(entry_err(i, "'residues' and 'modulus' go together")),
    };
    let from = e.from.unwrap_or(if template == Template::EJ { 1 } else { 0 });
    let pat = Pattern { template, residues, from, to: e.to };
    let empty = match (&pat.residues, pat.to) {
        (Some((r, _)), _) if r.is_empty() => true,
        (Some((_, m)), Some(to)) => !(from..=to.min(from + m)).any(|j| pat.admits(j)),
        (None, Some(to)) => to < from,
        _ => false,
    };
    if empty {
        return Err(entry_err(i, format!("pattern '{text}' selects no index")));
    }
    Ok(Generator::Pattern(pat))
}

fn position_err(e: serde_json::Error) -> Error {
    Error::Spec(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses a JSON specification.
pub fn parse_spec(text: &str) -> Result<SubgroupSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(position_err)?;
    let g = raw.group.unwrap_or_default();
    let family = g.family.map(|f| f.parse::<Family>()).transpose().map_err(|e| Error::Spec(e.to_string()))?;
    let k = match g.k {
        None => LevelSel::Auto,
        Some(RawLevel::Fixed(k)) => LevelSel::Fixed(k),
        Some(RawLevel::Text(t)) if t == "auto" => LevelSel::Auto,
        Some(RawLevel::Text(t)) => return Err(Error::Spec(format!("k must be a number or \"auto\", got \"{t}\""))),
    };
    let generators = raw.generators.into_iter().enumerate().map(|(i, e)| parse_entry(i, e)).collect::<Result<_>>()?;
    Ok(SubgroupSpec { id: raw.id, group: GroupSelector { family, p: g.p, k }, generators })
}

impl SubgroupSpec {
    /// Canonical JSON form; parsing it gives back the same specification.
    pub fn to_json(&self) -> Result<String> {
        let group = RawGroup {
            family: self.group.family.map(|f| f.to_string()),
            p: self.group.p,
            k: Some(match self.group.k {
                LevelSel::Fixed(k) => RawLevel::Fixed(k),
                LevelSel::Auto => RawLevel::Text("auto".into()),
            }),
        };
        let generators = self
            .generators
            .iter()
            .map(|g| match g {
                Generator::Word(w) => RawEntry { word: Some(w.to_string()), ..Default::default() },
                Generator::Named(n) => RawEntry { named: Some(n.to_string()), ..Default::default() },
                Generator::Pattern(p) => RawEntry {
                    pattern: Some(p.template.text().into()),
                    residues: p.residues.as_ref().map(|r| r.0.clone()),
                    modulus: p.residues.as_ref().map(|r| r.1),
                    from: Some(p.from),
                    to: p.to,
                    ..Default::default()
                },
            })
            .collect();
        let raw = RawSpec { id: self.id.clone(), group: Some(group), generators };
        serde_json::to_string(&raw).map_err(|e| Error::Spec(e.to_string()))
    }

    /// Display name: the id, or the generator list.
    pub fn label(&self) -> String {
        if let Some(id) = &self.id {
            return id.clone();
        }
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g {
                Generator::Word(w) => w.to_string(),
                Generator::Named(n) => n.to_string(),
                Generator::Pattern(p) => p.template.text().into(),
            })
            .collect();
        format!("⟨{}⟩", parts.join(", "))
    }

    /// The single named entry, if the specification is exactly one name.
    pub fn as_named(&self) -> Option<Named> {
        match self.generators.as_slice() {
            [Generator::Named(n)] => Some(*n),
            _ => None,
        }
    }

    /// Smallest level at which every bounded pattern fits.
    pub fn min_level(&self, family: Family, p: u64) -> Result<u32> {
        'k: for k in 1.. {
            let params = GroupParams::new(family, p, k)?;
            for g in &self.generators {
                if let Generator::Pattern(pat) = g {
                    let fits = match (pat.template, pat.to) {
                        (Template::YJ, Some(to)) => to < params.q(),
                        (Template::EJ, Some(to)) => family == Family::Gk && to <= params.e(),
                        (Template::EJ, None) => family == Family::Gk,
                        _ => true,
                    };
                    if !fits {
                        if pat.template == Template::EJ && family == Family::Wk {
                            return Err(Error::Spec("e_j patterns need the G family".into()));
                        }
                        continue 'k;
                    }
                }
            }
            return Ok(k);
        }
        unreachable!()
    }
}

fn named_subgroup(ctx: &GroupCtx, n: Named) -> EchelonSubgroup {
    match n {
        Named::Z => central_z(ctx),
        Named::H => h_subgroup(ctx),
        Named::Base => EchelonSubgroup::full(ctx).tail(ctx.x_depths()),
        Named::K { n, m } => k_wreath(ctx, n, m),
        Named::Full => EchelonSubgroup::full(ctx),
        Named::Trivial => EchelonSubgroup::trivial(ctx),
    }
}

fn pattern_elements(ctx: &GroupCtx, pat: &Pattern) -> Result<Vec<Element>> {
    let last = match pat.template {
        Template::YJ => ctx.q() as u64 - 1,
        Template::EJ => ctx.e_count() as u64,
        Template::XPow => ctx.x_depths() as u64,
    };
    let to = pat.to.unwrap_or(last);
    if to > last {
        return Err(Error::Spec(format!("{} with index {to} does not fit in {}", pat.template.text(), ctx.params())));
    }
    Ok((pat.from..=to)
        .filter(|&j| pat.admits(j))
        .map(|j| match pat.template {
            Template::YJ => ctx.y_i(j as usize),
            Template::EJ => ctx.e_j(j as usize),
            Template::XPow => ctx.x_pow(pow(ctx.p(), j as u32) as i64),
        })
        .collect())
}

/// Generators of the specified subgroup in `ctx`.
pub fn instantiate(spec: &SubgroupSpec, ctx: &GroupCtx) -> Result<Vec<Element>> {
    if let Some(f) = spec.group.family {
        if f != ctx.family() {
            return Err(Error::Spec(format!("specification is for the {f} family, context is {}", ctx.params())));
        }
    }
    if let Some(p) = spec.group.p {
        if p != ctx.p() {
            return Err(Error::Spec(format!("specification is for p = {p}, context is {}", ctx.params())));
        }
    }
    let k0 = spec.min_level(ctx.family(), ctx.p())?;
    if ctx.k() < k0 {
        return Err(Error::Spec(format!("specification needs k ≥ {k0}, context is {}", ctx.params())));
    }
    let mut out = Vec::new();
    for g in &spec.generators {
        match g {
            Generator::Word(w) => out.push(eval_word(w, ctx)),
            Generator::Named(n) => out.extend(named_subgroup(ctx, *n).basis()),
            Generator::Pattern(p) => out.extend(pattern_elements(ctx, p)?),
        }
    }
    Ok(out)
}

/// The subgroup generated by the instantiated generators.
pub fn subgroup(spec: &SubgroupSpec, ctx: &GroupCtx) -> Result<EchelonSubgroup> {
    Ok(generate(ctx, &instantiate(spec, ctx)?))
}

//! Filtration series of `G_k` and `W_k`: lower central, lower `p`, Frattini,
//! Jennings (dimension subgroup) and `p`-power series.

mod predict;
mod table;

pub use predict::{predicted_length, predicted_log_index, predicted_rank};
pub use table::{exact_tower_bound, layer_table, p_power_tower, stability, LayerRow, LayerTable, Stability, TowerLevel};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log, pow};
use crate::collector::{GroupCtx, GroupParams};
use crate::error::{Error, Result};
use crate::subgroups::{
    agemo, agemo_mod, agemo_mod_abelian, commutator_subgroup, commutator_with_group, join, join_normal, AgemoMode,
    Budget, EchelonSubgroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `γ_i`, letter `C`.
    LowerCentral,
    /// `P_{i+1} = P_i^p [P_i, G]`, letter `L`.
    LowerP,
    /// `Φ_{i+1} = Φ_i^p [Φ_i, Φ_i]`, letter `F`.
    Frattini,
    /// Dimension subgroups, letter `D`.
    Jennings,
    /// `G^{p^i}`, letter `P`.
    PPower,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 5] =
        [SeriesKind::LowerCentral, SeriesKind::LowerP, SeriesKind::Frattini, SeriesKind::Jennings, SeriesKind::PPower];

    pub fn letter(self) -> char {
        match self {
            SeriesKind::LowerCentral => 'C',
            SeriesKind::LowerP => 'L',
            SeriesKind::Frattini => 'F',
            SeriesKind::Jennings => 'D',
            SeriesKind::PPower => 'P',
        }
    }

    /// Index of the term equal to the whole group.
    pub fn first_level(self) -> usize {
        match self {
            SeriesKind::Frattini | SeriesKind::PPower => 0,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::LowerCentral => "lower central",
            SeriesKind::LowerP => "lower p",
            SeriesKind::Frattini => "Frattini",
            SeriesKind::Jennings => "Jennings",
            SeriesKind::PPower => "p-power",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C" | "c" | "lower_central" => Ok(SeriesKind::LowerCentral),
            "L" | "l" | "lower_p" => Ok(SeriesKind::LowerP),
            "F" | "f" | "frattini" => Ok(SeriesKind::Frattini),
            "D" | "d" | "jennings" => Ok(SeriesKind::Jennings),
            "P" | "p" | "p_power" => Ok(SeriesKind::PPower),
            other => Err(Error::Invalid(format!("unknown series '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JenningsMethod {
    Recursive,
    ClosedForm,
    /// Computes both and fails unless they agree.
    Both,
}

/// How power subgroups are obtained while building a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeriesOptions {
    pub mode: AgemoMode,
    pub budget: Budget,
    pub jennings: JenningsMethod,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { mode: AgemoMode::Auto, budget: Budget::from_env(), jennings: JenningsMethod::Recursive }
    }
}

impl SeriesOptions {
    pub fn exact() -> Self {
        SeriesOptions { mode: AgemoMode::Exact, ..Default::default() }
    }

    pub fn formula() -> Self {
        SeriesOptions { mode: AgemoMode::Formula, jennings: JenningsMethod::ClosedForm, ..Default::default() }
    }
}

/// The terms of a series, starting with the whole group and ending with the
/// last non-trivial term.
#[derive(Clone, Debug)]
pub struct FiltrationSeries {
    pub ctx: GroupCtx,
    pub kind: SeriesKind,
    pub terms: Vec<EchelonSubgroup>,
    /// False when some power subgroup came from the closed-form bound.
    pub exact: bool,
}

impl FiltrationSeries {
    pub fn first_level(&self) -> usize {
        self.kind.first_level()
    }

    /// Number of non-trivial terms.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// The term `S_i`; trivial past the end and the whole group before the start.
    pub fn term(&self, level: usize) -> EchelonSubgroup {
        let first = self.first_level();
        if level < first {
            return EchelonSubgroup::full(&self.ctx);
        }
        self.terms.get(level - first).cloned().unwrap_or_else(|| EchelonSubgroup::trivial(&self.ctx))
    }

    /// `log_p |G : S_i|`.
    pub fn log_index(&self, level: usize) -> usize {
        self.ctx.log_order() - self.term(level).log_order()
    }

    /// `log_p |S_i : S_{i+1}|` for each non-trivial term.
    pub fn layer_log(&self) -> Vec<usize> {
        let first = self.first_level();
        (0..self.terms.len())
            .map(|j| self.terms[j].log_order() - self.term(first + j + 1).log_order())
            .collect()
    }
}

type CacheKey = (GroupParams, SeriesKind, AgemoMode, JenningsMethod, Budget);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<FiltrationSeries>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<FiltrationSeries>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Computes (or fetches from the cache) a series.
pub fn series(ctx: &GroupCtx, kind: SeriesKind, opts: &SeriesOptions) -> Result<Arc<FiltrationSeries>> {
    let key = match kind {
        SeriesKind::LowerCentral | SeriesKind::LowerP | SeriesKind::Frattini => {
            (ctx.params(), kind, AgemoMode::Exact, JenningsMethod::Recursive, Budget::default())
        }
        SeriesKind::PPower => (ctx.params(), kind, opts.mode, JenningsMethod::Recursive, opts.budget),
        SeriesKind::Jennings => (ctx.params(), kind, opts.mode, opts.jennings, opts.budget),
    };
    if let Some(s) = cache().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let computed = Arc::new(compute(ctx, kind, opts)?);
    cache().lock().unwrap().insert(key, computed.clone());
    Ok(computed)
}

fn compute(ctx: &GroupCtx, kind: SeriesKind, opts: &SeriesOptions) -> Result<FiltrationSeries> {
    let (terms, exact) = match kind {
        SeriesKind::LowerCentral => (lower_central_terms(ctx), true),
        SeriesKind::LowerP => (lower_p_terms(ctx), true),
        SeriesKind::Frattini => (frattini_terms(ctx), true),
        SeriesKind::PPower => p_power_terms(ctx, opts)?,
        SeriesKind::Jennings => match opts.jennings {
            JenningsMethod::Recursive => (jennings_recursive(ctx, &opts.budget)?, true),
            JenningsMethod::ClosedForm => jennings_closed_form(ctx, opts)?,
            JenningsMethod::Both => {
                let rec = jennings_recursive(ctx, &opts.budget)?;
                let (closed, exact) = jennings_closed_form(ctx, opts)?;
                if rec != closed {
                    return Err(Error::Invalid(format!(
                        "Jennings series of {} differ: recursive {:?}, closed form {:?}",
                        ctx.params(),
                        rec.iter().map(|t| t.log_order()).collect::<Vec<_>>(),
                        closed.iter().map(|t| t.log_order()).collect::<Vec<_>>()
                    )));
                }
                (rec, exact)
            }
        },
    };
    Ok(FiltrationSeries { ctx: ctx.clone(), kind, terms, exact })
}

fn collect_until_trivial(first: EchelonSubgroup, mut next: impl FnMut(&EchelonSubgroup) -> EchelonSubgroup) -> Vec<EchelonSubgroup> {
    let mut terms = vec![first];
    loop {
        let n = next(terms.last().unwrap());
        if n.is_trivial() {
            return terms;
        }
        terms.push(n);
    }
}

fn lower_central_terms(ctx: &GroupCtx) -> Vec<EchelonSubgroup> {
    collect_until_trivial(EchelonSubgroup::full(ctx), commutator_with_group)
}

fn lower_p_terms(ctx: &GroupCtx) -> Vec<EchelonSubgroup> {
    collect_until_trivial(EchelonSubgroup::full(ctx), |t| agemo_mod_abelian(t, 1, &commutator_with_group(t)))
}

fn frattini_terms(ctx: &GroupCtx) -> Vec<EchelonSubgroup> {
    collect_until_trivial(EchelonSubgroup::full(ctx), |t| agemo_mod_abelian(t, 1, &commutator_subgroup(t, t)))
}

fn p_power_terms(ctx: &GroupCtx, opts: &SeriesOptions) -> Result<(Vec<EchelonSubgroup>, bool)> {
    let full = EchelonSubgroup::full(ctx);
    let mut terms = vec![full.clone()];
    let mut exact = true;
    for m in 1.. {
        let r = agemo(&full, m, opts.mode, &opts.budget)?;
        exact &= r.exact;
        if r.subgroup.is_trivial() {
            break;
        }
        terms.push(r.subgroup);
    }
    Ok((terms, exact))
}

/// `γ_i` of a context, trivial past the class.
pub fn gamma_term(ctx: &GroupCtx, i: usize) -> EchelonSubgroup {
    series(ctx, SeriesKind::LowerCentral, &SeriesOptions::default())
        .map(|s| s.term(i))
        .expect("lower central series needs no power subgroups")
}

/// `D_i = D_{⌈i/p⌉}^p ∏_{j ≤ i/2} [D_j, D_{i-j}]`.
fn jennings_recursive(ctx: &GroupCtx, budget: &Budget) -> Result<Vec<EchelonSubgroup>> {
    let p = ctx.p() as usize;
    let mut d: Vec<EchelonSubgroup> = vec![EchelonSubgroup::trivial(ctx), EchelonSubgroup::full(ctx)];
    loop {
        let i = d.len();
        let mut m = EchelonSubgroup::trivial(ctx);
        for j in 1..=i / 2 {
            m = join_normal(&m, &commutator_subgroup(&d[j], &d[i - j]));
        }
        let next = agemo_mod(&d[i.div_ceil(p)], 1, &m, budget)?;
        if next.is_trivial() {
            break;
        }
        d.push(next);
    }
    Ok(d.split_off(1))
}

/// `D_i = G^{p^{l(i)}} γ_i` with `l(i) = ⌈log_p i⌉`; for `p = 2` in `G_k` the
/// factor `γ_{⌈i/2⌉}^2` is included as well.
fn jennings_closed_form(ctx: &GroupCtx, opts: &SeriesOptions) -> Result<(Vec<EchelonSubgroup>, bool)> {
    let full = EchelonSubgroup::full(ctx);
    let mut powers: HashMap<u32, EchelonSubgroup> = HashMap::new();
    let mut exact = true;
    let mut terms = Vec::new();
    for i in 1usize.. {
        let l = ceil_log(i as u64, ctx.p());
        if let std::collections::hash_map::Entry::Vacant(e) = powers.entry(l) {
            let r = agemo(&full, l, opts.mode, &opts.budget)?;
            exact &= r.exact;
            e.insert(r.subgroup);
        }
        let mut t = join(&powers[&l], &gamma_term(ctx, i));
        if ctx.p() == 2 && ctx.is_g() && i > 1 {
            let half = gamma_term(ctx, i.div_ceil(2));
            let sq = agemo(&half, 1, AgemoMode::Exact, &opts.budget)?;
            t = join(&t, &sq.subgroup);
        }
        if t.is_trivial() {
            break;
        }
        terms.push(t);
    }
    Ok((terms, exact))
}

/// Log-index of the level-`i` power subgroup predicted by the closed form
/// `(3p^i + 2i - 3)/2` for odd `p`.
pub fn p_power_index_formula(p: u64, i: u32) -> u64 {
    (3 * pow(p, i) + 2 * i as u64 - 3) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip() {
        for k in SeriesKind::ALL {
            assert_eq!(k.letter().to_string().parse::<SeriesKind>().unwrap(), k);
        }
        assert!("X".parse::<SeriesKind>().is_err());
    }

    #[test]
    fn lower_central_of_small_groups() {
        let g = GroupCtx::g(3, 1).unwrap();
        let s = series(&g, SeriesKind::LowerCentral, &SeriesOptions::default()).unwrap();
        assert_eq!(s.length(), 3);
        assert_eq!(s.layer_log(), vec![4, 1, 2]);
        let w = GroupCtx::w(3, 1).unwrap();
        let s = series(&w, SeriesKind::LowerCentral, &SeriesOptions::default()).unwrap();
        assert_eq!(s.layer_log(), vec![2, 1, 1]);
    }
}

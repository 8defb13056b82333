use serde::Serialize;

use super::{predicted_length, predicted_log_index, predicted_rank, series, FiltrationSeries, SeriesKind, SeriesOptions};
use crate::collector::{GroupCtx, GroupParams};
use crate::error::{Error, Result};
use crate::subgroups::{agemo, AgemoMode, Budget, EchelonSubgroup};

/// One level of a layer table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerRow {
    pub level: usize,
    /// `log_p |G : S_i|`.
    pub log_index: usize,
    /// `log_p |S_i : S_{i+1}|`.
    pub rank: usize,
    /// Whether the level agrees with the next quotient in the family.
    pub stable: Option<bool>,
    pub predicted_rank: Option<usize>,
    #[serde(skip)]
    pub predicted_log_index: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerTable {
    pub group: String,
    pub kind: SeriesKind,
    pub exact: bool,
    pub length: usize,
    pub predicted_length: Option<usize>,
    pub rows: Vec<LayerRow>,
}

impl LayerTable {
    /// True when every registered prediction (ranks, log-indices and length) holds.
    pub fn matches_predictions(&self) -> bool {
        self.rows.iter().all(|r| r.matches != Some(false)) && self.predicted_length.is_none_or(|l| l == self.length)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Invalid(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
    }
}

fn next_ctx(ctx: &GroupCtx) -> Result<GroupCtx> {
    let p = ctx.params();
    GroupCtx::new(GroupParams::new(p.family, p.p, p.k + 1)?)
}

/// Layer table of a series. With `check_stability` each level is compared
/// with the same level of the next quotient `G_{k+1}` (or `W_{k+1}`).
pub fn layer_table(ctx: &GroupCtx, kind: SeriesKind, opts: &SeriesOptions, check_stability: bool) -> Result<LayerTable> {
    let s = series(ctx, kind, opts)?;
    let next = if check_stability { Some(series(&next_ctx(ctx)?, kind, opts)?) } else { None };
    let params = ctx.params();
    let first = kind.first_level();
    let rows = s
        .layer_log()
        .into_iter()
        .enumerate()
        .map(|(j, rank)| {
            let level = first + j;
            let log_index = s.log_index(level);
            let stable = next.as_ref().map(|n| agrees(&s, n, level));
            let predicted_rank = predicted_rank(params, kind, level);
            let predicted_log_index = predicted_log_index(params, kind, level);
            let checks: Vec<bool> = predicted_rank
                .map(|r| r == rank)
                .into_iter()
                .chain(predicted_log_index.map(|l| l == log_index))
                .collect();
            let matches = (!checks.is_empty()).then(|| checks.iter().all(|&b| b));
            LayerRow { level, log_index, rank, stable, predicted_rank, predicted_log_index, matches }
        })
        .collect();
    Ok(LayerTable {
        group: params.to_string(),
        kind,
        exact: s.exact,
        length: s.length(),
        predicted_length: predicted_length(params, kind),
        rows,
    })
}

/// Log-index measured from the reference level: `G/γ_2` grows with `k`, so
/// lower central terms are compared inside `γ_2`.
fn reference(s: &FiltrationSeries, level: usize) -> usize {
    if s.kind == SeriesKind::LowerCentral && level >= 2 {
        s.log_index(2)
    } else {
        0
    }
}

fn agrees(a: &FiltrationSeries, b: &FiltrationSeries, level: usize) -> bool {
    let (ra, rb) = (reference(a, level), reference(b, level));
    a.log_index(level) - ra == b.log_index(level) - rb && a.log_index(level + 1) - ra == b.log_index(level + 1) - rb
}

/// Level data read off the first quotient where it no longer changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stability {
    /// Smallest `k` with agreement between `G_k` and `G_{k+1}`.
    pub k: u32,
    pub log_index: usize,
    pub rank: usize,
}

/// Finds the first `k <= k_max` such that level `i` of the series has the
/// same log-index and rank in `G_k` and `G_{k+1}`.
pub fn stability(
    family: crate::Family,
    kind: SeriesKind,
    p: u64,
    i: usize,
    k_max: u32,
    opts: &SeriesOptions,
) -> Result<Option<Stability>> {
    let mut prev = series(&GroupCtx::new(GroupParams::new(family, p, 1)?)?, kind, opts)?;
    for k in 1..k_max {
        let cur = series(&GroupCtx::new(GroupParams::new(family, p, k + 1)?)?, kind, opts)?;
        if agrees(&prev, &cur, i) {
            return Ok(Some(Stability {
                k,
                log_index: prev.log_index(i),
                rank: prev.log_index(i + 1) - prev.log_index(i),
            }));
        }
        prev = cur;
    }
    Ok(None)
}

/// One level of the `p`-power tower.
#[derive(Clone, Debug, Serialize)]
pub struct TowerLevel {
    pub level: u32,
    /// `log_p |G_i : G_i^{p^i}|`.
    pub log_index: usize,
    pub predicted: Option<usize>,
    /// Whether the power subgroup was enumerated exactly.
    pub exact: bool,
    /// Whether the iterated powers `(...(G^p)^p...)^p` give the same subgroup;
    /// `None` when not checked.
    pub iterated_agrees: Option<bool>,
}

/// Largest tower level computed by exact enumeration.
pub fn exact_tower_bound(p: u64) -> u32 {
    match p {
        2 => 4,
        3 => 2,
        5 => 1,
        _ => 0,
    }
}

/// `log_p |G_i : G_i^{p^i}|` for `i = 1..=i_max`, each in its own quotient `G_i`.
pub fn p_power_tower(p: u64, i_max: u32, budget: &Budget) -> Result<Vec<TowerLevel>> {
    let mut out = Vec::new();
    for i in 1..=i_max {
        let ctx = GroupCtx::g(p, i)?;
        let full = EchelonSubgroup::full(&ctx);
        let exact = i <= exact_tower_bound(p);
        let mode = if exact { AgemoMode::Exact } else { AgemoMode::Formula };
        let r = agemo(&full, i, mode, budget)?;
        let iterated_agrees = if exact {
            let mut t = full.clone();
            for _ in 0..i {
                t = agemo(&t, 1, AgemoMode::Exact, budget)?.subgroup;
            }
            Some(t == r.subgroup)
        } else {
            None
        };
        out.push(TowerLevel {
            level: i,
            log_index: ctx.log_order() - r.subgroup.log_order(),
            predicted: predicted_log_index(ctx.params(), SeriesKind::PPower, i as usize),
            exact: r.exact,
            iterated_agrees,
        });
    }
    Ok(out)
}

use serde::Serialize;

use super::word::{eval_word, parse_word, Word};
use super::{Family, GroupCtx, GroupParams};

/// Outcome of evaluating one relator.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relator: String,
    pub passed: bool,
}

/// Evaluation of every defining relator of a context.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub params: GroupParams,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn y_i_text(i: usize) -> String {
    if i == 0 {
        "y".to_string()
    } else {
        format!("(x^-{i}*y*x^{i})")
    }
}

/// Relator words of the defining presentation.
pub fn relators(ctx: &GroupCtx) -> Vec<String> {
    let p = ctx.p();
    let q = ctx.q() as u64;
    let mut out = Vec::new();
    match ctx.family() {
        Family::Gk => {
            out.push(format!("x^{}", q * p));
            out.push(format!("y^{}", p * p));
            out.push(format!("[x^{q}, y]"));
            out.push(format!("[y^{p}, x]"));
            for i in 1..=ctx.e_count() {
                let yi = y_i_text(i);
                out.push(format!("[y, {yi}]^{p}"));
                out.push(format!("[y, {yi}, x]"));
                out.push(format!("[y, {yi}, y]"));
            }
        }
        Family::Wk => {
            out.push(format!("x^{q}"));
            out.push(format!("y^{p}"));
            for i in 1..ctx.q() {
                out.push(format!("[y, {}]", y_i_text(i)));
            }
        }
    }
    out
}

/// Evaluates every relator of the presentation of `ctx`.
pub fn check_relations(ctx: &GroupCtx) -> RelationReport {
    let checks = relators(ctx)
        .into_iter()
        .map(|r| {
            let w: Word = parse_word(&r).expect("relator words are well formed");
            RelationCheck { passed: eval_word(&w, ctx).is_identity(), relator: r }
        })
        .collect();
    RelationReport { params: ctx.params(), checks }
}

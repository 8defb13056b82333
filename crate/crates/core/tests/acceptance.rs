//! Acceptance report: one PASS/FAIL line per criterion.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use pgroup::collector::{check_relations, parse_word, Family, GroupCtx};
use pgroup::hausdorff::{
    check_slice, closed_form_sequence, default_tolerance, density_terms, elem_ab_slice, fmt_ratio, hdim_estimate,
    layer_data, normal_spectrum, product_spectrum, product_spectrum_closed_form, ratio, section_k_density,
    wreath_k_density, DensitySequence, Target, DEFAULT_TAIL_WINDOW,
};
use pgroup::oracle::{
    associativity_exhaustive, associativity_sampled, check_congruence, cross_validate, CongruenceKind, EnumeratedGroup,
    DEFAULT_ORACLE_BUDGET,
};
use pgroup::series::{gamma_term, layer_table, series, JenningsMethod, SeriesKind, SeriesOptions};
use pgroup::subgroups::{agemo, central_z, power_reference, AgemoMode, Budget, EchelonSubgroup};
use pgroup::Result;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn dist(a: &BigRational, b: &BigRational) -> f64 {
    (a - b).abs().to_f64().unwrap_or(f64::INFINITY)
}

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn estimate(seq: &DensitySequence, window: usize) -> Result<(BigRational, bool)> {
    let e = hdim_estimate(seq, window, &default_tolerance())?;
    Ok((e.estimate, e.strong))
}

fn c1_orders() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut slowest = 0.0f64;
    for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        let t = Instant::now();
        let ctx = GroupCtx::g(p, k)?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
        let expected = ((3 * p.pow(k) + 2 * k as u64 + 3) / 2) as usize;
        if ctx.log_order() != expected {
            bad.push(format!("G_{k}({p}): {} vs {expected}", ctx.log_order()));
        }
    }
    Ok(outcome(bad.is_empty() && slowest < 10.0, format!("mismatches {bad:?}, slowest build {slowest:.2}s")))
}

fn c2_p2_orders() -> Result<Outcome> {
    let logs: Vec<(usize, usize)> = (1..=5u32)
        .map(|k| Ok((GroupCtx::g(2, k)?.log_order(), (2usize.pow(k) + 2usize.pow(k - 1)) + k as usize + 2)))
        .collect::<Result<_>>()?;
    Ok(outcome(logs.iter().all(|(a, b)| a == b), format!("(computed, formula) {logs:?}")))
}

fn c3_soundness() -> Result<Outcome> {
    let mut contexts = Vec::new();
    for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        contexts.push(GroupCtx::g(p, k)?);
        contexts.push(GroupCtx::w(p, k)?);
    }
    for k in 1..=5 {
        contexts.push(GroupCtx::g(2, k)?);
    }
    let failing: Vec<String> =
        contexts.iter().filter(|c| !check_relations(c).all_passed()).map(|c| c.params().to_string()).collect();
    let mut notes = vec![format!("relations checked in {} contexts, failing {failing:?}", contexts.len())];
    let mut ok = failing.is_empty();
    for k in 1..=3 {
        let ctx = GroupCtx::g(2, k)?;
        match associativity_exhaustive(&ctx) {
            Ok(a) => {
                ok &= a;
                notes.push(format!("{}: all triples {a}", ctx.params()));
            }
            Err(_) => {
                let oracle = EnumeratedGroup::new(ctx.params(), DEFAULT_ORACLE_BUDGET)?;
                let a = associativity_sampled(&ctx, 100_000, 11, Some(&oracle))?;
                ok &= a;
                notes.push(format!("{}: 10^5 sampled triples against the enumerated group {a}", ctx.params()));
            }
        }
    }
    let g31 = GroupCtx::g(3, 1)?;
    let a = associativity_sampled(&g31, 100_000, 5, None)?;
    ok &= a;
    notes.push(format!("G_1(3): 10^5 sampled triples {a}"));
    Ok(outcome(ok, notes.join("; ")))
}

fn c4_power_subgroup() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, k) in [(3, 1), (3, 2), (5, 1), (2, 2), (2, 3)] {
        let ctx = GroupCtx::g(p, k)?;
        let r = agemo(&EchelonSubgroup::full(&ctx), k, AgemoMode::Exact, &Budget::default())?;
        let reference = power_reference(&ctx);
        let good = r.subgroup == reference && reference.log_order() == 3;
        ok &= good;
        notes.push(format!("{}: log {} vs reference log {} {}", ctx.params(), r.subgroup.log_order(), reference.log_order(), if good { "ok" } else { "DIFFER" }));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn table_ok(ctx: &GroupCtx, kind: SeriesKind, opts: &SeriesOptions, notes: &mut Vec<String>) -> Result<bool> {
    let t = layer_table(ctx, kind, opts, false)?;
    let ok = t.matches_predictions();
    if !ok {
        notes.push(format!("{} {}: length {} vs {:?}, ranks {:?}", ctx.params(), kind.letter(), t.length, t.predicted_length, t.ranks()));
    }
    Ok(ok)
}

fn jennings_gamma_shift(ctx: &GroupCtx) -> Result<bool> {
    let d = series(ctx, SeriesKind::Jennings, &SeriesOptions::exact())?;
    let q = ctx.q();
    Ok((q / ctx.p() as usize + 1..=q).all(|i| d.term(i).log_order() == gamma_term(ctx, i).log_order() + 1))
}

fn c5_series_tables() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    let exact = SeriesOptions::exact();
    let kinds = [SeriesKind::LowerCentral, SeriesKind::LowerP, SeriesKind::Jennings, SeriesKind::Frattini];
    for (p, k) in [(3, 1), (3, 2), (5, 1)] {
        let g = GroupCtx::g(p, k)?;
        let w = GroupCtx::w(p, k)?;
        for kind in kinds {
            ok &= table_ok(&g, kind, &exact, &mut notes)?;
            ok &= table_ok(&w, kind, &exact, &mut notes)?;
        }
        if !jennings_gamma_shift(&g)? {
            ok = false;
            notes.push(format!("{}: log|D_i| ≠ log|γ_i| + 1 above p^(k-1)", g.params()));
        }
    }
    let formula = SeriesOptions::formula();
    for k in [3, 4] {
        let g = GroupCtx::g(3, k)?;
        for kind in kinds {
            ok &= table_ok(&g, kind, &formula, &mut notes)?;
        }
    }
    let g3 = GroupCtx::g(3, 3)?;
    for kind in kinds {
        let t = layer_table(&g3, kind, &formula, true)?;
        let stable: Vec<usize> = t.rows.iter().filter(|r| r.stable == Some(true)).map(|r| r.level).collect();
        notes.push(format!("G_3(3) {} stable levels vs G_4(3): {stable:?}", kind.letter()));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c6_jennings_methods() -> Result<Outcome> {
    let mut notes = Vec::new();
    let both = SeriesOptions { jennings: JenningsMethod::Both, ..SeriesOptions::exact() };
    let mut ok = true;
    for (p, k) in [(3, 1), (3, 2), (2, 2)] {
        let ctx = GroupCtx::g(p, k)?;
        match series(&ctx, SeriesKind::Jennings, &both) {
            Ok(s) => notes.push(format!("{}: {} equal terms", ctx.params(), s.length())),
            Err(e) => {
                ok = false;
                notes.push(format!("{}: {e}", ctx.params()));
            }
        }
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c7_density_endpoints() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    let checks = [
        (SeriesKind::PPower, Target::Z, ratio(1, 3)),
        (SeriesKind::LowerP, Target::Z, ratio(1, 5)),
        (SeriesKind::LowerP, Target::H, ratio(3, 5)),
        (SeriesKind::Jennings, Target::Z, ratio(1, 3)),
    ];
    for (kind, target, limit) in checks {
        let seq = closed_form_sequence(kind, target, 3, 40)?;
        let (est, _) = estimate(&seq, DEFAULT_TAIL_WINDOW)?;
        let good = dist(&est, &limit) <= 1e-2;
        ok &= good;
        notes.push(format!("{}({}) ≈ {:.4} vs {}", kind.letter(), target.name(), f(&est), fmt_ratio(&limit)));
    }
    for p in [3, 5] {
        let seq = closed_form_sequence(SeriesKind::Frattini, Target::Z, p, 10)?;
        let d10 = &seq.term(10).unwrap().value;
        let good = dist(d10, &ratio(1, p + 1)) <= 1e-3;
        ok &= good;
        notes.push(format!("F(Z) p={p} d_10 ≈ {:.5}", f(d10)));
    }
    let mut mismatches = Vec::new();
    let opts = SeriesOptions { jennings: JenningsMethod::ClosedForm, ..Default::default() };
    for kind in [SeriesKind::PPower, SeriesKind::LowerP, SeriesKind::Jennings, SeriesKind::Frattini] {
        for (name, target) in [("Z", Target::Z), ("base", Target::H)] {
            let build = |c: &GroupCtx| -> Result<EchelonSubgroup> {
                Ok(if name == "Z" { central_z(c) } else { EchelonSubgroup::full(c).tail(c.x_depths()) })
            };
            let engine = density_terms(&build, name, Family::Gk, 3, kind, 6, 4, &opts)?;
            let closed = closed_form_sequence(kind, target, 3, 6)?;
            for t in &engine.terms {
                let c = &closed.term(t.level).unwrap().value;
                if &t.value != c {
                    mismatches.push(format!("{}({}) d_{}: engine {} vs {}", kind.letter(), target.name(), t.level, fmt_ratio(&t.value), fmt_ratio(c)));
                }
            }
        }
    }
    ok &= mismatches.is_empty();
    notes.push(format!("engine/closed-form mismatches {mismatches:?}"));
    Ok(outcome(ok, notes.join("; ")))
}

fn c8_normal_spectra() -> Result<Outcome> {
    let p = 3;
    let cases = [
        (SeriesKind::PPower, 40, "[0,1/3] ∪ {1}".to_string()),
        (SeriesKind::Jennings, 1000, "[0,1/3] ∪ {1}".to_string()),
        (SeriesKind::Frattini, 20, format!("[0,1/{}] ∪ {{1}}", p + 1)),
        (SeriesKind::LowerP, 1000, "[0,1/5] ∪ {3/5} ∪ {1}".to_string()),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (kind, levels, expected) in cases {
        let mut dims = Vec::new();
        for target in [Target::Z, Target::H] {
            let seq = closed_form_sequence(kind, target, p, levels)?;
            let limit = seq.registered_limit.clone().unwrap();
            let (est, _) = estimate(&seq, DEFAULT_TAIL_WINDOW)?;
            ok &= limit.is_one() || dist(&est, &limit) <= 1e-2;
            dims.push(limit);
        }
        let set = normal_spectrum(&dims[0], &dims[1])?;
        ok &= set.to_string() == expected;
        notes.push(format!("{}: {set}", kind.letter()));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c9_wreath_points() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for (kind, k, window) in [
        (SeriesKind::PPower, 6, 3),
        (SeriesKind::Jennings, 5, DEFAULT_TAIL_WINDOW),
        (SeriesKind::Frattini, 6, 3),
        (SeriesKind::LowerP, 5, DEFAULT_TAIL_WINDOW),
    ] {
        let seq = wreath_k_density(1, 2, 3, kind, k)?;
        let limit = seq.registered_limit.clone().unwrap();
        let (est, strong) = estimate(&seq, window)?;
        let good = strong && dist(&est, &limit) <= 1e-2;
        ok &= good;
        notes.push(format!("{} in W_{k}: {:.4} vs {} strong {strong}", kind.letter(), f(&est), fmt_ratio(&limit)));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c10_section() -> Result<Outcome> {
    let r = section_k_density(1, 1, 3, SeriesKind::LowerP, 4)?;
    let (k_est, _) = estimate(&r.k_density, DEFAULT_TAIL_WINDOW)?;
    let (z_est, _) = estimate(&r.kz_density, DEFAULT_TAIL_WINDOW)?;
    let ok = dist(&k_est, &ratio(3, 5)) <= 5e-2 && dist(&z_est, &ratio(1, 3)) <= 5e-2;
    Ok(outcome(ok, format!("k = {}: K ≈ {:.4} (3/5), K∩Z in Z ≈ {:.4} (1/3)", r.k, f(&k_est), f(&z_est))))
}

fn c11_product_spectra() -> Result<Outcome> {
    let base = product_spectrum(4, &ratio(1, 3))?;
    let mut ok = base.to_string() == "[0,2/3] ∪ [3/4,5/6] ∪ {1}" && base.components() == 3;
    let mut cases = 0;
    for n in 2..=6u64 {
        for m in 2.max(n - 1)..=8 {
            let raw = product_spectrum(m, &ratio(1, n))?;
            let closed = product_spectrum_closed_form(m, n)?.normalized();
            ok &= raw == closed && raw.components() == n as usize;
            cases += 1;
        }
    }
    Ok(outcome(ok, format!("{base}; {cases} (m, n) cases")))
}

fn c12_slices() -> Result<Outcome> {
    let ranks: Vec<BigInt> = (1..=30).map(|j| layer_data(SeriesKind::Frattini, 3, j).map(|d| d.z)).collect::<Result<_>>()?;
    let mut ok = true;
    for eta in [ratio(1, 3), ratio(37, 100), ratio(1, 2)] {
        let e = elem_ab_slice(&eta, &ranks)?;
        ok &= check_slice(&eta, &ranks, &e);
    }
    Ok(outcome(ok, format!("layer ranks start {:?}", ranks[..4].iter().map(|r| r.to_string()).collect::<Vec<_>>())))
}

fn c13_oracle() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, k) in [(3, 1), (2, 2), (2, 3)] {
        let ctx = GroupCtx::g(p, k)?;
        let r = cross_validate(&ctx, 50, 3)?;
        ok &= r.passed();
        notes.push(format!("{}: {} checks {} ({:.1}s)", r.group, r.checks.len(), r.first_divergence().unwrap_or("all equal"), r.elapsed.as_secs_f64()));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c14_congruences() -> Result<Outcome> {
    let ctx = GroupCtx::g(3, 2)?;
    let mut failed = Vec::new();
    let mut count = 0;
    for (a, b) in [("x", "y"), ("x*y", "y"), ("x", "y^-1")] {
        let (wa, wb) = (parse_word(a)?, parse_word(b)?);
        for r in [1, 2] {
            for kind in [CongruenceKind::Power, CongruenceKind::Commutator] {
                count += 1;
                if !check_congruence(&ctx, &wa, &wb, r, kind)?.holds {
                    failed.push(format!("({a}, {b}) r={r} {kind:?}"));
                }
            }
        }
    }
    Ok(outcome(failed.is_empty(), format!("{count} congruences, failing {failed:?}")))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("order formula for odd p", c1_orders),
        ("order formula for p = 2", c2_p2_orders),
        ("presentation soundness", c3_soundness),
        ("top power subgroup", c4_power_subgroup),
        ("series layer tables", c5_series_tables),
        ("Jennings constructions agree", c6_jennings_methods),
        ("density endpoints", c7_density_endpoints),
        ("normal spectra", c8_normal_spectra),
        ("finitely generated points in W", c9_wreath_points),
        ("section subgroup densities", c10_section),
        ("product spectra", c11_product_spectra),
        ("elementary abelian slices", c12_slices),
        ("oracle equivalence", c13_oracle),
        ("collection congruences", c14_congruences),
    ];
    let start = Instant::now();
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        passed += o.passed as usize;
        println!("{} {:>2} {name} [{:.1}s]: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, t.elapsed().as_secs_f64(), o.detail);
    }
    println!("{passed}/{} criteria passed in {:.1}s", criteria.len(), start.elapsed().as_secs_f64());
}

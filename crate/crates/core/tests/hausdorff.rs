mod common;

use common::g;
use num_bigint::BigInt;
use num_traits::One;
use pgroup::hausdorff::{
    check_slice, closed_form_sequence, default_tolerance, density_terms, elem_ab_slice, fg_spectrum_w, hdim_estimate,
    l_spectrum_g, l_spectrum_w, normal_spectrum, parse_ratio, product_spectrum, ratio, section_k_density,
    wreath_k_density, DensitySequence, Target, DEFAULT_TAIL_WINDOW,
};
use pgroup::series::{JenningsMethod, SeriesKind, SeriesOptions};
use pgroup::subgroups::{central_z, h_subgroup, EchelonSubgroup};
use pgroup::{Family, GroupCtx, Result};

fn close(a: &num_rational::BigRational, b: &num_rational::BigRational, tol: f64) -> bool {
    use num_traits::{Signed, ToPrimitive};
    (a - b).abs().to_f64().unwrap() <= tol
}

fn estimate(seq: &DensitySequence) -> num_rational::BigRational {
    hdim_estimate(seq, DEFAULT_TAIL_WINDOW, &default_tolerance()).unwrap().estimate
}

#[test]
fn closed_form_terms() {
    let p = closed_form_sequence(SeriesKind::PPower, Target::Z, 3, 2).unwrap();
    assert_eq!(p.term(1).unwrap().value, ratio(1, 4));
    assert_eq!(p.term(2).unwrap().value, ratio(2, 7));
    let l = closed_form_sequence(SeriesKind::LowerP, Target::H, 3, 400).unwrap();
    assert!(close(&l.terms.last().unwrap().value, &ratio(3, 5), 1e-2));
}

#[test]
fn closed_form_limits() {
    let cases = [
        (SeriesKind::PPower, Target::Z, 40, ratio(1, 3)),
        (SeriesKind::LowerP, Target::Z, 40, ratio(1, 5)),
        (SeriesKind::LowerP, Target::H, 40, ratio(3, 5)),
    ];
    for (kind, target, levels, limit) in cases {
        let seq = closed_form_sequence(kind, target, 3, levels).unwrap();
        assert_eq!(seq.registered_limit.as_ref(), Some(&limit));
        assert!(close(&estimate(&seq), &limit, 1e-2));
    }
    let f = closed_form_sequence(SeriesKind::Frattini, Target::Z, 3, 10).unwrap();
    assert!(close(&f.term(10).unwrap().value, &ratio(1, 4), 1e-3));
}

#[test]
fn terms_stay_in_unit_interval_with_growing_denominators() {
    for kind in [SeriesKind::PPower, SeriesKind::LowerP, SeriesKind::Jennings, SeriesKind::Frattini] {
        for target in [Target::Z, Target::H] {
            let seq = closed_form_sequence(kind, target, 5, 12).unwrap();
            for t in &seq.terms {
                assert!(t.value >= ratio(0, 1) && t.value <= ratio(1, 1));
            }
            assert!(seq.terms.windows(2).all(|w| w[0].denominator < w[1].denominator));
        }
    }
}

#[test]
fn full_group_has_density_one() {
    let full = |c: &GroupCtx| -> Result<EchelonSubgroup> { Ok(EchelonSubgroup::full(c)) };
    let seq = density_terms(&full, "full", Family::Gk, 3, SeriesKind::LowerP, 5, 3, &SeriesOptions::default()).unwrap();
    assert!(!seq.terms.is_empty());
    assert!(seq.terms.iter().all(|t| t.value.is_one()));
}

#[test]
fn engine_terms_agree_with_closed_forms_beyond_level_one() {
    let opts = SeriesOptions { jennings: JenningsMethod::ClosedForm, ..Default::default() };
    let z = |c: &GroupCtx| -> Result<EchelonSubgroup> { Ok(central_z(c)) };
    for kind in [SeriesKind::LowerP, SeriesKind::Jennings, SeriesKind::Frattini, SeriesKind::PPower] {
        let engine = density_terms(&z, "Z", Family::Gk, 3, kind, 5, 4, &opts).unwrap();
        let closed = closed_form_sequence(kind, Target::Z, 3, 5).unwrap();
        for t in engine.terms.iter().filter(|t| t.level >= 2) {
            assert_eq!(t.value, closed.term(t.level).unwrap().value, "{} d_{}", kind.letter(), t.level);
        }
    }
}

#[test]
fn density_is_monotone_in_the_subgroup() {
    let ctx = g(3, 2);
    let z = central_z(&ctx);
    let h = h_subgroup(&ctx);
    assert!(z.is_subgroup_of(&h));
    let build_z = |c: &GroupCtx| -> Result<EchelonSubgroup> { Ok(central_z(c)) };
    let build_h = |c: &GroupCtx| -> Result<EchelonSubgroup> { Ok(h_subgroup(c)) };
    let opts = SeriesOptions::default();
    for kind in [SeriesKind::LowerP, SeriesKind::Frattini] {
        let dz = density_terms(&build_z, "Z", Family::Gk, 3, kind, 5, 3, &opts).unwrap();
        let dh = density_terms(&build_h, "H", Family::Gk, 3, kind, 5, 3, &opts).unwrap();
        for (a, b) in dz.terms.iter().zip(&dh.terms) {
            assert!(a.value <= b.value);
        }
    }
}

#[test]
fn estimate_needs_enough_terms() {
    let seq = closed_form_sequence(SeriesKind::LowerP, Target::Z, 3, 3).unwrap();
    assert!(hdim_estimate(&seq, 10, &default_tolerance()).is_err());
}

#[test]
fn normal_spectra() {
    assert_eq!(normal_spectrum(&ratio(1, 3), &ratio(1, 1)).unwrap().to_string(), "[0,1/3] ∪ {1}");
    assert_eq!(normal_spectrum(&ratio(1, 5), &ratio(3, 5)).unwrap().to_string(), "[0,1/5] ∪ {3/5} ∪ {1}");
    assert_eq!(normal_spectrum(&ratio(1, 1), &ratio(1, 1)).unwrap().to_string(), "[0,1]");
}

#[test]
fn product_spectra() {
    assert_eq!(product_spectrum(2, &ratio(1, 3)).unwrap().to_string(), "[0,1/3] ∪ [1/2,2/3] ∪ {1}");
    let s = product_spectrum(4, &ratio(1, 3)).unwrap();
    assert_eq!(s.to_string(), "[0,2/3] ∪ [3/4,5/6] ∪ {1}");
    assert_eq!(s.components(), 3);
    for xi in [ratio(1, 7), ratio(2, 5)] {
        let expected = normal_spectrum(&xi, &ratio(1, 1)).unwrap();
        assert_eq!(product_spectrum(1, &xi).unwrap(), expected);
    }
}

#[test]
fn finitely_generated_spectra_in_w() {
    for kind in [SeriesKind::PPower, SeriesKind::Jennings, SeriesKind::Frattini] {
        assert_eq!(fg_spectrum_w(kind, 3, 1).unwrap().to_string(), "{0} ∪ {1/3} ∪ {2/3} ∪ {1}");
    }
    assert_eq!(fg_spectrum_w(SeriesKind::LowerP, 3, 1).unwrap().to_string(), "{0} ∪ {1/2} ∪ {2/3} ∪ {5/6} ∪ {1}");
    let lw = l_spectrum_w(3, 2).unwrap();
    assert!(lw.contains(&ratio(1, 4)));
    assert!(lw.contains(&(ratio(1, 2) + ratio(1, 6))));
    assert!(lw.contains(&ratio(1, 1)));
}

#[test]
fn l_spectrum_membership() {
    let s = l_spectrum_g(3, 3).unwrap();
    assert!(s.contains(&ratio(13, 15)));
    assert!(!s.contains(&ratio(4, 5)));
    assert!(s.contains(&ratio(1, 1)));
    assert!(s.contains(&parse_ratio("1/10").unwrap()));
}

#[test]
fn slices() {
    let d: Vec<BigInt> = [1, 2, 1].into_iter().map(BigInt::from).collect();
    let e = elem_ab_slice(&ratio(1, 2), &d).unwrap();
    assert_eq!(e, [1, 1, 0].map(BigInt::from));
    assert!(check_slice(&ratio(1, 2), &d, &e));
    assert!(elem_ab_slice(&ratio(0, 1), &d).unwrap().iter().all(|x| x == &BigInt::from(0)));
    assert_eq!(elem_ab_slice(&ratio(1, 1), &d).unwrap(), d);
}

#[test]
fn section_subgroup_registered_limits() {
    let r = section_k_density(1, 1, 3, SeriesKind::LowerP, 3).unwrap();
    assert_eq!(r.k_density.registered_limit, Some(ratio(3, 5)));
    assert_eq!(r.kz_density.registered_limit, Some(ratio(1, 3)));
    let r = section_k_density(2, 2, 3, SeriesKind::LowerP, 2).unwrap();
    assert_eq!(r.k_density.registered_limit, Some(ratio(5, 9)));
    assert!(section_k_density(1, 2, 3, SeriesKind::LowerP, 2).is_err());
}

#[test]
fn wreath_subgroup_lower_p_density() {
    let seq = wreath_k_density(1, 1, 3, SeriesKind::LowerP, 4).unwrap();
    let limit = seq.registered_limit.clone().unwrap();
    assert_eq!(limit, ratio(2, 3));
    assert!(close(&estimate(&seq), &limit, 2e-2));
}

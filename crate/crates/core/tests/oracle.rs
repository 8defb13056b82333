mod common;

use std::time::Duration;

use common::g;
use pgroup::collector::parse_word;
use pgroup::oracle::{
    associativity_exhaustive, check_congruence, cross_validate, CongruenceKind, EnumeratedGroup, DEFAULT_ORACLE_BUDGET,
};
use pgroup::oracle::congruence::hypotheses_hold;

#[test]
fn brute_force_small_facts() {
    let o = EnumeratedGroup::new(g(3, 1).params(), DEFAULT_ORACLE_BUDGET).unwrap();
    assert_eq!(o.order(), 3usize.pow(7));
    assert_eq!(o.closure(&[o.y()]).len(), 9);
    let cubes = o.agemo(&o.all(), 1);
    assert!(cubes.contains(&o.pow(o.x(), 3)));
    let w = o.pow(o.mul(o.x(), o.y()), 3);
    let w = o.mul(o.inv(o.pow(o.x(), 3)), w);
    assert!(cubes.contains(&w));
    let o2 = EnumeratedGroup::new(g(2, 2).params(), DEFAULT_ORACLE_BUDGET).unwrap();
    assert_eq!(o2.lower_central().iter().filter(|t| t.len() > 1).count(), 5);
}

#[test]
fn oracle_refuses_large_groups() {
    assert!(EnumeratedGroup::new(g(3, 2).params(), DEFAULT_ORACLE_BUDGET).is_err());
}

#[test]
fn cross_validation() {
    let report = cross_validate(&g(3, 1), 50, 9).unwrap();
    assert!(report.passed(), "{:?}", report.first_divergence());
    assert!(report.elapsed < Duration::from_secs(60));
    let report = cross_validate(&g(2, 2), 50, 9).unwrap();
    assert!(report.passed(), "{:?}", report.first_divergence());
}

#[test]
fn exhaustive_associativity() {
    assert!(associativity_exhaustive(&g(2, 1)).unwrap());
    assert!(associativity_exhaustive(&g(2, 2)).unwrap());
    assert!(associativity_exhaustive(&g(3, 2)).is_err());
}

#[test]
fn congruences() {
    assert!(hypotheses_hold(&g(3, 1)).unwrap());
    assert!(hypotheses_hold(&g(3, 2)).unwrap());
    let (x, y) = (parse_word("x").unwrap(), parse_word("y").unwrap());
    for k in 1..=2 {
        for kind in [CongruenceKind::Power, CongruenceKind::Commutator] {
            assert!(check_congruence(&g(3, k), &x, &y, 1, kind).unwrap().holds);
        }
    }
    let r = check_congruence(&g(3, 2), &x, &x, 1, CongruenceKind::Power).unwrap();
    assert!(r.holds && r.equal_outright);
}

mod common;

use common::{g, random_elements, w};
use pgroup::collector::{canonical_word, check_relations, eval_word, parse_word, project, Hom};
use pgroup::subgroups::w_pair;
use pgroup::{Family, GroupCtx, GroupParams};

#[test]
fn context_sizes() {
    assert_eq!(g(3, 1).log_order(), 7);
    assert_eq!(g(2, 3).log_order(), 17);
    assert_eq!(w(3, 1).log_order(), 4);
    assert!(GroupParams::new(Family::Gk, 4, 1).is_err());
    assert!(GroupParams::new(Family::Gk, 3, 0).is_err());
}

#[test]
fn inverse_and_identity() {
    let ctx = g(3, 2);
    for e in random_elements(&ctx, 200, 1) {
        assert!(ctx.mul(&e, &ctx.inv(&e)).is_identity());
        assert_eq!(ctx.mul(&ctx.identity(), &e), e);
    }
}

#[test]
fn cube_of_y_is_the_central_letter() {
    let ctx = g(3, 1);
    let y = ctx.y();
    let y3 = ctx.mul(&ctx.mul(&y, &y), &y);
    assert_eq!(y3, ctx.y_p());
    assert_eq!(y3.a, 0);
    assert_eq!(y3.body[ctx.c_index()], 1);
    assert_eq!(ctx.coords(&y3).iter().filter(|&&v| v != 0).count(), 1);
}

#[test]
fn commutator_of_first_and_last_letters() {
    let ctx = g(3, 1);
    let y0 = ctx.y_i(0);
    let y2 = ctx.y_i(2);
    assert_eq!(ctx.comm(&y0, &y2), ctx.inv(&ctx.e_j(1)));
}

#[test]
fn x_has_order_p_to_k_plus_one() {
    for (p, k) in [(3, 1), (3, 2), (5, 1), (2, 3)] {
        let ctx = g(p, k);
        let n = p.pow(k + 1) as i64;
        assert!(ctx.pow(&ctx.x(), n).is_identity());
        assert!(!ctx.pow(&ctx.x(), n / p as i64).is_identity());
    }
}

#[test]
fn power_of_xy_gives_w_and_w_is_central() {
    for k in 1..=3 {
        let ctx = g(3, k);
        let q = ctx.q() as i64;
        let (wv, _) = w_pair(&ctx);
        let xy = ctx.mul(&ctx.x(), &ctx.y());
        let lhs = ctx.mul(&ctx.x_pow(-q), &ctx.pow(&xy, q));
        assert_eq!(lhs, wv);
        assert!(ctx.comm(&wv, &ctx.x()).is_identity());
        assert!(ctx.comm(&wv, &ctx.y()).is_identity());
        assert_eq!(ctx.order(&wv), 3);
    }
}

#[test]
fn element_orders() {
    let ctx = g(3, 2);
    assert_eq!(ctx.order(&ctx.y()), 9);
    assert_eq!(ctx.order(&ctx.identity()), 1);
    assert_eq!(ctx.order(&ctx.x()), 27);
}

#[test]
fn commutator_word_coordinates() {
    let ctx = g(3, 1);
    let e = eval_word(&parse_word("[y, x]").unwrap(), &ctx);
    let expected = ctx.mul(&ctx.inv(&ctx.y_i(0)), &ctx.y_i(1));
    assert_eq!(e, expected);
    let x9 = eval_word(&parse_word("x^9").unwrap(), &ctx);
    assert_eq!(x9, ctx.x_pow(9));
    assert!(ctx.comm(&x9, &ctx.y()).is_identity());
}

#[test]
fn word_round_trip() {
    for ctx in [g(3, 1), g(3, 2), g(2, 3), w(3, 2), w(5, 1)] {
        for e in random_elements(&ctx, 1000, 7) {
            assert_eq!(eval_word(&canonical_word(&ctx, &e), &ctx), e);
        }
    }
}

#[test]
fn parse_errors_are_reported() {
    assert!(parse_word("[y, x").is_err());
    assert!(parse_word("z").is_err());
    assert!(parse_word("x^").is_err());
}

#[test]
fn projections_kill_the_kernel() {
    let src = g(3, 2);
    let dst = w(3, 2);
    assert!(project(&src, &src.y_p(), &dst).unwrap().is_identity());
    for j in 1..=src.e_count() {
        assert!(project(&src, &src.e_j(j), &dst).unwrap().is_identity());
    }
    assert!(!project(&src, &src.y(), &dst).unwrap().is_identity());
}

#[test]
fn projection_is_a_homomorphism() {
    let pairs = [(g(3, 2), w(3, 2)), (g(3, 2), g(3, 1)), (w(3, 3), w(3, 1)), (g(2, 3), g(2, 2))];
    for (src, dst) in pairs {
        let hom = Hom::new(&src, &dst).unwrap();
        let xs = random_elements(&src, 1000, 3);
        let ys = random_elements(&src, 1000, 4);
        for (a, b) in xs.iter().zip(&ys) {
            let lhs = hom.apply(&src.mul(a, b));
            let rhs = dst.mul(&hom.apply(a), &hom.apply(b));
            assert_eq!(lhs, rhs);
            assert_eq!(hom.apply(a), hom.apply_via_word(a));
        }
    }
}

#[test]
fn wreath_does_not_map_onto_g() {
    assert!(Hom::new(&w(3, 1), &g(3, 1)).is_err());
    assert!(Hom::new(&g(3, 1), &g(3, 2)).is_err());
    assert!(Hom::new(&g(3, 1), &g(5, 1)).is_err());
}

#[test]
fn defining_relators_hold() {
    for ctx in [g(3, 2), g(2, 3), w(3, 1), w(2, 2)] {
        let report = check_relations(&ctx);
        assert!(report.all_passed(), "{}: {:?}", ctx.params(), report.failures());
    }
    let ctx = w(3, 1);
    assert!(ctx.comm(&ctx.y_i(0), &ctx.y_i(1)).is_identity());
}

#[test]
fn validate_rejects_bad_coordinates() {
    let ctx = GroupCtx::g(3, 1).unwrap();
    let mut e = ctx.y();
    e.body.push(0);
    assert!(ctx.validate(&e).is_err());
    assert!(ctx.try_mul(&e, &ctx.y()).is_err());
}

use polycell_predicates::{orient3d, Expansion, GenericPoint};
use polycell_testkit::rational as r;
use polycell_testkit::suite;
use proptest::prelude::*;

fn assert_clean(reports: Vec<suite::Report>) -> usize {
    let mut total = 0;
    for rep in &reports {
        assert!(rep.cases > 0, "{} ran no cases", rep.name);
        assert!(
            rep.mismatches.is_empty(),
            "{}: {} mismatches of {}\n{}",
            rep.name,
            rep.mismatches.len(),
            rep.cases,
            rep.mismatches.iter().take(5).cloned().collect::<Vec<_>>().join("\n")
        );
        total += rep.cases;
    }
    total
}

#[test]
fn explicit_predicates_agree_with_oracle() {
    let n = assert_clean(suite::base_predicates(1, 40_000));
    assert!(n >= 100_000, "{n}");
}

#[test]
fn indirect_predicates_agree_with_oracle() {
    let n = assert_clean(suite::indirect_predicates(2, 12_000));
    assert!(n >= 100_000, "{n}");
}

#[test]
fn derived_predicates_agree_with_oracle() {
    let n = assert_clean(suite::derived_predicates(3, 20_000));
    assert!(n >= 100_000, "{n}");
}

#[test]
fn degenerate_corpus() {
    assert_clean(suite::degenerate_corpus());
}

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1.0e3..1.0e3f64,
        (-8i32..8).prop_map(|k| k as f64),
        (-1.0..1.0f64, -60i32..60).prop_map(|(m, e)| m * 2f64.powi(e)),
    ]
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    [coord(), coord(), coord()]
}

fn exp_value(e: &Expansion) -> r::Q {
    e.terms().iter().fold(r::qi(0), |acc, &t| acc + r::q(t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn orient3d_antisymmetric(a in point(), b in point(), c in point(), d in point()) {
        let s = orient3d(&a, &b, &c, &d);
        prop_assert_eq!(orient3d(&b, &a, &c, &d), -s);
        prop_assert_eq!(orient3d(&a, &c, &b, &d), -s);
        prop_assert_eq!(orient3d(&a, &b, &d, &c), -s);
        prop_assert_eq!(orient3d(&b, &c, &a, &d), s);
    }

    #[test]
    fn orient3d_indirect_antisymmetric(a in point(), b in point(), c in point(), d in point(), e in point(), f in point()) {
        let l = GenericPoint::lpi(a, b, c, d, e);
        prop_assume!(l.is_well_defined());
        let x = GenericPoint::Explicit(a);
        let y = GenericPoint::Explicit(f);
        let z = GenericPoint::Explicit(c);
        let s = polycell_predicates::orient3d_indirect(&l, &x, &y, &z);
        prop_assert_eq!(polycell_predicates::orient3d_indirect(&x, &l, &y, &z), -s);
        prop_assert_eq!(polycell_predicates::orient3d_indirect(&x, &y, &l, &z), s);
        prop_assert_eq!(polycell_predicates::orient3d_indirect(&x, &y, &z, &l), -s);
    }

    #[test]
    fn expansion_ops_are_exact(xs in prop::collection::vec(coord(), 1..8), ys in prop::collection::vec(coord(), 1..8)) {
        let a = Expansion::from_sum(&xs);
        let b = Expansion::from_sum(&ys);
        let qa = xs.iter().fold(r::qi(0), |acc, &t| acc + r::q(t));
        let qb = ys.iter().fold(r::qi(0), |acc, &t| acc + r::q(t));
        prop_assert_eq!(exp_value(&a), qa.clone());
        prop_assert_eq!(exp_value(&a.add(&b)), &qa + &qb);
        prop_assert_eq!(exp_value(&a.sub(&b)), &qa - &qb);
        prop_assert_eq!(exp_value(&a.mul(&b)), &qa * &qb);
        prop_assert_eq!(a.mul(&b).sign(), r::sign(&(&qa * &qb)));
    }

    #[test]
    fn compression_is_idempotent(xs in prop::collection::vec(coord(), 1..12)) {
        let a = Expansion::from_sum(&xs);
        let mut c = a.clone();
        c.compress();
        prop_assert_eq!(exp_value(&c), exp_value(&a));
        let r1 = Expansion::from_sum(c.terms());
        prop_assert_eq!(exp_value(&r1), exp_value(&c));
        prop_assert_eq!(r1.sign(), c.sign());
        // nonoverlapping, increasing magnitude
        for w in c.terms().windows(2) {
            prop_assert!(w[0].abs() < w[1].abs());
        }
    }
}

#[test]
fn million_case_sweep() {
    let mut n = assert_clean(suite::base_predicates(11, 150_000));
    n += assert_clean(suite::indirect_predicates(12, 30_000));
    n += assert_clean(suite::derived_predicates(13, 30_000));
    assert!(n >= 1_000_000, "{n}");
}

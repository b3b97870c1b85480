use proptest::prelude::*;

use super::*;
use crate::group::{cyclic, direct_product, heisenberg, wreath_cyclic, GroupSpec};
use crate::table::DEFAULT_TABLE_CAP;

fn group(spec: &str) -> Group {
    crate::group::construct(&spec.parse::<GroupSpec>().unwrap(), DEFAULT_TABLE_CAP)
        .unwrap()
        .into_table()
        .unwrap()
}

fn el(g: &Group, label: &str) -> usize {
    g.element(label).unwrap()
}

/// Square root by search: the unique `z` with `z² = a`.
fn brute_sqrt(g: &Group, a: usize) -> usize {
    let roots: Vec<usize> = (0..g.order()).filter(|&z| g.mul(z, z) == a).collect();
    assert_eq!(roots.len(), 1);
    roots[0]
}

#[test]
fn circ_matches_definition_by_search() {
    let g = group("sd:7:3:2");
    let q = circ_loop(&g).unwrap();
    for x in 0..21 {
        for y in 0..21 {
            let expect = g.mul(g.mul(x, y), brute_sqrt(&g, g.commutator(y, x)));
            assert_eq!(q.mul(x, y), expect);
        }
    }
    assert_eq!(q.name(), "circ(sd:7:3:2)");
    assert_eq!(q.provenance().comment(), "source: sd:7:3:2, construction: circ");
}

#[test]
fn group21_products() {
    let g = group("sd:7:3:2");
    let (a, b) = (el(&g, "(1,0)"), el(&g, "(0,1)"));
    let circ = circ_loop(&g).unwrap();
    let oplus = oplus_loop(&g).unwrap();
    assert_eq!(circ.label(circ.mul(a, b)), "(5,1)");
    assert_eq!(oplus.label(oplus.mul(a, b)), "(4,1)");
    let left = circ.mul(circ.mul(a, b), b);
    let right = circ.mul(a, circ.mul(b, b));
    assert_eq!((circ.label(left), circ.label(right)), ("(4,2)", "(6,2)"));
}

#[test]
fn oplus_matches_definition_by_search() {
    let g = wreath_cyclic(3).unwrap();
    let q = oplus_loop(&g).unwrap();
    for x in (0..81).step_by(5) {
        for y in 0..81 {
            let yy = g.mul(y, y);
            assert_eq!(q.mul(x, y), brute_sqrt(&g, g.mul(g.mul(x, yy), x)));
        }
    }
}

#[test]
fn circ_equals_oplus_on_two_engel_group() {
    let g = heisenberg(3).unwrap();
    let (c, o) = (circ_loop(&g).unwrap(), oplus_loop(&g).unwrap());
    assert_eq!(c.table().cells().collect::<Vec<_>>(), o.table().cells().collect::<Vec<_>>());
    assert!(c.is_associative());
}

#[test]
fn circ_on_abelian_group_is_the_group() {
    let g = cyclic(9).unwrap();
    let q = circ_loop(&g).unwrap();
    assert!(q.table().cells().eq(g.table().cells()));
}

#[test]
fn circ_rejects_even_order() {
    let err = circ_loop(&cyclic(4).unwrap()).unwrap_err();
    assert!(matches!(err, Error::NotUniquelyTwoDivisible(_)));
}

#[test]
fn correspondence_round_trips() {
    for g in [group("sd:7:3:2"), heisenberg(3).unwrap(), wreath_cyclic(3).unwrap()] {
        let circ = circ_loop(&g).unwrap();
        let bruck = bruck_from_gamma(&circ).unwrap();
        let oplus = oplus_loop(&g).unwrap();
        assert!(bruck.table().cells().eq(oplus.table().cells()), "{}", g.name());
        assert!(props::is_left_bruck(&bruck));
        let back = gamma_from_bruck(&bruck).unwrap();
        assert!(back.table().cells().eq(circ.table().cells()), "{}", g.name());
        assert_eq!(back.provenance().construction, Construction::BruckToGamma);
    }
}

#[test]
fn gamma_from_bruck_of_abelian_group_is_itself() {
    let g = direct_product(&[cyclic(3).unwrap(), cyclic(3).unwrap()]).unwrap();
    let q = gamma_from_bruck(g.as_loop()).unwrap();
    assert!(q.table().cells().eq(g.table().cells()));
}

#[test]
fn loop_powers() {
    let g = group("sd:7:3:2");
    let q = circ_loop(&g).unwrap();
    let x = el(&g, "(1,1)");
    assert_eq!(power(&q, x, 3).unwrap(), g.pow(x, 3));
    assert_eq!(power(&q, x, -1).unwrap(), g.inv(x));
    assert_eq!(power(&q, x, 0).unwrap(), 0);
    assert_eq!(loop_sqrt(&q, x).unwrap(), g.sqrt_element(x).unwrap());
}

#[test]
fn closed_form_examples() {
    let g = group("sd:7:3:2");
    let cf = SdClosedForm::new(g.semidirect().unwrap()).unwrap();
    let u = el(&g, "(1,1)");
    assert_eq!(g.label(cf.inverse(u).unwrap()), "(3,2)");
    assert_eq!(g.label(cf.circ(el(&g, "(1,0)"), el(&g, "(0,1)")).unwrap()), "(5,1)");
    assert_eq!(g.label(cf.circ(u, u).unwrap()), g.label(g.pow(u, 2)));
    assert_eq!(g.label(cf.commutator(el(&g, "(1,0)"), el(&g, "(0,1)")).unwrap()), "(3,0)");
}

#[test]
fn closed_forms_agree_with_engine() {
    for g in [group("sd:7:3:2"), group("sd:13:3:3")] {
        let q = circ_loop(&g).unwrap();
        assert_eq!(compare_with_engine(&g, &q).unwrap(), None, "{}", g.name());
    }
}

#[test]
fn closed_forms_need_a_decomposition() {
    let g = heisenberg(3).unwrap();
    let q = circ_loop(&g).unwrap();
    assert!(matches!(compare_with_engine(&g, &q), Err(Error::Precondition(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn circ_is_commutative_with_aip(x in 0usize..81, y in 0usize..81) {
        let g = wreath_cyclic(3).unwrap();
        let q = circ_loop(&g).unwrap();
        prop_assert_eq!(q.mul(x, y), q.mul(y, x));
        prop_assert_eq!(g.inv(q.mul(x, y)), q.mul(g.inv(x), g.inv(y)));
    }

    #[test]
    fn circ_powers_match_group(x in 0usize..21, k in -25i64..25) {
        let g = group("sd:7:3:2");
        let q = circ_loop(&g).unwrap();
        prop_assert_eq!(power(&q, x, k).unwrap(), g.pow(x, k));
    }
}

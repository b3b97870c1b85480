use proptest::prelude::*;

use super::*;
use crate::table::DEFAULT_TABLE_CAP;

fn sd21() -> Group {
    families::semidirect_cyclic(7, 3, 2).unwrap()
}

fn el(g: &Group, label: &str) -> usize {
    g.element(label).unwrap_or_else(|| panic!("no element {label} in {}", g.name()))
}

/// Direct modular arithmetic for `Z_7 ⋊ Z_3`, `f` acting by multiplication by `2^f`.
mod sd21_oracle {
    pub fn mul((h1, f1): (i64, i64), (h2, f2): (i64, i64)) -> (i64, i64) {
        ((h1 + 2i64.pow(f1 as u32) * h2).rem_euclid(7), (f1 + f2) % 3)
    }

    pub fn inv((h, f): (i64, i64)) -> (i64, i64) {
        let fi = (3 - f) % 3;
        ((-(2i64.pow(fi as u32) * h)).rem_euclid(7), fi)
    }

    pub fn commutator(x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        mul(mul(inv(x), inv(y)), mul(x, y))
    }
}

#[test]
fn semidirect_matches_direct_arithmetic() {
    let g = sd21();
    assert_eq!(g.order(), 21);
    for x in 0..21 {
        for y in 0..21 {
            let (px, py) = ((x as i64 % 7, x as i64 / 7), (y as i64 % 7, y as i64 / 7));
            let (h, f) = sd21_oracle::mul(px, py);
            assert_eq!(g.mul(x, y), (h + 7 * f) as usize);
            let (h, f) = sd21_oracle::commutator(px, py);
            assert_eq!(g.commutator(x, y), (h + 7 * f) as usize);
        }
    }
}

#[test]
fn group21_commutator_example() {
    let g = sd21();
    let c = g.commutator(el(&g, "(1,0)"), el(&g, "(0,1)"));
    assert_eq!(g.label(c), "(3,0)");
}

#[test]
fn square_roots_square_back() {
    for g in [sd21(), heisenberg(3).unwrap(), wreath_cyclic(3).unwrap()] {
        let roots = g.sqrt_table().unwrap();
        for (a, &r) in roots.iter().enumerate() {
            assert_eq!(g.mul(r, r), a);
        }
    }
    let g = sd21();
    let r = g.sqrt_element(el(&g, "(0,1)")).unwrap();
    assert_eq!(g.label(r), "(0,2)");
}

#[test]
fn even_order_is_not_uniquely_2_divisible() {
    let g = cyclic(2).unwrap();
    assert!(!g.is_uniquely_2_divisible());
    let err = g.sqrt_table().unwrap_err().to_string();
    assert!(err.contains("not uniquely 2-divisible"), "{err}");
    assert!(matches!(g.sqrt_element(1), Err(Error::EvenOrder { order: 2, .. })));
}

#[test]
fn heisenberg_series() {
    let g = heisenberg(3).unwrap();
    assert_eq!(g.order(), 27);
    assert_eq!(g.center().order(), 3);
    assert_eq!(g.nilpotency_class(), NilpotencyClass::Class(2));
    let upper: Vec<usize> = g.upper_central_series().iter().map(Subgroup::order).collect();
    assert_eq!(upper, vec![1, 3, 27]);
    let lower: Vec<usize> = g.lower_central_series().iter().map(Subgroup::order).collect();
    assert_eq!(lower, vec![27, 3, 1]);
    assert!(g.is_two_engel());
    assert!(g.is_metabelian());
}

#[test]
fn group21_is_metabelian_not_nilpotent() {
    let g = sd21();
    assert_eq!(g.center().order(), 1);
    assert_eq!(g.nilpotency_class(), NilpotencyClass::NotNilpotent);
    assert_eq!(g.nilpotency_class().to_string(), "not nilpotent");
    assert!(g.is_metabelian());
    let derived: Vec<usize> = g.derived_series().iter().map(Subgroup::order).collect();
    assert_eq!(derived, vec![21, 7, 1]);
    let (x, y) = g.two_engel_witness().unwrap();
    assert_eq!((g.label(x), g.label(y)), ("(1,0)", "(0,1)"));
}

#[test]
fn wreath_product_has_class_three() {
    let g = wreath_cyclic(3).unwrap();
    assert_eq!(g.order(), 81);
    assert_eq!(g.nilpotency_class(), NilpotencyClass::Class(3));
    let upper: Vec<usize> = g.upper_central_series().iter().map(Subgroup::order).collect();
    assert_eq!(upper, vec![1, 3, 9, 81]);
    assert!(g.is_metabelian());
    assert!(!g.is_two_engel());
}

#[test]
fn abelian_groups_have_class_one() {
    let g = direct_product(&[cyclic(3).unwrap(), cyclic(9).unwrap()]).unwrap();
    assert_eq!(g.order(), 27);
    assert!(g.is_abelian());
    assert_eq!(g.nilpotency_class(), NilpotencyClass::Class(1));
    assert_eq!(g.exponent(), 9);
    assert_eq!(cyclic(1).unwrap().nilpotency_class(), NilpotencyClass::Class(0));
}

#[test]
fn direct_product_labels_and_order() {
    let g = direct_product(&[cyclic(3).unwrap(), cyclic(5).unwrap()]).unwrap();
    assert_eq!(g.order(), 15);
    assert_eq!(g.label(1), "(1,0)");
    assert_eq!(g.label(3), "(0,1)");
    assert_eq!(g.element_order(el(&g, "(1,1)")), 15);
}

#[test]
fn invalid_semidirect_action_is_rejected() {
    assert!(matches!(
        families::semidirect_cyclic(7, 3, 3),
        Err(Error::InvalidAction(_))
    ));
}

#[test]
fn unitriangular_materializes_within_cap() {
    let g = unitriangular(3, 3, DEFAULT_TABLE_CAP).unwrap();
    assert_eq!(g.order(), 27);
    assert_eq!(g.nilpotency_class(), NilpotencyClass::Class(2));
    assert!(matches!(
        unitriangular(5, 3, DEFAULT_TABLE_CAP),
        Err(Error::TableCap { order: 59049, .. })
    ));
}

#[test]
fn commutator_identities_hold_on_catalog_samples() {
    for g in [sd21(), heisenberg(3).unwrap(), wreath_cyclic(3).unwrap()] {
        assert_eq!(g.commutator_identity_witness(), None, "{}", g.name());
    }
}

#[test]
fn metabelian_square_root_identity() {
    let g = wreath_cyclic(3).unwrap();
    let sqrt = g.sqrt_table().unwrap();
    for x in 0..g.order() {
        for y in 0..g.order() {
            let c = g.commutator(x, y);
            for z in (0..g.order()).step_by(7) {
                assert_eq!(g.commutator(sqrt[c], z), sqrt[g.commutator(c, z)]);
            }
        }
    }
}

#[test]
fn commuting_automorphisms_sum_is_automorphism() {
    // h ↦ h^(α+β) for α = ·2, β = ·4 on Z_7.
    let h = cyclic(7).unwrap();
    let images: Vec<usize> = (0..7).map(|x| h.mul(x * 2 % 7, x * 4 % 7)).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..7).collect::<Vec<_>>());
}

#[test]
fn spec_parsing_roundtrips() {
    for s in [
        "cyclic:9",
        "sd:7:3:2",
        "heis:3",
        "wr:3",
        "ut:4:3",
        "dp:cyclic:3,cyclic:5",
        "dp:(dp:cyclic:3,cyclic:3),cyclic:3",
    ] {
        let spec: GroupSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
    let spec: GroupSpec = "dp:sd:7:3:2,cyclic:3".parse().unwrap();
    assert_eq!(spec.order(), Some(63));
    assert!(spec.is_split_metabelian_family());
    assert_eq!("ut:4:3".parse::<GroupSpec>().unwrap().order(), Some(729));
}

#[test]
fn spec_errors_name_the_token() {
    let err = "sd:7:x:2".parse::<GroupSpec>().unwrap_err().to_string();
    assert!(err.contains("`x`"), "{err}");
    let err = "quux:3".parse::<GroupSpec>().unwrap_err().to_string();
    assert!(err.contains("quux"), "{err}");
}

#[test]
fn construct_goes_functional_beyond_cap() {
    let spec: GroupSpec = "ut:5:3".parse().unwrap();
    match construct(&spec, DEFAULT_TABLE_CAP).unwrap() {
        Built::Functional(g) => assert!(g.metabelian_refutation().is_some()),
        Built::Table(_) => panic!("ut:5:3 should not be materialized"),
    }
    let spec: GroupSpec = "ut:4:3".parse().unwrap();
    assert!(matches!(construct(&spec, DEFAULT_TABLE_CAP).unwrap(), Built::Table(_)));
    let spec: GroupSpec = "heis:5".parse().unwrap();
    assert!(matches!(construct(&spec, 100), Err(Error::TableCap { order: 125, cap: 100 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hall_witt_on_group21(x in 0usize..21, y in 0usize..21, z in 0usize..21) {
        let g = sd21();
        let c3 = |a, b, c| g.nested_commutator(&[a, b, c]);
        let lhs = g.mul(
            g.mul(g.conj(c3(x, g.inv(y), z), y), g.conj(c3(y, g.inv(z), x), z)),
            g.conj(c3(z, g.inv(x), y), x),
        );
        prop_assert_eq!(lhs, 0);
    }

    #[test]
    fn powers_add_in_heisenberg(x in 0usize..27, a in -30i64..30, b in -30i64..30) {
        let g = heisenberg(3).unwrap();
        prop_assert_eq!(g.mul(g.pow(x, a), g.pow(x, b)), g.pow(x, a + b));
    }

    #[test]
    fn metabelian_commutators_commute(x in 0usize..81, y in 0usize..81, u in 0usize..81, v in 0usize..81) {
        let g = wreath_cyclic(3).unwrap();
        let (a, b) = (g.commutator(x, y), g.commutator(u, v));
        prop_assert_eq!(g.mul(a, b), g.mul(b, a));
    }
}

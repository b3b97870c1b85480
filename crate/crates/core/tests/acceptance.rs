//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gamma_forge::construct::{
    bruck_from_gamma, circ_loop, compare_with_engine, gamma_from_bruck, oplus_loop,
};
use gamma_forge::group::{construct, Built, Group, GroupSpec};
use gamma_forge::perm::{close, DEFAULT_CLOSURE_CAP};
use gamma_forge::props::{
    automorphic_by_inn_closure, check_gamma_axioms, inner_generators, inner_mapping_group,
    is_automorphic, is_central, is_isomorphic, is_moufang, loop_center, powers_coincide,
    quotient_loop, AutomorphicOptions, AutomorphicVerdict, IsoVerdict, DEFAULT_ISO_BUDGET,
};
use gamma_forge::table::{Loop, DEFAULT_TABLE_CAP};
use gamma_forge::tbl;
use gamma_forge::verify::{builtin_catalog, cmd_survey, Format, SurveySource, VerifyOptions};

fn group(spec: &str) -> Group {
    construct(&spec.parse::<GroupSpec>().unwrap(), DEFAULT_TABLE_CAP)
        .unwrap()
        .into_table()
        .unwrap()
}

/// Every builtin entry that is materialized as a table, with its spec string.
fn catalog_groups() -> Vec<(String, Group)> {
    builtin_catalog()
        .iter()
        .filter_map(|spec| match construct(spec, DEFAULT_TABLE_CAP).unwrap() {
            Built::Table(g) => Some((spec.to_string(), g)),
            Built::Functional(_) => None,
        })
        .collect()
}

fn same_cells(a: &Loop, b: &Loop) -> bool {
    a.table().cells().eq(b.table().cells())
}

/// Lexicographically least nonassociative triple, by plain nested loops.
fn brute_associativity_witness(q: &Loop) -> Option<(usize, usize, usize)> {
    let n = q.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mul(q.mul(x, y), z) != q.mul(x, q.mul(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `ζ²(G) = {x : [x, y, z] = 1 for all y, z}`.
fn brute_second_center(g: &Group) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&x| (0..n).all(|y| (0..n).all(|z| g.nested_commutator(&[x, y, z]) == 0)))
        .collect()
}

fn criterion_1() {
    for (spec, g) in catalog_groups() {
        if g.order() > 243 {
            continue;
        }
        let q = circ_loop(&g).unwrap();
        let v = check_gamma_axioms(&q);
        assert!(v.all_hold(), "{spec}: {v:?}");
        assert!(powers_coincide(&g, &q).unwrap(), "{spec}: powers differ");
    }
}

fn criterion_2() {
    for spec in [
        "heis:3",
        "heis:5",
        "cyclic:3",
        "cyclic:5",
        "cyclic:7",
        "cyclic:9",
        "cyclic:27",
        "dp:cyclic:3,cyclic:3",
        "dp:cyclic:3,cyclic:5",
        "dp:cyclic:5,cyclic:5",
        "dp:cyclic:3,cyclic:9",
        "dp:cyclic:3,cyclic:3,cyclic:3",
        "dp:cyclic:9,cyclic:9",
    ] {
        let q = circ_loop(&group(spec)).unwrap();
        assert!(q.is_associative(), "{spec} should give an associative loop");
    }
    for spec in ["sd:7:3:2", "sd:13:3:3", "sd:11:5:3", "wr:3"] {
        let q = circ_loop(&group(spec)).unwrap();
        let w = q.table().associativity_witness();
        assert!(w.is_some(), "{spec} should give a nonassociative loop");
        assert_eq!(w, brute_associativity_witness(&q), "{spec}");
    }
    let g = group("sd:7:3:2");
    let q = circ_loop(&g).unwrap();
    let (x, y, z) = q.table().associativity_witness().unwrap();
    let labels = [q.label(x), q.label(y), q.label(z)];
    assert_eq!(labels, ["(1,0)", "(0,1)", "(0,1)"]);
    let left = q.label(q.mul(q.mul(x, y), z));
    let right = q.label(q.mul(x, q.mul(y, z)));
    assert_eq!((left, right), ("(4,2)", "(6,2)"));
}

fn criterion_3() {
    let mut engel_entries = 0;
    for (spec, g) in catalog_groups() {
        let circ = circ_loop(&g).unwrap();
        let engel = g.is_two_engel();
        assert_eq!(is_moufang(&circ), engel, "{spec}");
        let oplus = oplus_loop(&g).unwrap();
        assert_eq!(same_cells(&circ, &oplus), engel, "{spec}: circ = oplus iff 2-Engel");
        engel_entries += usize::from(engel);
    }
    assert!(engel_entries > 0);
}

fn criterion_4() {
    for spec in ["sd:7:3:2", "sd:7:3:4", "sd:13:3:3", "sd:11:5:3", "sd:31:5:2", "wr:3"] {
        let q = circ_loop(&group(spec)).unwrap();
        let v = is_automorphic(&q, &AutomorphicOptions::default());
        assert_eq!(v, AutomorphicVerdict::Automorphic, "{spec}");
        assert!(v.is_exhaustive());
    }
}

fn criterion_5() {
    for spec in ["sd:7:3:2", "wr:3"] {
        let g = group(spec);
        let q = circ_loop(&g).unwrap();
        assert_eq!(compare_with_engine(&g, &q).unwrap(), None, "{spec}");
    }
}

fn criterion_6() {
    for spec in ["sd:7:3:2", "heis:3", "wr:3"] {
        let g = group(spec);
        let circ = circ_loop(&g).unwrap();
        let bruck = bruck_from_gamma(&circ).unwrap();
        assert!(same_cells(&bruck, &oplus_loop(&g).unwrap()), "{spec}: bruck ≠ oplus");
        let back = gamma_from_bruck(&bruck).unwrap();
        let original = tbl::body(&tbl::to_string(circ.table(), &[]));
        let round = tbl::body(&tbl::to_string(back.table(), &[]));
        assert_eq!(original.as_bytes(), round.as_bytes(), "{spec}: roundtrip differs");
    }
}

fn criterion_7() {
    for (spec, g) in catalog_groups() {
        let q = circ_loop(&g).unwrap();
        for &a in g.center().members() {
            assert!(is_central(&q, a), "{spec}: {} central in G only", g.label(a));
        }
        if g.is_metabelian() {
            let series = g.upper_central_series();
            let zeta2 = &series[2.min(series.len() - 1)];
            for &a in zeta2.members() {
                assert!(is_central(&q, a), "{spec}: {} in ζ² not central", g.label(a));
            }
        }
    }
    let g = group("wr:3");
    let q = circ_loop(&g).unwrap();
    let zeta2 = brute_second_center(&g);
    assert_eq!(zeta2.len(), 9);
    let center = loop_center(&q).center;
    assert_eq!(center, zeta2);
    let quot = quotient_loop(&q, &center).unwrap();
    assert_eq!(quot.n(), 9);
    assert!(quot.is_associative() && quot.is_commutative());
}

fn criterion_8() {
    let a = circ_loop(&group("sd:7:3:2")).unwrap();
    let b = circ_loop(&group("sd:7:3:4")).unwrap();
    let IsoVerdict::Isomorphic { map } = is_isomorphic(&a, &b, DEFAULT_ISO_BUDGET) else {
        panic!("order-21 loops not shown isomorphic");
    };
    let mut images = map.clone();
    images.sort_unstable();
    assert_eq!(images, (0..21).collect::<Vec<_>>());
    for x in 0..21 {
        for y in 0..21 {
            assert_eq!(map[a.mul(x, y)], b.mul(map[x], map[y]));
        }
    }
}

fn criterion_9() {
    let mut loops: Vec<(String, Loop)> = Vec::new();
    for (spec, g) in catalog_groups() {
        if g.order() <= 27 {
            loops.push((format!("circ({spec})"), circ_loop(&g).unwrap().into_loop()));
            loops.push((spec, g.as_loop().clone()));
        }
    }
    assert!(loops.len() >= 10);
    for (name, q) in &loops {
        let by_generators = is_automorphic(q, &AutomorphicOptions::default()).is_automorphic();
        let by_closure = automorphic_by_inn_closure(q, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(by_generators, Some(by_closure), "{name}");
        let stabilizer = inner_mapping_group(q, DEFAULT_CLOSURE_CAP).unwrap();
        let gens: Vec<_> = inner_generators(q).all().cloned().collect();
        let generated = close(q.n(), &gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(stabilizer.same_elements(&generated), "{name}");
    }
}

fn criterion_10() {
    let opts = VerifyOptions::default();
    let run = || cmd_survey(3, 81, &SurveySource::Builtin, &opts).unwrap();
    let (first, second) = (run(), run());
    assert_eq!(first.summary.flagged, 0, "{}", first.render(Format::Text));
    assert!(first.summary.checked > 0);
    for format in [Format::Text, Format::Json] {
        assert_eq!(first.render(format).as_bytes(), second.render(format).as_bytes());
    }
}

type Criterion = (&'static str, fn(), Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("gamma-loop theorem", criterion_1, Duration::from_secs(120)),
        ("baer biconditional", criterion_2, Duration::from_secs(60)),
        ("moufang iff 2-engel", criterion_3, Duration::from_secs(120)),
        ("split metabelian implies automorphic", criterion_4, Duration::from_secs(60)),
        ("closed-form oracle", criterion_5, Duration::from_secs(120)),
        ("correspondence roundtrip", criterion_6, Duration::from_secs(60)),
        ("center theorems", criterion_7, Duration::from_secs(180)),
        ("uniqueness at order 21", criterion_8, Duration::from_secs(60)),
        ("oracle equivalences", criterion_9, Duration::from_secs(120)),
        ("survey integrity", criterion_10, Duration::from_secs(300)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = started.elapsed();
        let verdict = match &result {
            Ok(()) if elapsed <= *budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {}s budget)", budget.as_secs()),
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL: {msg}")
            }
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("criterion {:>2} {:<38} {verdict} ({:.2}s)", i + 1, name, elapsed.as_secs_f64());
    }
    let _ = panic::take_hook();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

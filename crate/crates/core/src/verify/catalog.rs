use crate::group::GroupSpec;

/// The pinned builtin catalog: abelian groups, class-2 and class-3 split
/// metabelian groups, nonnilpotent metabelian groups and `UT(4,3)`.
pub const BUILTIN: &[&str] = &[
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
    "dp:sd:7:3:2,cyclic:3",
    "dp:heis:3,cyclic:3",
    "dp:cyclic:9,cyclic:9",
    "sd:7:3:2",
    "sd:7:3:4",
    "sd:13:3:3",
    "sd:11:5:3",
    "sd:31:5:2",
    "heis:3",
    "heis:5",
    "wr:3",
    "ut:4:3",
];

pub fn builtin_catalog() -> Vec<GroupSpec> {
    BUILTIN
        .iter()
        .map(|s| s.parse().expect("builtin catalog entries parse"))
        .collect()
}

/// Catalog entries with order in `lo..=hi`, sorted by `(order, spec)`.
pub fn builtin_in_range(lo: usize, hi: usize) -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = builtin_catalog()
        .into_iter()
        .filter(|s| s.order().is_some_and(|o| (lo..=hi).contains(&o)))
        .collect();
    specs.sort_by_key(|s| (s.order(), s.to_string()));
    specs
}

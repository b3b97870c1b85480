//! Finite groups held as Cayley tables, with commutator calculus and series.

mod families;
mod functional;
mod semidirect;
mod spec;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{normalize_identity, CayleyTable, Loop};

pub use families::{cyclic, direct_product, heisenberg, unitriangular, wreath_cyclic};
pub use functional::UnitriangularGroup;
pub use semidirect::SemidirectSpec;
pub use spec::{construct, Built, GroupSpec};

/// A finite group with identity at index 0.
#[derive(Clone)]
pub struct Group {
    lp: Loop,
    inverse: Vec<u32>,
    semidirect: Option<Arc<SemidirectSpec>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name())
            .field("order", &self.order())
            .finish_non_exhaustive()
    }
}

impl Group {
    /// Verifies the group axioms exhaustively on an identity-normalized table.
    pub fn from_table(table: CayleyTable) -> Result<Self> {
        let lp = Loop::new(table).map_err(|e| match e {
            Error::NotLoop(w) => Error::NotGroup(w),
            other => other,
        })?;
        if let Some((x, y, z)) = lp.table().associativity_witness() {
            return Err(Error::NotGroup(format!(
                "not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})"
            )));
        }
        let inverse = (0..lp.n()).map(|x| lp.ldiv(x, 0) as u32).collect();
        Ok(Self {
            lp,
            inverse,
            semidirect: None,
        })
    }

    /// Like [`Group::from_table`], but first moves the identity to index 0.
    pub fn from_table_normalized(table: CayleyTable) -> Result<Self> {
        let (table, _) = normalize_identity(&table);
        Self::from_table(table)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.lp = self.lp.with_labels(Arc::new(labels));
        self
    }

    pub(crate) fn with_semidirect(mut self, spec: Arc<SemidirectSpec>) -> Self {
        self.semidirect = Some(spec);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.lp = self.lp.with_name(name);
        self
    }

    pub fn name(&self) -> &str {
        self.lp.name()
    }

    pub fn order(&self) -> usize {
        self.lp.n()
    }

    pub fn table(&self) -> &CayleyTable {
        self.lp.table()
    }

    /// The group viewed as a loop.
    pub fn as_loop(&self) -> &Loop {
        &self.lp
    }

    pub fn labels(&self) -> &Arc<Vec<String>> {
        self.lp.labels()
    }

    pub fn label(&self, x: usize) -> &str {
        self.lp.label(x)
    }

    /// Index of the element with the given label.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// The semidirect decomposition this group was built from, if any.
    pub fn semidirect(&self) -> Option<&Arc<SemidirectSpec>> {
        self.semidirect.as_ref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.lp.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// `x^y = y⁻¹xy`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Left-normed `[x₀, x₁, …, x_k]`.
    pub fn nested_commutator(&self, xs: &[usize]) -> usize {
        match xs.split_first() {
            None => 0,
            Some((&first, rest)) => rest.iter().fold(first, |acc, &x| self.commutator(acc, x)),
        }
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.lp.element_order(x)
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1u64, |acc, x| crate::perm::lcm(acc, self.element_order(x) as u64))
            as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.lp.is_commutative()
    }

    pub fn is_uniquely_2_divisible(&self) -> bool {
        let n = self.order();
        let mut hit = vec![false; n];
        let injective = (0..n).all(|x| !std::mem::replace(&mut hit[self.mul(x, x)], true));
        assert_eq!(
            injective,
            n % 2 == 1,
            "squaring injectivity must agree with odd order"
        );
        injective
    }

    /// The unique `b` with `b² = a`, computed as `a^((m+1)/2)`.
    pub fn sqrt_element(&self, a: usize) -> Result<usize> {
        let m = self.element_order(a);
        if m.is_multiple_of(2) {
            return Err(Error::EvenOrder {
                element: self.label(a).to_string(),
                order: m,
            });
        }
        Ok(self.pow(a, m.div_ceil(2) as i64))
    }

    /// Square roots of every element, for uniquely 2-divisible groups.
    pub fn sqrt_table(&self) -> Result<Vec<usize>> {
        if !self.is_uniquely_2_divisible() {
            return Err(Error::NotUniquelyTwoDivisible(format!(
                "{} has even order {}",
                self.name(),
                self.order()
            )));
        }
        (0..self.order()).map(|a| self.sqrt_element(a)).collect()
    }

    /// Closure of `generators` under the group product.
    pub fn subgroup_generated<I: IntoIterator<Item = usize>>(&self, generators: I) -> Subgroup {
        let gens: BTreeSet<usize> = generators.into_iter().filter(|&g| g != 0).collect();
        let mut members: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = self.mul(a, g);
                if members.insert(b) {
                    frontier.push(b);
                }
            }
        }
        Subgroup::from_sorted(members.into_iter().collect())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order()).collect())
    }

    pub fn center(&self) -> Subgroup {
        self.next_upper(&Subgroup::trivial())
    }

    /// `{x : [x, y] ∈ lower for all y}`.
    fn next_upper(&self, lower: &Subgroup) -> Subgroup {
        let n = self.order();
        let members: Vec<usize> = (0..n)
            .into_par_iter()
            .filter(|&x| (0..n).all(|y| lower.contains(self.commutator(x, y))))
            .collect();
        Subgroup::from_sorted(members)
    }

    /// `ζ⁰ = 1 ≤ ζ¹ ≤ …`, ending at the first repeated term.
    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::trivial()];
        loop {
            let next = self.next_upper(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    /// `[a, b]` subgroup: generated by commutators `[x, y]`, `x ∈ a`, `y ∈ b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let comms: BTreeSet<usize> = a
            .members()
            .par_iter()
            .flat_map_iter(|&x| b.members().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        self.subgroup_generated(comms)
    }

    /// `γ₁ = G ≥ γ₂ ≥ …`, ending at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().expect("nonempty"), &whole);
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> NilpotencyClass {
        let series = self.lower_central_series();
        let last = series.last().expect("nonempty");
        if last.is_trivial() {
            NilpotencyClass::Class(series.len() - 1)
        } else {
            NilpotencyClass::NotNilpotent
        }
    }

    /// `G ≥ G′ ≥ G″ ≥ …`, ending at the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `G″ = 1`, cross-checked against pairwise commutation of all commutators.
    pub fn is_metabelian(&self) -> bool {
        let series = self.derived_series();
        let second = &series[2.min(series.len() - 1)];
        let by_series = second.is_trivial();
        let by_pairs = self.commuting_commutators_witness().is_none();
        assert_eq!(
            by_series, by_pairs,
            "derived series and commutator pairs disagree on metabelian"
        );
        by_series
    }

    /// Two commutators that do not commute, least first.
    pub fn commuting_commutators_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        let comms: Vec<usize> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        comms.par_iter().find_map_first(|&a| {
            comms
                .iter()
                .find(|&&b| self.mul(a, b) != self.mul(b, a))
                .map(|&b| (a, b))
        })
    }

    /// Lexicographically least `(x, y)` with `[x, y, y] ≠ 1`.
    pub fn two_engel_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n).into_par_iter().find_map_first(|x| {
            (0..n)
                .find(|&y| self.commutator(self.commutator(x, y), y) != 0)
                .map(|y| (x, y))
        })
    }

    pub fn is_two_engel(&self) -> bool {
        self.two_engel_witness().is_none()
    }

    /// Least `(x, y, z)` violating a standard commutator identity, with its name.
    ///
    /// Always checked: both expansions of `[xy,z]` and `[x,yz]`, the inversion
    /// rules and Hall–Witt. For metabelian groups of odd order also
    /// `[[x,y]^½,z] = [[x,y],z]^½` and `[x,y,z][z,x,y][y,z,x] = 1`.
    pub fn commutator_identity_witness(&self) -> Option<(&'static str, [usize; 3])> {
        let n = self.order();
        let sqrt = if n % 2 == 1 && self.is_metabelian() {
            self.sqrt_table().ok()
        } else {
            None
        };
        let c = |a, b| self.commutator(a, b);
        let m = |a, b| self.mul(a, b);
        let c3 = |a, b, d| self.nested_commutator(&[a, b, d]);
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    let (yi, zi, xi) = (self.inv(y), self.inv(z), self.inv(x));
                    let mut checks = vec![
                        ("[xy,z] = [x,z]^y[y,z]", c(m(x, y), z) == m(self.conj(c(x, z), y), c(y, z))),
                        ("[xy,z] = [x,z][x,z,y][y,z]", c(m(x, y), z) == m(m(c(x, z), c3(x, z, y)), c(y, z))),
                        ("[x,yz] = [x,z][x,y]^z", c(x, m(y, z)) == m(c(x, z), self.conj(c(x, y), z))),
                        ("[x,yz] = [x,z][x,y][x,y,z]", c(x, m(y, z)) == m(m(c(x, z), c(x, y)), c3(x, y, z))),
                        ("[x,y⁻¹] = [y,x]^(y⁻¹)", c(x, yi) == self.conj(c(y, x), yi)),
                        ("[x⁻¹,y] = [y,x]^(x⁻¹)", c(xi, y) == self.conj(c(y, x), xi)),
                        (
                            "Hall-Witt",
                            m(
                                m(self.conj(c3(x, yi, z), y), self.conj(c3(y, zi, x), z)),
                                self.conj(c3(z, xi, y), x),
                            ) == 0,
                        ),
                        (
                            "[x,y,z^x][z,x,y^z][y,z,x^y] = 1",
                            m(
                                m(c3(x, y, self.conj(z, x)), c3(z, x, self.conj(y, z))),
                                c3(y, z, self.conj(x, y)),
                            ) == 0,
                        ),
                    ];
                    if let Some(sqrt) = &sqrt {
                        checks.push((
                            "[[x,y]^½,z] = [[x,y],z]^½",
                            c(sqrt[c(x, y)], z) == sqrt[c3(x, y, z)],
                        ));
                        checks.push((
                            "[x,y,z][z,x,y][y,z,x] = 1",
                            m(m(c3(x, y, z), c3(z, x, y)), c3(y, z, x)) == 0,
                        ));
                    }
                    if let Some((name, _)) = checks.into_iter().find(|(_, ok)| !ok) {
                        return Some((name, [x, y, z]));
                    }
                }
            }
            None
        })
    }
}

/// A subgroup, as the sorted list of its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn trivial() -> Self {
        Self { members: vec![0] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &[usize]) -> bool {
        self.members.iter().all(|x| other.binary_search(x).is_ok())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum NilpotencyClass {
    Class(usize),
    NotNilpotent,
}

impl NilpotencyClass {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, NilpotencyClass::Class(c) if c <= k)
    }
}

impl fmt::Display for NilpotencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotencyClass::Class(c) => write!(f, "{c}"),
            NilpotencyClass::NotNilpotent => write!(f, "not nilpotent"),
        }
    }
}

impl From<NilpotencyClass> for String {
    fn from(c: NilpotencyClass) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests;

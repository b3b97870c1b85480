//! Cayley tables of finite magmas and the [`Loop`] wrapper.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on materialized table size; override with `GAMMA_FORGE_TABLE_CAP`.
pub const DEFAULT_TABLE_CAP: usize = 3000;

/// The table cap in effect, honouring the `GAMMA_FORGE_TABLE_CAP` environment variable.
pub fn table_cap() -> usize {
    std::env::var("GAMMA_FORGE_TABLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_CAP)
}

/// An `n × n` multiplication table over the elements `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u32>,
    name: String,
}

impl std::fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CayleyTable")
            .field("n", &self.n)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl CayleyTable {
    /// Builds a table from row-major cells, validating every entry.
    pub fn from_cells(n: usize, cells: Vec<usize>, name: impl Into<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        assert_eq!(cells.len(), n * n, "cell count must be n²");
        if let Some(pos) = cells.iter().position(|&v| v >= n) {
            return Err(Error::OutOfRange {
                x: pos / n,
                y: pos % n,
                value: cells[pos],
                n,
            });
        }
        Ok(Self {
            n,
            cells: cells.into_iter().map(|v| v as u32).collect(),
            name: name.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|&v| v as usize)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Lexicographically least non-associative triple, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Relabels elements by `perm`: the new table satisfies `σ(x)·σ(y) = σ(x·y)`.
    pub fn relabel(&self, perm: &Permutation) -> CayleyTable {
        let n = self.n;
        let inv = perm.inverse();
        let cells = (0..n * n)
            .map(|i| {
                let (x, y) = (inv.apply(i / n), inv.apply(i % n));
                perm.apply(self.mul(x, y)) as u32
            })
            .collect();
        CayleyTable {
            n,
            cells,
            name: self.name.clone(),
        }
    }
}

/// Materializes `n × n` products of `rule`, rejecting out-of-range values.
pub fn build_table<F>(n: usize, name: impl Into<String>, rule: F) -> Result<CayleyTable>
where
    F: Fn(usize, usize) -> usize + Sync,
{
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let cells: Vec<usize> = (0..n * n)
        .into_par_iter()
        .map(|i| rule(i / n, i % n))
        .collect();
    CayleyTable::from_cells(n, cells, name)
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_latin: bool,
    pub has_identity: bool,
    pub is_loop: bool,
    pub identity_index: Option<usize>,
    pub witness: Option<String>,
}

fn repeated_in<I: Iterator<Item = usize>>(n: usize, mut values: I) -> Option<usize> {
    let mut seen = vec![false; n];
    values.find(|&v| std::mem::replace(&mut seen[v], true))
}

fn row_defect(t: &CayleyTable, x: usize) -> Option<usize> {
    repeated_in(t.n, t.row(x))
}

fn column_defect(t: &CayleyTable, y: usize) -> Option<usize> {
    repeated_in(t.n, (0..t.n).map(|x| t.mul(x, y)))
}

fn find_identity(t: &CayleyTable) -> Option<usize> {
    (0..t.n).find(|&e| (0..t.n).all(|x| t.mul(e, x) == x && t.mul(x, e) == x))
}

pub fn classify(t: &CayleyTable) -> Classification {
    let n = t.n;
    let mut witness = None;
    let row = (0..n).find_map(|x| row_defect(t, x).map(|v| (x, v)));
    let col = if row.is_none() {
        (0..n).find_map(|y| column_defect(t, y).map(|v| (y, v)))
    } else {
        None
    };
    if let Some((x, v)) = row {
        witness = Some(format!("row {x} repeats {v}"));
    } else if let Some((y, v)) = col {
        witness = Some(format!("column {y} repeats {v}"));
    }
    let is_latin = witness.is_none();
    let identity_index = find_identity(t);
    if identity_index.is_none() && witness.is_none() {
        witness = Some("no two-sided identity".to_string());
    }
    Classification {
        is_latin,
        has_identity: identity_index.is_some(),
        is_loop: is_latin && identity_index.is_some(),
        identity_index,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `L_x: y ↦ x·y` or `R_x: y ↦ y·x`.
pub fn translation(t: &CayleyTable, x: usize, side: Side) -> Result<Permutation> {
    let images: Vec<usize> = match side {
        Side::Left => t.row(x).collect(),
        Side::Right => (0..t.n).map(|y| t.mul(y, x)).collect(),
    };
    Permutation::from_images(images).map_err(|_| {
        let what = match side {
            Side::Left => format!("row {x} is not a permutation"),
            Side::Right => format!("column {x} is not a permutation"),
        };
        Error::NotLatin(what)
    })
}

/// Moves the identity (if any, and not already there) to index 0 by a transposition.
///
/// Returns the relabelled table and the relabelling applied (old index ↦ new index).
pub fn normalize_identity(t: &CayleyTable) -> (CayleyTable, Permutation) {
    match find_identity(t) {
        Some(e) if e != 0 => {
            let swap = Permutation::from_cycles(t.n, &[&[0, e]]).expect("valid transposition");
            (t.relabel(&swap), swap)
        }
        _ => (t.clone(), Permutation::identity(t.n)),
    }
}

/// A loop: a Latin table with two-sided identity at index 0, with cached divisions.
#[derive(Clone)]
pub struct Loop {
    table: CayleyTable,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
    labels: Arc<Vec<String>>,
}

impl std::fmt::Debug for Loop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Loop")
            .field("n", &self.n())
            .field("name", &self.table.name)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Loop {
    fn eq(&self, other: &Self) -> bool {
        self.table.cells == other.table.cells
    }
}

impl Eq for Loop {}

impl Loop {
    pub fn new(table: CayleyTable) -> Result<Self> {
        let c = classify(&table);
        if !c.is_loop {
            return Err(Error::NotLoop(c.witness.unwrap_or_default()));
        }
        if c.identity_index != Some(0) {
            return Err(Error::IdentityNotNormalized(c.identity_index.unwrap_or(0)));
        }
        let n = table.n;
        let mut ldiv = vec![0u32; n * n];
        let mut rdiv = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = table.mul(x, y);
                ldiv[x * n + p] = y as u32;
                rdiv[p * n + y] = x as u32;
            }
        }
        let labels = Arc::new((0..n).map(|i| i.to_string()).collect());
        Ok(Self {
            table,
            ldiv,
            rdiv,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Arc<Vec<String>>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.table.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn name(&self) -> &str {
        &self.table.name
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn labels(&self) -> &Arc<Vec<String>> {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    /// `x \ y`, the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n() + y] as usize
    }

    /// `y / x`, the unique `z` with `z·x = y`.
    #[inline]
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        self.rdiv[y * self.n() + x] as usize
    }

    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.table.row(x).map(|v| v as u32).collect())
    }

    pub fn right_translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.n()).map(|y| self.mul(y, x) as u32).collect())
    }

    /// Two-sided inverse of `x`, when the left and right inverses agree.
    pub fn two_sided_inverse(&self, x: usize) -> Option<usize> {
        let r = self.ldiv(x, 0);
        (self.rdiv(0, x) == r).then_some(r)
    }

    pub fn is_commutative(&self) -> bool {
        self.table.is_commutative()
    }

    pub fn is_associative(&self) -> bool {
        self.table.is_associative()
    }

    /// Left-normed power `((x·x)·x)…`, the only reading used for power-associative loops.
    pub fn left_power(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    /// Order of `x` as the least `m ≥ 1` with a left-normed power equal to the identity.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut m = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            m += 1;
            if m > self.n() + 1 {
                // Cannot happen in a loop: left-normed powers walk a permutation orbit.
                unreachable!("element order exceeds loop order");
            }
        }
        m
    }
}

/// `x \ y` in a loop.
pub fn left_divide(q: &Loop, x: usize, y: usize) -> usize {
    q.ldiv(x, y)
}

/// `y / x` in a loop.
pub fn right_divide(q: &Loop, y: usize, x: usize) -> usize {
    q.rdiv(y, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> CayleyTable {
        build_table(n, format!("Z{n}"), |x, y| (x + y) % n).unwrap()
    }

    #[test]
    fn trivial_magma() {
        let t = build_table(1, "trivial", |_, _| 0).unwrap();
        let c = classify(&t);
        assert!(c.is_loop);
        assert_eq!(c.identity_index, Some(0));
    }

    #[test]
    fn out_of_range_names_cell() {
        match build_table(3, "bad", |x, y| if (x, y) == (1, 2) { 3 } else { 0 }) {
            Err(Error::OutOfRange { x: 1, y: 2, value: 3, n: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cyclic_is_loop() {
        let c = classify(&cyclic(7));
        assert!(c.is_loop && c.is_latin && c.has_identity);
        assert_eq!(c.identity_index, Some(0));
        assert_eq!(c.witness, None);
    }

    #[test]
    fn constant_row_is_not_latin() {
        let t = build_table(4, "const-row", |x, y| if x == 0 { 0 } else { (x + y) % 4 }).unwrap();
        let c = classify(&t);
        assert!(!c.is_latin);
        assert!(!c.is_loop);
        assert_eq!(c.witness.as_deref(), Some("row 0 repeats 0"));
    }

    #[test]
    fn latin_without_identity() {
        // x - y mod 5 is Latin but has only a right identity.
        let t = build_table(5, "sub", |x, y| (x + 5 - y) % 5).unwrap();
        let c = classify(&t);
        assert!(c.is_latin);
        assert!(!c.has_identity);
        assert_eq!(c.witness.as_deref(), Some("no two-sided identity"));
    }

    #[test]
    fn left_translation_of_z3() {
        let t = cyclic(3);
        let l1 = translation(&t, 1, Side::Left).unwrap();
        assert_eq!(l1.images().collect::<Vec<_>>(), vec![1, 2, 0]);
        assert!(translation(&t, 0, Side::Right).unwrap().is_identity());
    }

    #[test]
    fn translation_of_non_latin_row_fails() {
        let t = build_table(3, "zero", |_, _| 0).unwrap();
        assert!(translation(&t, 0, Side::Left).is_err());
    }

    #[test]
    fn divisions_in_z7() {
        let q = Loop::new(cyclic(7)).unwrap();
        assert_eq!(left_divide(&q, 3, 5), 2);
        assert_eq!(right_divide(&q, 5, 3), 2);
        for y in 0..7 {
            assert_eq!(left_divide(&q, 0, y), y);
        }
    }

    #[test]
    fn normalization_moves_identity() {
        // Z3 relabelled so that the identity sits at index 2.
        let t = CayleyTable::from_cells(3, vec![1, 2, 0, 2, 0, 1, 0, 1, 2], "shifted").unwrap();
        assert_eq!(classify(&t).identity_index, Some(2));
        assert!(matches!(Loop::new(t.clone()), Err(Error::IdentityNotNormalized(2))));
        let (norm, perm) = normalize_identity(&t);
        assert_eq!(perm.apply(2), 0);
        assert_eq!(classify(&norm).identity_index, Some(0));
        assert!(norm.is_associative());
    }
}

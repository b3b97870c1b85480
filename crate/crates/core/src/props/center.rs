use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::NilpotencyClass;
use crate::table::{CayleyTable, Loop};

/// Commutant, nucleus and center of a loop, as sorted element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopCenterData {
    pub commutant: Vec<usize>,
    pub nucleus: Vec<usize>,
    pub center: Vec<usize>,
}

fn commutes_with_all(q: &Loop, a: usize) -> bool {
    (0..q.n()).all(|x| q.mul(a, x) == q.mul(x, a))
}

fn in_left_nucleus(q: &Loop, a: usize) -> bool {
    let n = q.n();
    (0..n).all(|x| {
        let ax = q.mul(a, x);
        (0..n).all(|y| q.mul(a, q.mul(x, y)) == q.mul(ax, y))
    })
}

fn in_middle_nucleus(q: &Loop, a: usize) -> bool {
    let n = q.n();
    (0..n).all(|x| {
        let xa = q.mul(x, a);
        (0..n).all(|y| q.mul(x, q.mul(a, y)) == q.mul(xa, y))
    })
}

fn in_right_nucleus(q: &Loop, a: usize) -> bool {
    let n = q.n();
    (0..n).all(|x| (0..n).all(|y| q.mul(x, q.mul(y, a)) == q.mul(q.mul(x, y), a)))
}

/// Whether `a` commutes and associates with every pair of elements.
pub fn is_central(q: &Loop, a: usize) -> bool {
    commutes_with_all(q, a) && in_left_nucleus(q, a) && in_middle_nucleus(q, a) && in_right_nucleus(q, a)
}

pub fn loop_center(q: &Loop) -> LoopCenterData {
    let n = q.n();
    let commutative = q.is_commutative();
    let rows: Vec<(bool, bool)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let left = in_left_nucleus(q, a);
            let right = in_right_nucleus(q, a);
            if commutative {
                assert_eq!(left, right, "left and right nuclei differ in a commutative loop");
            }
            (
                commutes_with_all(q, a),
                left && right && in_middle_nucleus(q, a),
            )
        })
        .collect();
    let pick = |f: fn(&(bool, bool)) -> bool| -> Vec<usize> {
        rows.iter().enumerate().filter(|(_, r)| f(r)).map(|(a, _)| a).collect()
    };
    LoopCenterData {
        commutant: pick(|r| r.0),
        nucleus: pick(|r| r.1),
        center: pick(|r| r.0 && r.1),
    }
}

/// `q / s` for a central subloop `s`; blocks are the cosets `a·s`, ordered by
/// least member, each labelled by its least member.
pub fn quotient_loop(q: &Loop, s: &[usize]) -> Result<Loop> {
    let n = q.n();
    let mut in_s = vec![false; n];
    for &a in s {
        if a >= n {
            return Err(Error::InvalidSubloop(format!("{a} is not an element")));
        }
        in_s[a] = true;
    }
    if !in_s[0] {
        return Err(Error::InvalidSubloop("missing the identity".into()));
    }
    for &a in s {
        if !is_central(q, a) {
            return Err(Error::InvalidSubloop(format!("{} is not central", q.label(a))));
        }
        for &b in s {
            if !in_s[q.mul(a, b)] {
                return Err(Error::InvalidSubloop(format!(
                    "not closed: {}·{} leaves the subloop",
                    q.label(a),
                    q.label(b)
                )));
            }
        }
    }

    let mut block_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if block_of[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &t in s {
            let b = q.mul(a, t);
            if block_of[b] != usize::MAX {
                return Err(Error::IllDefinedQuotient(format!(
                    "cosets of {} and {} overlap at {}",
                    q.label(reps[block_of[b]]),
                    q.label(a),
                    q.label(b)
                )));
            }
            block_of[b] = id;
        }
    }
    let m = reps.len();
    if m * s.len() != n {
        return Err(Error::IllDefinedQuotient("cosets do not partition the loop".into()));
    }
    let mut cells = vec![usize::MAX; m * m];
    for a in 0..n {
        for b in 0..n {
            let (i, j) = (block_of[a], block_of[b]);
            let k = block_of[q.mul(a, b)];
            let cell = &mut cells[i * m + j];
            if *cell == usize::MAX {
                *cell = k;
            } else if *cell != k {
                return Err(Error::IllDefinedQuotient(format!(
                    "block product depends on representatives at ({}, {})",
                    q.label(a),
                    q.label(b)
                )));
            }
        }
    }
    let table = CayleyTable::from_cells(m, cells, format!("{}/Z", q.name()))?;
    let labels = reps.iter().map(|&r| q.label(r).to_string()).collect();
    Ok(Loop::new(table)?.with_labels(std::sync::Arc::new(labels)))
}

/// Length of the chain `q → q/Z(q) → …` reaching the trivial loop.
pub fn loop_nilpotency_class(q: &Loop) -> NilpotencyClass {
    let mut current = q.clone();
    let mut class = 0;
    while current.n() > 1 {
        let center = loop_center(&current).center;
        if center.len() == 1 {
            return NilpotencyClass::NotNilpotent;
        }
        current = quotient_loop(&current, &center).expect("the center is a central subloop");
        class += 1;
    }
    NilpotencyClass::Class(class)
}

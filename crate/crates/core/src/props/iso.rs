use serde::Serialize;

use crate::table::Loop;

use super::center::loop_center;

/// Default cap on search-tree nodes.
pub const DEFAULT_ISO_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    /// `map[x]` is the image of `x`.
    Isomorphic { map: Vec<usize> },
    NotIsomorphic { certificate: String },
    /// The node budget ran out before the search finished.
    Indeterminate { nodes: usize },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> Option<bool> {
        match self {
            IsoVerdict::Isomorphic { .. } => Some(true),
            IsoVerdict::NotIsomorphic { .. } => Some(false),
            IsoVerdict::Indeterminate { .. } => None,
        }
    }
}

/// Isomorphism-invariant data attached to each element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    order: usize,
    left_fixed: usize,
    right_fixed: usize,
    central: bool,
}

fn signatures(q: &Loop) -> Vec<Signature> {
    let center = loop_center(q).center;
    (0..q.n())
        .map(|x| Signature {
            order: q.element_order(x),
            left_fixed: q.left_translation(x).fixed_point_count(),
            right_fixed: q.right_translation(x).fixed_point_count(),
            central: center.binary_search(&x).is_ok(),
        })
        .collect()
}

fn closure(q: &Loop, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; q.n()];
    inside[0] = true;
    let mut members = vec![0];
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            members.push(g);
        }
    }
    // In a finite loop, closure under the product is closure under divisions too.
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            for (a, b) in [(members[i], members[j]), (members[j], members[i])] {
                let c = q.mul(a, b);
                if !std::mem::replace(&mut inside[c], true) {
                    members.push(c);
                }
            }
        }
        i += 1;
    }
    inside
}

struct Search<'a> {
    q1: &'a Loop,
    q2: &'a Loop,
    sig1: Vec<Signature>,
    sig2: Vec<Signature>,
    gens: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Extends `map` by products until closed; `false` on any inconsistency.
    fn extend(&self, map: &mut [usize], used: &mut [bool], domain: &mut Vec<usize>, start: usize) -> bool {
        let mut i = start;
        while i < domain.len() {
            let a = domain[i];
            for j in 0..=i {
                let b = domain[j];
                for (x, y) in [(a, b), (b, a)] {
                    let c = self.q1.mul(x, y);
                    let d = self.q2.mul(map[x], map[y]);
                    if map[c] == usize::MAX {
                        if used[d] || self.sig1[c] != self.sig2[d] {
                            return false;
                        }
                        map[c] = d;
                        used[d] = true;
                        domain.push(c);
                    } else if map[c] != d {
                        return false;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn dfs(&mut self, level: usize, map: &[usize], used: &[bool], domain: &[usize]) -> Result<Option<Vec<usize>>, ()> {
        if level == self.gens.len() {
            return Ok(Some(map.to_vec()));
        }
        let g = self.gens[level];
        if map[g] != usize::MAX {
            return self.dfs(level + 1, map, used, domain);
        }
        for c in 0..self.q2.n() {
            if used[c] || self.sig1[g] != self.sig2[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            let (mut m, mut u, mut d) = (map.to_vec(), used.to_vec(), domain.to_vec());
            m[g] = c;
            u[c] = true;
            let start = d.len();
            d.push(g);
            if self.extend(&mut m, &mut u, &mut d, start) {
                if let Some(found) = self.dfs(level + 1, &m, &u, &d)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

/// Backtracking search for an identity-preserving isomorphism `q1 → q2`.
///
/// Generators of `q1` are mapped to elements of matching signature (element
/// order, fixed points of `L_x` and `R_x`, centrality); each choice is
/// propagated through all products before branching further.
pub fn is_isomorphic(q1: &Loop, q2: &Loop, budget: usize) -> IsoVerdict {
    let n = q1.n();
    if n != q2.n() {
        return IsoVerdict::NotIsomorphic {
            certificate: format!("orders differ: {} vs {}", n, q2.n()),
        };
    }
    for (what, a, b) in [
        ("commutative", q1.is_commutative(), q2.is_commutative()),
        ("associative", q1.is_associative(), q2.is_associative()),
    ] {
        if a != b {
            return IsoVerdict::NotIsomorphic {
                certificate: format!("{what}: {a} vs {b}"),
            };
        }
    }
    let (sig1, sig2) = (signatures(q1), signatures(q2));
    let (mut p1, mut p2) = (sig1.clone(), sig2.clone());
    p1.sort();
    p2.sort();
    if p1 != p2 {
        let c1 = sig1.iter().filter(|s| s.central).count();
        let c2 = sig2.iter().filter(|s| s.central).count();
        return IsoVerdict::NotIsomorphic {
            certificate: if c1 != c2 {
                format!("center sizes differ: {c1} vs {c2}")
            } else {
                "element signature profiles differ".into()
            },
        };
    }

    // Greedy generating set, preferring elements with rare signatures.
    let class_size = |s: &Signature| sig2.iter().filter(|t| *t == s).count();
    let mut gens = Vec::new();
    let mut inside = closure(q1, &gens);
    while let Some(g) = (0..n)
        .filter(|&x| !inside[x])
        .min_by_key(|&x| (class_size(&sig1[x]), x))
    {
        gens.push(g);
        inside = closure(q1, &gens);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut search = Search {
        q1,
        q2,
        sig1,
        sig2,
        gens,
        nodes: 0,
        budget,
    };
    match search.dfs(0, &map, &used, &[0]) {
        Ok(Some(map)) => {
            debug_assert!((0..n).all(|x| (0..n).all(|y| map[q1.mul(x, y)] == q2.mul(map[x], map[y]))));
            IsoVerdict::Isomorphic { map }
        }
        Ok(None) => IsoVerdict::NotIsomorphic {
            certificate: format!("search exhausted after {} nodes", search.nodes),
        },
        Err(()) => IsoVerdict::Indeterminate {
            nodes: search.nodes,
        },
    }
}

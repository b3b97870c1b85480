//! Loop-theoretic predicates and structure.
//!
//! Every exhaustive scan reports the lexicographically least witness,
//! independent of how the work is split across threads.

mod automorphic;
mod center;
mod inner;
mod iso;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::table::Loop;

pub use automorphic::{
    automorphic_by_inn_closure, is_automorphic, AutomorphicOptions, AutomorphicVerdict,
    DEFAULT_EXHAUSTIVE_CAP, DEFAULT_PRESCREEN_PROBES,
};
pub use center::{is_central, loop_center, loop_nilpotency_class, quotient_loop, LoopCenterData};
pub use inner::{inner_generators, inner_mapping_group, multiplication_group, InnerGenerator, InnerGenerators};
pub use iso::{is_isomorphic, IsoVerdict, DEFAULT_ISO_BUDGET};

/// Result of one exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum AxiomStatus {
    Holds,
    /// Least violating tuple of elements.
    Fails(Vec<usize>),
    Inapplicable(String),
}

impl AxiomStatus {
    pub fn holds(&self) -> bool {
        matches!(self, AxiomStatus::Holds)
    }

    fn from_witness(w: Option<Vec<usize>>) -> Self {
        match w {
            None => AxiomStatus::Holds,
            Some(w) => AxiomStatus::Fails(w),
        }
    }

    /// Witness rendered with the loop's element labels.
    pub fn describe(&self, q: &Loop) -> String {
        match self {
            AxiomStatus::Holds => "holds".into(),
            AxiomStatus::Fails(w) => format!("fails at {}", render(q, w)),
            AxiomStatus::Inapplicable(why) => format!("inapplicable: {why}"),
        }
    }
}

/// `(a, b, …)` with element labels.
pub fn render(q: &Loop, elements: &[usize]) -> String {
    let parts: Vec<&str> = elements.iter().map(|&e| q.label(e)).collect();
    format!("({})", parts.join(", "))
}

/// Per-axiom Γ-loop verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVerdict {
    pub commutative: AxiomStatus,
    pub aip: AxiomStatus,
    pub inverse_translations_commute: AxiomStatus,
    pub p_map_identity: AxiomStatus,
}

impl GammaVerdict {
    pub fn all_hold(&self) -> bool {
        self.commutative.holds()
            && self.aip.holds()
            && self.inverse_translations_commute.holds()
            && self.p_map_identity.holds()
    }
}

fn first_pair<F>(n: usize, bad: F) -> Option<(usize, usize)>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .find_map_first(|x| (0..n).find(|&y| bad(x, y)).map(|y| (x, y)))
}

fn first_triple<F>(n: usize, bad: F) -> Option<(usize, usize, usize)>
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

pub fn commutativity_witness(q: &Loop) -> Option<(usize, usize)> {
    first_pair(q.n(), |x, y| q.mul(x, y) != q.mul(y, x))
}

fn inverses(q: &Loop) -> std::result::Result<Vec<usize>, usize> {
    (0..q.n())
        .map(|x| q.two_sided_inverse(x).ok_or(x))
        .collect()
}

/// Least `(x, y)` with `(xy)⁻¹ ≠ x⁻¹y⁻¹`; an element without a two-sided inverse is reported as `(x, x)`.
pub fn aip_witness(q: &Loop) -> Option<(usize, usize)> {
    match inverses(q) {
        Err(x) => Some((x, x)),
        Ok(inv) => first_pair(q.n(), |x, y| inv[q.mul(x, y)] != q.mul(inv[x], inv[y])),
    }
}

/// Checks Γ1 (commutative), Γ2 (AIP), Γ3 (`L_x L_{x⁻¹} = L_{x⁻¹} L_x`) and
/// Γ4 (`P_x P_y P_x = P_{yP_x}` with `P_x = R_x L_{x⁻¹}⁻¹`).
pub fn check_gamma_axioms(q: &Loop) -> GammaVerdict {
    let n = q.n();
    let commutative =
        AxiomStatus::from_witness(commutativity_witness(q).map(|(x, y)| vec![x, y]));
    let inv = match inverses(q) {
        Ok(inv) => inv,
        Err(x) => {
            let why = format!("{} has no two-sided inverse", q.label(x));
            return GammaVerdict {
                commutative,
                aip: AxiomStatus::Inapplicable(why.clone()),
                inverse_translations_commute: AxiomStatus::Inapplicable(why.clone()),
                p_map_identity: AxiomStatus::Inapplicable(why),
            };
        }
    };
    let aip = AxiomStatus::from_witness(
        first_pair(n, |x, y| inv[q.mul(x, y)] != q.mul(inv[x], inv[y])).map(|(x, y)| vec![x, y]),
    );
    let gamma3 = AxiomStatus::from_witness(
        first_pair(n, |x, u| q.mul(inv[x], q.mul(x, u)) != q.mul(x, q.mul(inv[x], u)))
            .map(|(x, u)| vec![x, u]),
    );
    // P_x: u ↦ x⁻¹ \ (u x)
    let p: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|u| q.ldiv(inv[x], q.mul(u, x))).collect())
        .collect();
    if commutative.holds() {
        for (x, row) in p.iter().enumerate() {
            for (u, &pu) in row.iter().enumerate() {
                assert_eq!(
                    pu,
                    q.ldiv(inv[x], q.mul(x, u)),
                    "P_x must equal L_x L_(x⁻¹)⁻¹ in a commutative loop"
                );
            }
        }
    }
    let gamma4 = AxiomStatus::from_witness(
        first_triple(n, |x, y, u| {
            let lhs = p[x][p[y][p[x][u]]];
            let rhs = p[p[x][y]][u];
            lhs != rhs
        })
        .map(|(x, y, u)| vec![x, y, u]),
    );
    GammaVerdict {
        commutative,
        aip,
        inverse_translations_commute: gamma3,
        p_map_identity: gamma4,
    }
}

/// Least `(x, y, z)` with `xy·zx ≠ x(yz·x)`.
pub fn moufang_witness(q: &Loop) -> Option<(usize, usize, usize)> {
    first_triple(q.n(), |x, y, z| {
        q.mul(q.mul(x, y), q.mul(z, x)) != q.mul(x, q.mul(q.mul(y, z), x))
    })
}

pub fn is_moufang(q: &Loop) -> bool {
    moufang_witness(q).is_none()
}

/// Least failure of `x(y·xz) = (x·yx)z`, or of AIP (reported as a pair).
pub fn left_bruck_witness(q: &Loop) -> Option<Vec<usize>> {
    if let Some((x, y, z)) = first_triple(q.n(), |x, y, z| {
        q.mul(x, q.mul(y, q.mul(x, z))) != q.mul(q.mul(x, q.mul(y, x)), z)
    }) {
        return Some(vec![x, y, z]);
    }
    aip_witness(q).map(|(x, y)| vec![x, y])
}

pub fn is_left_bruck(q: &Loop) -> bool {
    left_bruck_witness(q).is_none()
}

/// Whether the submagma generated by `x` is associative.
pub fn cyclic_submagma_is_associative(q: &Loop, x: usize) -> bool {
    let mut members = vec![x];
    let mut seen = vec![false; q.n()];
    seen[x] = true;
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            for (a, b) in [(members[i], members[j]), (members[j], members[i])] {
                let c = q.mul(a, b);
                if !std::mem::replace(&mut seen[c], true) {
                    members.push(c);
                }
            }
        }
        i += 1;
    }
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            let ab = q.mul(a, b);
            members.iter().all(|&c| q.mul(ab, c) == q.mul(a, q.mul(b, c)))
        })
    })
}

/// Least element whose cyclic submagma is not associative.
pub fn power_associativity_witness(q: &Loop) -> Option<usize> {
    (0..q.n())
        .into_par_iter()
        .find_first(|&x| !cyclic_submagma_is_associative(q, x))
}

pub fn is_power_associative(q: &Loop) -> bool {
    power_associativity_witness(q).is_none()
}

/// Least element whose powers differ between `g` and `q`, comparing
/// `x^k` for `k` up to the order of `x` in `g`.
pub fn powers_coincide_witness(g: &Group, q: &Loop) -> Result<Option<usize>> {
    if g.order() != q.n() {
        return Err(Error::SizeMismatch(g.order(), q.n()));
    }
    Ok((0..q.n()).into_par_iter().find_first(|&x| {
        let (mut in_g, mut in_q) = (0usize, 0usize);
        for _ in 0..=g.element_order(x) {
            in_g = g.mul(in_g, x);
            in_q = q.mul(in_q, x);
            if in_g != in_q {
                return true;
            }
        }
        false
    }))
}

pub fn powers_coincide(g: &Group, q: &Loop) -> Result<bool> {
    Ok(powers_coincide_witness(g, q)?.is_none())
}

/// Lexicographically least `(u, v)` with `φ(uv) ≠ φ(u)φ(v)`.
pub fn homomorphism_witness(q: &Loop, phi: &Permutation) -> Option<(usize, usize)> {
    let n = q.n();
    for u in 0..n {
        let pu = phi.apply(u);
        for v in 0..n {
            if phi.apply(q.mul(u, v)) != q.mul(pu, phi.apply(v)) {
                return Some((u, v));
            }
        }
    }
    None
}

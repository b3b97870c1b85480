use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::perm::{close, stabilizer_of, PermGroup, Permutation};
use crate::table::Loop;

/// One of the standard generators of the inner mapping group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum InnerGenerator {
    /// `L_{x,y} = L_x L_y L_{yx}⁻¹`
    L(usize, usize),
    /// `R_{x,y} = R_x R_y R_{xy}⁻¹`
    R(usize, usize),
    /// `T_x = R_x L_x⁻¹`
    T(usize),
}

impl InnerGenerator {
    /// Image of `u`, computed directly from the table.
    #[inline]
    pub fn apply(self, q: &Loop, u: usize) -> usize {
        match self {
            InnerGenerator::L(x, y) => q.ldiv(q.mul(y, x), q.mul(y, q.mul(x, u))),
            InnerGenerator::R(x, y) => q.rdiv(q.mul(q.mul(u, x), y), q.mul(x, y)),
            InnerGenerator::T(x) => q.ldiv(x, q.mul(u, x)),
        }
    }

    pub fn permutation(self, q: &Loop) -> Permutation {
        Permutation::from_images_unchecked((0..q.n()).map(|u| self.apply(q, u) as u32).collect())
    }

    pub fn describe(self, q: &Loop) -> String {
        match self {
            InnerGenerator::L(x, y) => format!("L[{}, {}]", q.label(x), q.label(y)),
            InnerGenerator::R(x, y) => format!("R[{}, {}]", q.label(x), q.label(y)),
            InnerGenerator::T(x) => format!("T[{}]", q.label(x)),
        }
    }
}

impl fmt::Display for InnerGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerGenerator::L(x, y) => write!(f, "L[{x},{y}]"),
            InnerGenerator::R(x, y) => write!(f, "R[{x},{y}]"),
            InnerGenerator::T(x) => write!(f, "T[{x}]"),
        }
    }
}

/// All `L_{x,y}`, `R_{x,y}` and `T_x`, materialized.
#[derive(Clone, Debug)]
pub struct InnerGenerators {
    n: usize,
    ls: Vec<Permutation>,
    rs: Vec<Permutation>,
    ts: Vec<Permutation>,
}

impl InnerGenerators {
    pub fn l(&self, x: usize, y: usize) -> &Permutation {
        &self.ls[x * self.n + y]
    }

    pub fn r(&self, x: usize, y: usize) -> &Permutation {
        &self.rs[x * self.n + y]
    }

    pub fn t(&self, x: usize) -> &Permutation {
        &self.ts[x]
    }

    pub fn all(&self) -> impl Iterator<Item = &Permutation> {
        self.ls.iter().chain(&self.rs).chain(&self.ts)
    }
}

pub fn inner_generators(q: &Loop) -> InnerGenerators {
    let n = q.n();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let ls: Vec<Permutation> = pairs()
        .map(|(x, y)| InnerGenerator::L(x, y).permutation(q))
        .collect();
    let rs: Vec<Permutation> = pairs()
        .map(|(x, y)| InnerGenerator::R(x, y).permutation(q))
        .collect();
    let ts: Vec<Permutation> = (0..n).map(|x| InnerGenerator::T(x).permutation(q)).collect();
    let gens = InnerGenerators { n, ls, rs, ts };
    assert!(
        gens.all().all(|p| p.fixes(0)),
        "inner generators must fix the identity"
    );
    gens
}

/// `Mlt(Q) = ⟨L_x, R_x⟩`, closed extensionally.
pub fn multiplication_group(q: &Loop, cap: usize) -> Result<PermGroup> {
    let gens: Vec<Permutation> = (0..q.n())
        .flat_map(|x| [q.left_translation(x), q.right_translation(x)])
        .collect();
    close(q.n(), &gens, cap)
}

/// `Inn(Q)`, the stabilizer of the identity in `Mlt(Q)`.
pub fn inner_mapping_group(q: &Loop, cap: usize) -> Result<PermGroup> {
    Ok(stabilizer_of(&multiplication_group(q, cap)?, 0))
}

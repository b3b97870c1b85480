use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::build_table;

use super::Group;

/// `H ⋊ F` for abelian `H` and `F`, with `F` acting on `H` by automorphisms.
///
/// Elements are pairs `(h, f)` stored at index `h + |H|·f`; the product is
/// `(h₁, f₁)(h₂, f₂) = (h₁ · f₁(h₂), f₁f₂)`.
#[derive(Clone, Debug)]
pub struct SemidirectSpec {
    h: Group,
    f: Group,
    action: Vec<Permutation>,
}

impl SemidirectSpec {
    /// Validates that `action[f]` is an automorphism of `h` for every `f` and
    /// that `f ↦ action[f]` is a homomorphism.
    pub fn new(h: Group, f: Group, action: Vec<Permutation>) -> Result<Self> {
        if !h.is_abelian() {
            return Err(Error::InvalidAction(format!("H = {} is not abelian", h.name())));
        }
        if !f.is_abelian() {
            return Err(Error::InvalidAction(format!("F = {} is not abelian", f.name())));
        }
        if action.len() != f.order() {
            return Err(Error::InvalidAction(format!(
                "{} action images for |F| = {}",
                action.len(),
                f.order()
            )));
        }
        let nh = h.order();
        for (i, a) in action.iter().enumerate() {
            if a.degree() != nh {
                return Err(Error::InvalidAction(format!(
                    "image of F-element {i} has degree {} ≠ |H| = {nh}",
                    a.degree()
                )));
            }
            for x in 0..nh {
                for y in 0..nh {
                    if a.apply(h.mul(x, y)) != h.mul(a.apply(x), a.apply(y)) {
                        return Err(Error::InvalidAction(format!(
                            "image of F-element {} is not a homomorphism at ({}, {})",
                            f.label(i),
                            h.label(x),
                            h.label(y)
                        )));
                    }
                }
            }
        }
        for f1 in 0..f.order() {
            for f2 in 0..f.order() {
                let composed = action[f2].then(&action[f1]);
                if composed != action[f.mul(f1, f2)] {
                    return Err(Error::InvalidAction(format!(
                        "action is not a homomorphism at ({}, {})",
                        f.label(f1),
                        f.label(f2)
                    )));
                }
            }
        }
        Ok(Self { h, f, action })
    }

    pub fn h(&self) -> &Group {
        &self.h
    }

    pub fn f(&self) -> &Group {
        &self.f
    }

    pub fn is_odd(&self) -> bool {
        self.h.order() % 2 == 1 && self.f.order() % 2 == 1
    }

    /// `f(h)`, written `h^f` in exponential notation.
    #[inline]
    pub fn act(&self, f: usize, h: usize) -> usize {
        self.action[f].apply(h)
    }

    pub fn action(&self, f: usize) -> &Permutation {
        &self.action[f]
    }

    pub fn order(&self) -> usize {
        self.h.order() * self.f.order()
    }

    #[inline]
    pub fn encode(&self, h: usize, f: usize) -> usize {
        h + self.h.order() * f
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x % self.h.order(), x / self.h.order())
    }

    /// Materializes `H ⋊ F` as a group carrying this decomposition.
    pub fn build(self, name: impl Into<String>) -> Result<Group> {
        let name = name.into();
        let spec = Arc::new(self);
        let s = Arc::clone(&spec);
        let table = build_table(spec.order(), name.clone(), move |x, y| {
            let (h1, f1) = s.decode(x);
            let (h2, f2) = s.decode(y);
            s.encode(s.h.mul(h1, s.act(f1, h2)), s.f.mul(f1, f2))
        })?;
        let labels = (0..spec.order())
            .map(|x| {
                let (h, f) = spec.decode(x);
                format!("({},{})", spec.h.label(h), spec.f.label(f))
            })
            .collect();
        Ok(Group::from_table(table)?
            .with_labels(labels)
            .with_semidirect(spec))
    }
}

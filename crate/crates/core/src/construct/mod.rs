//! Loops built from groups and from each other: `∘`, `⊕`, and the two
//! directions of the Bruck/Γ-loop correspondence.

mod closed_form;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::props;
use crate::table::{build_table, Loop};

pub use closed_form::{compare_with_engine, Exponent, SdClosedForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `x∘y = xy[y,x]^½`
    Circ,
    /// `x⊕y = (xy²x)^½`
    Oplus,
    /// Γ-loop to left Bruck loop.
    GammaToBruck,
    /// Left Bruck loop to Γ-loop.
    BruckToGamma,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Circ => "circ",
            Construction::Oplus => "oplus",
            Construction::GammaToBruck => "gamma-to-bruck",
            Construction::BruckToGamma => "bruck-to-gamma",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub source: String,
    pub construction: Construction,
}

impl Provenance {
    /// Comment line for `.tbl` export.
    pub fn comment(&self) -> String {
        format!("source: {}, construction: {}", self.source, self.construction)
    }
}

/// A loop together with the record of how it was produced.
#[derive(Clone, Debug)]
pub struct ConstructedLoop {
    lp: Loop,
    provenance: Provenance,
}

impl ConstructedLoop {
    pub fn as_loop(&self) -> &Loop {
        &self.lp
    }

    pub fn into_loop(self) -> Loop {
        self.lp
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

impl std::ops::Deref for ConstructedLoop {
    type Target = Loop;

    fn deref(&self) -> &Loop {
        &self.lp
    }
}

fn finish(
    n: usize,
    source_name: &str,
    labels: &std::sync::Arc<Vec<String>>,
    construction: Construction,
    cells: impl Fn(usize, usize) -> usize + Sync,
) -> Result<ConstructedLoop> {
    let name = format!("{construction}({source_name})");
    let table = build_table(n, name, cells)?;
    let lp = Loop::new(table)
        .map_err(|e| Error::Invariant(format!("{construction} of {source_name}: {e}")))?
        .with_labels(labels.clone());
    Ok(ConstructedLoop {
        lp,
        provenance: Provenance {
            source: source_name.to_string(),
            construction,
        },
    })
}

fn require_u2d(g: &Group) -> Result<Vec<usize>> {
    g.sqrt_table()
}

/// `(G, ∘)` with `x∘y = xy[y,x]^½`.
///
/// Checks on construction that the result is a commutative loop with the
/// automorphic inverse property whose powers coincide with those of `g`.
pub fn circ_loop(g: &Group) -> Result<ConstructedLoop> {
    let sqrt = require_u2d(g)?;
    let q = finish(g.order(), g.name(), g.labels(), Construction::Circ, |x, y| {
        g.mul(g.mul(x, y), sqrt[g.commutator(y, x)])
    })?;
    if let Some((x, y)) = props::commutativity_witness(&q) {
        return Err(Error::Invariant(format!(
            "circ of {} not commutative at ({}, {})",
            g.name(),
            g.label(x),
            g.label(y)
        )));
    }
    if let Some((x, y)) = props::aip_witness(&q) {
        return Err(Error::Invariant(format!(
            "circ of {} violates AIP at ({}, {})",
            g.name(),
            g.label(x),
            g.label(y)
        )));
    }
    if let Some(x) = props::powers_coincide_witness(g, &q)? {
        return Err(Error::Invariant(format!(
            "powers of {} differ in circ of {}",
            g.label(x),
            g.name()
        )));
    }
    Ok(q)
}

/// `(G, ⊕)` with `x⊕y = (xy²x)^½`.
pub fn oplus_loop(g: &Group) -> Result<ConstructedLoop> {
    let sqrt = require_u2d(g)?;
    finish(g.order(), g.name(), g.labels(), Construction::Oplus, |x, y| {
        let yy = g.mul(y, y);
        sqrt[g.mul(g.mul(x, yy), x)]
    })
}

/// Square root in an odd-order power-associative loop: `a^((m+1)/2)`, `m` the order of `a`.
pub fn loop_sqrt(q: &Loop, a: usize) -> Result<usize> {
    let m = q.element_order(a);
    if m.is_multiple_of(2) {
        return Err(Error::EvenOrder {
            element: q.label(a).to_string(),
            order: m,
        });
    }
    Ok(q.left_power(a, m.div_ceil(2)))
}

/// `x⊕y = (x⁻¹\(y²x))^½`, taken in the Γ-loop `q`.
pub fn bruck_from_gamma(q: &Loop) -> Result<ConstructedLoop> {
    let n = q.n();
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "{} has even order {n}",
            q.name()
        )));
    }
    if let Some(x) = props::power_associativity_witness(q) {
        return Err(Error::NotPowerAssociative(q.label(x).to_string()));
    }
    let inverse = (0..n)
        .map(|x| {
            q.two_sided_inverse(x).ok_or_else(|| {
                Error::Precondition(format!("{} has no two-sided inverse", q.label(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sqrt = (0..n).map(|a| loop_sqrt(q, a)).collect::<Result<Vec<_>>>()?;
    finish(n, q.name(), q.labels(), Construction::GammaToBruck, |x, y| {
        let yyx = q.mul(q.mul(y, y), x);
        sqrt[q.ldiv(inverse[x], yyx)]
    })
}

/// `x∘y = (1)L_x L_y [L_y, L_x]^½`, taken in the left Bruck loop `q`.
///
/// Each commutator permutation must have odd order; the first pair where it
/// does not is reported.
pub fn gamma_from_bruck(q: &Loop) -> Result<ConstructedLoop> {
    let n = q.n();
    let lefts: Vec<Permutation> = (0..n).map(|x| q.left_translation(x)).collect();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|y| {
                    let comm = lefts[y].commutator(&lefts[x]);
                    let root = comm.sqrt_odd().map_err(|_| {
                        Error::Precondition(format!(
                            "[L_{}, L_{}] has even order {} in {}",
                            q.label(y),
                            q.label(x),
                            comm.order(),
                            q.name()
                        ))
                    })?;
                    Ok(root.apply(q.mul(y, x)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    finish(n, q.name(), q.labels(), Construction::BruckToGamma, |x, y| rows[x][y])
}

/// `x^k` in a power-associative loop; negative `k` uses the two-sided inverse.
pub fn power(q: &Loop, x: usize, k: i64) -> Result<usize> {
    if !props::cyclic_submagma_is_associative(q, x) {
        return Err(Error::NotPowerAssociative(q.label(x).to_string()));
    }
    let base = if k < 0 {
        q.two_sided_inverse(x)
            .ok_or_else(|| Error::NotPowerAssociative(q.label(x).to_string()))?
    } else {
        x
    };
    Ok(q.left_power(base, k.unsigned_abs() as usize))
}

#[cfg(test)]
mod tests;

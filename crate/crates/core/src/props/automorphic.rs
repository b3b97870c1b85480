use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::table::Loop;

use super::inner::{inner_mapping_group, InnerGenerator};
use super::homomorphism_witness;

pub const DEFAULT_PRESCREEN_PROBES: usize = 64;
/// Largest order scanned exhaustively unless forced; the scan costs about `n⁴`.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 243;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutomorphicOptions {
    pub prescreen_probes: usize,
    /// Seeds only the prescreen probe order.
    pub seed: u64,
    pub exhaustive_cap: usize,
    /// Scan exhaustively regardless of `exhaustive_cap`.
    pub force_exhaustive: bool,
}

impl Default for AutomorphicOptions {
    fn default() -> Self {
        Self {
            prescreen_probes: DEFAULT_PRESCREEN_PROBES,
            seed: 0,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            force_exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AutomorphicVerdict {
    /// Every standard generator is an automorphism (exhaustive).
    Automorphic,
    NotAutomorphic {
        generator: InnerGenerator,
        u: usize,
        v: usize,
        /// False when only the prescreen saw the failure.
        exhaustive: bool,
    },
    /// Beyond the exhaustive cap with no prescreen failure; inconclusive.
    PrescreenPass { probes: usize },
}

impl AutomorphicVerdict {
    pub fn is_automorphic(&self) -> Option<bool> {
        match self {
            AutomorphicVerdict::Automorphic => Some(true),
            AutomorphicVerdict::NotAutomorphic { .. } => Some(false),
            AutomorphicVerdict::PrescreenPass { .. } => None,
        }
    }

    /// True for verdicts settled by the exhaustive scan.
    pub fn is_exhaustive(&self) -> bool {
        match self {
            AutomorphicVerdict::Automorphic => true,
            AutomorphicVerdict::NotAutomorphic { exhaustive, .. } => *exhaustive,
            AutomorphicVerdict::PrescreenPass { .. } => false,
        }
    }

    pub fn describe(&self, q: &Loop) -> String {
        match self {
            AutomorphicVerdict::Automorphic => "automorphic".into(),
            AutomorphicVerdict::NotAutomorphic {
                generator,
                u,
                v,
                exhaustive,
            } => format!(
                "not automorphic: {} fails on ({}, {}){}",
                generator.describe(q),
                q.label(*u),
                q.label(*v),
                if *exhaustive { "" } else { " [prescreen]" }
            ),
            AutomorphicVerdict::PrescreenPass { probes } => {
                format!("prescreen-pass (inconclusive, {probes} probes)")
            }
        }
    }
}

/// Generators scanned: `L_{x,y}` only for commutative loops (there `R_{x,y} =
/// L_{x,y}` and `T_x = 1`), otherwise all three families.
fn generator_families(q: &Loop) -> Vec<fn(usize, usize) -> Option<InnerGenerator>> {
    let l: fn(usize, usize) -> Option<InnerGenerator> = |x, y| Some(InnerGenerator::L(x, y));
    if q.is_commutative() {
        vec![l]
    } else {
        vec![
            l,
            |x, y| Some(InnerGenerator::R(x, y)),
            |x, y| (y == 0).then_some(InnerGenerator::T(x)),
        ]
    }
}

fn prescreen(q: &Loop, opts: &AutomorphicOptions) -> Option<(InnerGenerator, usize, usize)> {
    let n = q.n();
    let families = generator_families(q);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.prescreen_probes {
        let family = families[rng.gen_range(0..families.len())];
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let Some(gen) = family(x, y).or_else(|| family(x, 0)) else {
            continue;
        };
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if gen.apply(q, q.mul(u, v)) != q.mul(gen.apply(q, u), gen.apply(q, v)) {
            return Some((gen, u, v));
        }
    }
    None
}

fn exhaustive(q: &Loop) -> Option<(InnerGenerator, usize, usize)> {
    let n = q.n();
    for family in generator_families(q) {
        let found = (0..n).into_par_iter().find_map_first(|x| {
            (0..n).find_map(|y| {
                let gen = family(x, y)?;
                let phi = gen.permutation(q);
                if phi.is_identity() {
                    return None;
                }
                homomorphism_witness(q, &phi).map(|(u, v)| (gen, u, v))
            })
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Whether `Inn(q) ≤ Aut(q)`, by testing that each standard generator is a
/// homomorphism. A random prescreen runs first; within the exhaustive cap a
/// prescreen failure is re-derived by the exhaustive scan so the reported
/// witness is the least one.
pub fn is_automorphic(q: &Loop, opts: &AutomorphicOptions) -> AutomorphicVerdict {
    let within_cap = opts.force_exhaustive || q.n() <= opts.exhaustive_cap;
    let early = prescreen(q, opts);
    if !within_cap {
        return match early {
            Some((generator, u, v)) => AutomorphicVerdict::NotAutomorphic {
                generator,
                u,
                v,
                exhaustive: false,
            },
            None => AutomorphicVerdict::PrescreenPass {
                probes: opts.prescreen_probes,
            },
        };
    }
    match exhaustive(q) {
        None => {
            assert!(early.is_none(), "prescreen found a failure the exhaustive scan missed");
            AutomorphicVerdict::Automorphic
        }
        Some((generator, u, v)) => AutomorphicVerdict::NotAutomorphic {
            generator,
            u,
            v,
            exhaustive: true,
        },
    }
}

/// Oracle: closes `Inn(q)` extensionally and tests every member.
pub fn automorphic_by_inn_closure(q: &Loop, cap: usize) -> Result<bool> {
    let inn = inner_mapping_group(q, cap)?;
    Ok(inn
        .elements()
        .par_iter()
        .all(|phi| homomorphism_witness(q, phi).is_none()))
}

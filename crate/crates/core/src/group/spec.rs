use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tbl;

use super::families::semidirect_cyclic;
use super::{cyclic, direct_product, heisenberg, unitriangular, wreath_cyclic, Group, UnitriangularGroup};

/// A group family in the CLI mini-language:
/// `cyclic:m | dp:spec,spec | sd:q:p:a | heis:p | ut:k:p | wr:p | file:PATH`.
///
/// Nested direct products are parenthesized: `dp:(dp:cyclic:3,cyclic:3),cyclic:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Direct(Vec<GroupSpec>),
    Semidirect { q: usize, p: usize, a: usize },
    Heisenberg(usize),
    Unitriangular { k: usize, p: usize },
    Wreath(usize),
    File(PathBuf),
}

fn parse_num(token: &str) -> Result<usize> {
    token.trim().parse().map_err(|_| Error::SpecParse {
        token: token.to_string(),
        reason: "expected a non-negative integer".into(),
    })
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::SpecParse {
                        token: s.to_string(),
                        reason: "unbalanced ')'".into(),
                    });
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::SpecParse {
            token: s.to_string(),
            reason: "unbalanced '('".into(),
        });
    }
    parts.push(&s[start..]);
    Ok(parts)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            Some(inner) => inner.trim(),
            None => s,
        };
        let (head, rest) = s.split_once(':').ok_or_else(|| Error::SpecParse {
            token: s.to_string(),
            reason: "expected FAMILY:ARGS".into(),
        })?;
        let args = |count: usize| -> Result<Vec<usize>> {
            let toks: Vec<&str> = rest.split(':').collect();
            if toks.len() != count {
                return Err(Error::SpecParse {
                    token: s.to_string(),
                    reason: format!("{head} takes {count} argument(s)"),
                });
            }
            toks.into_iter().map(parse_num).collect()
        };
        match head {
            "cyclic" => {
                let m = args(1)?[0];
                if m == 0 {
                    return Err(Error::SpecParse {
                        token: rest.to_string(),
                        reason: "order must be positive".into(),
                    });
                }
                Ok(GroupSpec::Cyclic(m))
            }
            "dp" => {
                let parts = split_top_level(rest)?
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<Vec<_>>>()?;
                if parts.len() < 2 {
                    return Err(Error::SpecParse {
                        token: s.to_string(),
                        reason: "dp needs at least two factors".into(),
                    });
                }
                Ok(GroupSpec::Direct(parts))
            }
            "sd" => {
                let v = args(3)?;
                Ok(GroupSpec::Semidirect { q: v[0], p: v[1], a: v[2] })
            }
            "heis" => Ok(GroupSpec::Heisenberg(args(1)?[0])),
            "ut" => {
                let v = args(2)?;
                Ok(GroupSpec::Unitriangular { k: v[0], p: v[1] })
            }
            "wr" => Ok(GroupSpec::Wreath(args(1)?[0])),
            "file" => {
                if rest.is_empty() {
                    return Err(Error::SpecParse {
                        token: s.to_string(),
                        reason: "missing path".into(),
                    });
                }
                Ok(GroupSpec::File(PathBuf::from(rest)))
            }
            other => Err(Error::SpecParse {
                token: other.to_string(),
                reason: "unknown family (cyclic, dp, sd, heis, ut, wr, file)".into(),
            }),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupSpec::Direct(parts) => {
                write!(f, "dp:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    match p {
                        GroupSpec::Direct(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            GroupSpec::Semidirect { q, p, a } => write!(f, "sd:{q}:{p}:{a}"),
            GroupSpec::Heisenberg(p) => write!(f, "heis:{p}"),
            GroupSpec::Unitriangular { k, p } => write!(f, "ut:{k}:{p}"),
            GroupSpec::Wreath(p) => write!(f, "wr:{p}"),
            GroupSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl GroupSpec {
    /// Group order without building anything, where the family determines it.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(m) => Some(*m),
            GroupSpec::Direct(parts) => parts
                .iter()
                .try_fold(1usize, |acc, p| p.order().and_then(|o| acc.checked_mul(o))),
            GroupSpec::Semidirect { q, p, .. } => q.checked_mul(*p),
            GroupSpec::Heisenberg(p) => p.checked_pow(3),
            GroupSpec::Unitriangular { k, p } => p.checked_pow((k * k.saturating_sub(1) / 2) as u32),
            GroupSpec::Wreath(p) => p.checked_pow(*p as u32 + 1),
            GroupSpec::File(_) => None,
        }
    }

    /// Whether the family is split metabelian by construction: abelian,
    /// semidirect of abelian by abelian, or a direct product of such.
    pub fn is_split_metabelian_family(&self) -> bool {
        match self {
            GroupSpec::Cyclic(_)
            | GroupSpec::Semidirect { .. }
            | GroupSpec::Heisenberg(_)
            | GroupSpec::Wreath(_) => true,
            GroupSpec::Direct(parts) => parts.iter().all(GroupSpec::is_split_metabelian_family),
            // UT(4,p): the block with rows {0,1} and columns {2,3} is a normal
            // abelian subgroup, complemented by the block-diagonal Z_p².
            GroupSpec::Unitriangular { k, .. } => *k <= 4,
            GroupSpec::File(_) => false,
        }
    }
}

/// A constructed group: materialized, or functional when beyond the table cap.
#[derive(Clone, Debug)]
pub enum Built {
    Table(Group),
    Functional(UnitriangularGroup),
}

impl Built {
    pub fn into_table(self) -> Result<Group> {
        match self {
            Built::Table(g) => Ok(g),
            Built::Functional(g) => Err(Error::TableCap {
                order: g.order_checked().unwrap_or(usize::MAX),
                cap: crate::table::table_cap(),
            }),
        }
    }
}

fn check_cap(spec: &GroupSpec, cap: usize) -> Result<()> {
    match spec.order() {
        Some(order) if order > cap => Err(Error::TableCap { order, cap }),
        _ => Ok(()),
    }
}

fn build_table_group(spec: &GroupSpec, cap: usize) -> Result<Group> {
    check_cap(spec, cap)?;
    let name = spec.to_string();
    let g = match spec {
        GroupSpec::Cyclic(m) => cyclic(*m)?,
        GroupSpec::Direct(parts) => {
            let groups = parts
                .iter()
                .map(|p| build_table_group(p, cap))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&groups)?
        }
        GroupSpec::Semidirect { q, p, a } => semidirect_cyclic(*q, *p, *a)?,
        GroupSpec::Heisenberg(p) => heisenberg(*p)?,
        GroupSpec::Unitriangular { k, p } => unitriangular(*k, *p, cap)?,
        GroupSpec::Wreath(p) => wreath_cyclic(*p)?,
        GroupSpec::File(path) => {
            let imported = tbl::read_path(path)?;
            if imported.table.n() > cap {
                return Err(Error::TableCap {
                    order: imported.table.n(),
                    cap,
                });
            }
            Group::from_table_normalized(imported.table)?
        }
    };
    Ok(g.with_name(name))
}

/// Builds the group a spec names, materializing it when its order is within `cap`.
pub fn construct(spec: &GroupSpec, cap: usize) -> Result<Built> {
    match spec {
        GroupSpec::Unitriangular { k, p } if spec.order().is_none_or(|o| o > cap) => {
            Ok(Built::Functional(UnitriangularGroup::new(*k, *p)?))
        }
        _ => build_table_group(spec, cap).map(Built::Table),
    }
}

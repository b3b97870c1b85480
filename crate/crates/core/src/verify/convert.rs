use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::construct::{
    bruck_from_gamma, circ_loop, gamma_from_bruck, oplus_loop, ConstructedLoop, Construction,
};
use crate::error::{Error, Result};
use crate::group::{construct, Group, GroupSpec};
use crate::perm::Permutation;
use crate::props::{self, render};
use crate::table::{classify, Classification, Loop};
use crate::tbl;

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circ" => Ok(Construction::Circ),
            "oplus" => Ok(Construction::Oplus),
            "gamma-to-bruck" => Ok(Construction::GammaToBruck),
            "bruck-to-gamma" => Ok(Construction::BruckToGamma),
            other => Err(Error::SpecParse {
                token: other.to_string(),
                reason: "expected circ, oplus, gamma-to-bruck or bruck-to-gamma".into(),
            }),
        }
    }
}

/// A conversion input: a `.tbl` file or a group spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvertInput {
    Table(PathBuf),
    Spec(GroupSpec),
}

impl ConvertInput {
    /// Existing files and `*.tbl` paths are tables; anything else must parse as a spec.
    pub fn parse(s: &str) -> Result<Self> {
        let path = Path::new(s);
        if path.is_file() || path.extension().is_some_and(|e| e == "tbl") {
            Ok(ConvertInput::Table(path.to_path_buf()))
        } else {
            s.parse().map(ConvertInput::Spec)
        }
    }

    fn load_loop(&self, cap: usize) -> Result<Loop> {
        match self {
            ConvertInput::Table(path) => {
                let imported = tbl::read_path(path)?;
                let name = imported.table.name().to_string();
                let name = if name.is_empty() { path.display().to_string() } else { name };
                Ok(Loop::new(imported.table)?.with_name(name))
            }
            ConvertInput::Spec(spec) => Ok(self.load_group(cap)?.as_loop().clone().with_name(spec.to_string())),
        }
    }

    fn load_group(&self, cap: usize) -> Result<Group> {
        match self {
            ConvertInput::Table(_) => {
                let lp = self.load_loop(cap)?;
                let name = lp.name().to_string();
                Ok(Group::from_table(lp.table().clone())?.with_name(name))
            }
            ConvertInput::Spec(spec) => construct(spec, cap)?.into_table(),
        }
    }
}

fn require_gamma(q: &Loop) -> Result<()> {
    let v = props::check_gamma_axioms(q);
    for (name, status) in [
        ("commutativity", &v.commutative),
        ("automorphic inverse property", &v.aip),
        ("L_x L_x⁻¹ = L_x⁻¹ L_x", &v.inverse_translations_commute),
        ("P_x P_y P_x = P_(y P_x)", &v.p_map_identity),
    ] {
        if !status.holds() {
            return Err(Error::Precondition(format!(
                "{} is not a Γ-loop: {name} {}",
                q.name(),
                status.describe(q)
            )));
        }
    }
    Ok(())
}

fn require_left_bruck(q: &Loop) -> Result<()> {
    match props::left_bruck_witness(q) {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "{} is not a left Bruck loop: x(y·xz) = (x·yx)z with AIP fails at {}",
            q.name(),
            render(q, &w)
        ))),
    }
}

/// Builds the loop `direction` produces from `input` and writes it to `out`
/// with a provenance comment.
pub fn cmd_convert(input: &ConvertInput, direction: Construction, out: &Path, cap: usize) -> Result<ConstructedLoop> {
    let result = match direction {
        Construction::Circ => circ_loop(&input.load_group(cap)?)?,
        Construction::Oplus => oplus_loop(&input.load_group(cap)?)?,
        Construction::GammaToBruck => {
            let q = input.load_loop(cap)?;
            require_gamma(&q)?;
            bruck_from_gamma(&q)?
        }
        Construction::BruckToGamma => {
            let q = input.load_loop(cap)?;
            require_left_bruck(&q)?;
            gamma_from_bruck(&q)?
        }
    };
    tbl::write_path(out, result.table(), &[result.provenance().comment()])?;
    Ok(result)
}

/// The `.tbl` text for the group `spec` names.
pub fn cmd_export(spec: &GroupSpec, cap: usize) -> Result<String> {
    let g = construct(spec, cap)?.into_table()?;
    Ok(tbl::to_string(g.table(), &[]))
}

/// What `import` learned about a table file.
#[derive(Clone, Debug)]
pub struct ImportSummary {
    pub name: String,
    pub order: usize,
    pub relabel: Permutation,
    pub classification: Classification,
    /// `Ok` with group facts, or the reason the table is not a group.
    pub group: std::result::Result<String, String>,
}

impl ImportSummary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name: {}", self.name).unwrap();
        writeln!(out, "order: {}", self.order).unwrap();
        let c = &self.classification;
        let kind = if c.is_loop {
            "loop"
        } else if c.is_latin {
            "quasigroup"
        } else {
            "magma"
        };
        writeln!(out, "classification: {kind}").unwrap();
        if let Some(w) = &c.witness {
            writeln!(out, "witness: {w}").unwrap();
        }
        if !self.relabel.is_identity() {
            writeln!(out, "identity normalized by relabelling {}", self.relabel).unwrap();
        }
        match &self.group {
            Ok(facts) => writeln!(out, "group: {facts}").unwrap(),
            Err(why) => writeln!(out, "group: no ({why})").unwrap(),
        }
        out
    }
}

pub fn cmd_import(path: &Path) -> Result<ImportSummary> {
    let imported = tbl::read_path(path)?;
    let table = imported.table;
    let classification = classify(&table);
    let group = if classification.is_loop {
        match Group::from_table(table.clone()) {
            Ok(g) => Ok(format!(
                "yes, {}abelian, class {}, {}metabelian",
                if g.is_abelian() { "" } else { "non" },
                g.nilpotency_class(),
                if g.is_metabelian() { "" } else { "not " }
            )),
            Err(e) => Err(e.to_string()),
        }
    } else {
        Err("not a loop".to_string())
    };
    Ok(ImportSummary {
        name: table.name().to_string(),
        order: table.n(),
        relabel: imported.relabel,
        classification,
        group,
    })
}

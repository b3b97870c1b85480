use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::circ_loop;
use crate::error::{Error, Result};
use crate::group::{construct, Built, Group, GroupSpec, NilpotencyClass};
use crate::props::{self, is_automorphic, render, AutomorphicOptions, AutomorphicVerdict};
use crate::tbl;

use super::report::{Environment, Format};
use super::{builtin_in_range, VerifyOptions, FORMAT_VERSION};

pub const COUNTEREXAMPLE_FLAG: &str = "CONJECTURE-COUNTEREXAMPLE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurveySource {
    Builtin,
    /// Every `*.tbl` file in the directory, non-recursively.
    Directory(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum RowStatus {
    Checked,
    /// Not surveyed: even order, or beyond the table cap.
    Skipped(String),
    /// The source could not be read or is not a group.
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircSummary {
    #[serde(rename = "loop")]
    pub is_loop: bool,
    pub gamma: bool,
    pub associative: bool,
    pub moufang: bool,
    /// `true`, `false`, or `prescreen-pass (inconclusive)`.
    pub automorphic: String,
    pub automorphic_exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub spec: String,
    pub order: Option<usize>,
    pub status: RowStatus,
    pub uniquely_2_divisible: Option<bool>,
    pub nilpotency_class: Option<NilpotencyClass>,
    pub metabelian: Option<bool>,
    pub two_engel: Option<bool>,
    pub circ: Option<CircSummary>,
    pub flag: Option<String>,
    pub witnesses: Vec<String>,
}

impl SurveyRow {
    fn bare(spec: String, order: Option<usize>, status: RowStatus) -> Self {
        Self {
            spec,
            order,
            status,
            uniquely_2_divisible: None,
            nilpotency_class: None,
            metabelian: None,
            two_engel: None,
            circ: None,
            flag: None,
            witnesses: Vec::new(),
        }
    }

    pub fn is_flagged(&self) -> bool {
        self.flag.is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub rows: usize,
    pub checked: usize,
    pub skipped: usize,
    pub errors: usize,
    pub metabelian: usize,
    pub automorphic: usize,
    pub inconclusive: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub format_version: u32,
    pub orders: (usize, usize),
    pub source: String,
    pub environment: Environment,
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

impl SurveyReport {
    /// Nonzero exactly when some row carries the counterexample flag.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.flagged > 0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("survey serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let yn = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let mut out = String::new();
        writeln!(
            out,
            "survey: orders {}..{}, source {}, seed {}, exhaustive cap {}{}",
            self.orders.0,
            self.orders.1,
            self.source,
            self.environment.seed,
            self.environment.exhaustive_cap,
            if self.environment.force_exhaustive { " (forced)" } else { "" }
        )
        .unwrap();
        writeln!(
            out,
            "{:<34} {:>5} {:>4} {:>14} {:>5} {:>7} | {:>4} {:>5} {:>5} {:>7} {:<12} flag",
            "spec", "order", "u2d", "class", "meta", "2-engel", "loop", "gamma", "assoc", "moufang", "automorphic"
        )
        .unwrap();
        for r in &self.rows {
            let order = r.order.map_or_else(|| "?".into(), |o| o.to_string());
            match &r.status {
                RowStatus::Checked => {}
                RowStatus::Skipped(why) => {
                    writeln!(out, "{:<34} {:>5} skipped: {why}", r.spec, order).unwrap();
                    continue;
                }
                RowStatus::Error(why) => {
                    writeln!(out, "{:<34} {:>5} error: {why}", r.spec, order).unwrap();
                    continue;
                }
            }
            let class = r.nilpotency_class.map_or_else(|| "-".into(), |c| c.to_string());
            let circ = r.circ.as_ref().expect("checked rows have circ data");
            writeln!(
                out,
                "{:<34} {:>5} {:>4} {:>14} {:>5} {:>7} | {:>4} {:>5} {:>5} {:>7} {:<12} {}",
                r.spec,
                order,
                yn(r.uniquely_2_divisible),
                class,
                yn(r.metabelian),
                yn(r.two_engel),
                yn(Some(circ.is_loop)),
                yn(Some(circ.gamma)),
                yn(Some(circ.associative)),
                yn(Some(circ.moufang)),
                circ.automorphic,
                r.flag.as_deref().unwrap_or("-")
            )
            .unwrap();
            for w in &r.witnesses {
                writeln!(out, "    {w}").unwrap();
            }
        }
        let s = &self.summary;
        writeln!(
            out,
            "summary: {} rows, {} checked, {} skipped, {} errors; {} metabelian, {} automorphic, {} inconclusive; {} flagged",
            s.rows, s.checked, s.skipped, s.errors, s.metabelian, s.automorphic, s.inconclusive, s.flagged
        )
        .unwrap();
        out
    }
}

fn survey_group(spec: String, g: &Group, opts: &AutomorphicOptions) -> SurveyRow {
    let n = g.order();
    let mut row = SurveyRow::bare(spec, Some(n), RowStatus::Checked);
    if !g.is_uniquely_2_divisible() {
        row.uniquely_2_divisible = Some(false);
        row.status = RowStatus::Skipped(format!("even order {n}"));
        return row;
    }
    row.uniquely_2_divisible = Some(true);
    row.nilpotency_class = Some(g.nilpotency_class());
    let metabelian = g.is_metabelian();
    row.metabelian = Some(metabelian);
    let engel = g.two_engel_witness();
    row.two_engel = Some(engel.is_none());
    if let Some((x, y)) = engel {
        row.witnesses.push(format!("[x,y,y] ≠ 1 at ({}, {})", g.label(x), g.label(y)));
    }
    let q = match circ_loop(g) {
        Ok(q) => q,
        Err(e) => {
            row.status = RowStatus::Error(format!("circ construction failed: {e}"));
            return row;
        }
    };
    let gamma = props::check_gamma_axioms(&q).all_hold();
    let assoc = q.table().associativity_witness();
    if let Some((x, y, z)) = assoc {
        row.witnesses.push(format!("∘ nonassociative at {}", render(&q, &[x, y, z])));
    }
    let verdict = is_automorphic(&q, opts);
    let automorphic = match &verdict {
        AutomorphicVerdict::PrescreenPass { .. } => "inconclusive".to_string(),
        v => v.is_automorphic().expect("settled verdict").to_string(),
    };
    if let AutomorphicVerdict::NotAutomorphic { .. } = verdict {
        row.witnesses.push(verdict.describe(&q));
    }
    if verdict.is_exhaustive() && verdict.is_automorphic() != Some(metabelian) {
        row.flag = Some(COUNTEREXAMPLE_FLAG.to_string());
    }
    row.circ = Some(CircSummary {
        is_loop: true,
        gamma,
        associative: assoc.is_none(),
        moufang: props::is_moufang(&q),
        automorphic,
        automorphic_exhaustive: verdict.is_exhaustive(),
    });
    row
}

fn survey_spec(spec: &GroupSpec, opts: &VerifyOptions) -> SurveyRow {
    let name = spec.to_string();
    match construct(spec, opts.table_cap) {
        Ok(Built::Table(g)) => survey_group(name, &g, &opts.automorphic),
        Ok(Built::Functional(g)) => {
            let mut row = SurveyRow::bare(
                name,
                g.order_checked(),
                RowStatus::Skipped(format!("beyond table cap {}", opts.table_cap)),
            );
            if let Some((a, b)) = g.metabelian_refutation() {
                row.metabelian = Some(false);
                row.witnesses
                    .push(format!("commutators {} and {} do not commute", g.label(&a), g.label(&b)));
            }
            row
        }
        Err(e) => SurveyRow::bare(name, spec.order(), RowStatus::Error(e.to_string())),
    }
}

fn survey_file(path: &Path, lo: usize, hi: usize, opts: &VerifyOptions) -> Option<SurveyRow> {
    let name = format!("file:{}", path.display());
    let imported = match tbl::read_path(path) {
        Ok(i) => i,
        Err(e) => return Some(SurveyRow::bare(name, None, RowStatus::Error(e.to_string()))),
    };
    let n = imported.table.n();
    if !(lo..=hi).contains(&n) {
        return None;
    }
    if n > opts.table_cap {
        return Some(SurveyRow::bare(
            name,
            Some(n),
            RowStatus::Skipped(format!("beyond table cap {}", opts.table_cap)),
        ));
    }
    Some(match Group::from_table_normalized(imported.table) {
        Ok(g) => survey_group(name, &g, &opts.automorphic),
        Err(e) => SurveyRow::bare(name, Some(n), RowStatus::Error(e.to_string())),
    })
}

fn tbl_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().is_some_and(|e| e == "tbl") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Tabulates the automorphic/metabelian biconditional over a group source.
///
/// A row is flagged only when an exhaustive automorphicity verdict disagrees
/// with metabelian-ness. Rows are ordered by `(order, spec)`.
pub fn cmd_survey(lo: usize, hi: usize, source: &SurveySource, opts: &VerifyOptions) -> Result<SurveyReport> {
    let mut rows: Vec<SurveyRow> = match source {
        SurveySource::Builtin => builtin_in_range(lo, hi)
            .par_iter()
            .map(|spec| survey_spec(spec, opts))
            .collect(),
        SurveySource::Directory(dir) => tbl_files(dir)?
            .par_iter()
            .filter_map(|path| survey_file(path, lo, hi, opts))
            .collect(),
    };
    rows.sort_by(|a, b| (a.order, &a.spec).cmp(&(b.order, &b.spec)));
    let mut summary = SurveySummary {
        rows: rows.len(),
        ..SurveySummary::default()
    };
    for r in &rows {
        match r.status {
            RowStatus::Checked => summary.checked += 1,
            RowStatus::Skipped(_) => summary.skipped += 1,
            RowStatus::Error(_) => summary.errors += 1,
        }
        summary.metabelian += usize::from(r.metabelian == Some(true));
        if let Some(c) = &r.circ {
            summary.automorphic += usize::from(c.automorphic == "true");
            summary.inconclusive += usize::from(!c.automorphic_exhaustive);
        }
        summary.flagged += usize::from(r.is_flagged());
    }
    Ok(SurveyReport {
        format_version: FORMAT_VERSION,
        orders: (lo, hi),
        source: match source {
            SurveySource::Builtin => "builtin".into(),
            SurveySource::Directory(d) => d.display().to_string(),
        },
        environment: opts.environment(),
        rows,
        summary,
    })
}

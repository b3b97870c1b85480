use std::fmt::Write as _;

use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Observed verdict matches the theorem's prediction.
    Pass,
    /// Observed verdict contradicts a theorem.
    Fail,
    /// Not run: precondition not met or over a cap.
    Skipped,
    /// Recorded without a binding prediction (conjecture territory).
    Observed,
}

impl Outcome {
    fn tag(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
            Outcome::Observed => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// The theorem or lemma the check reproduces, or `plumbing`.
    pub anchor: String,
    pub outcome: Outcome,
    pub expected: String,
    pub observed: String,
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subject {
    pub spec: String,
    pub order: Option<usize>,
    /// False when the group is beyond the table cap and held functionally.
    pub materialized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Environment {
    pub table_cap: usize,
    pub exhaustive_cap: usize,
    pub force_exhaustive: bool,
    pub prescreen_probes: usize,
    pub seed: u64,
    /// How loop nilpotency is defined in this report.
    pub loop_nilpotency: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub subject: Subject,
    pub environment: Environment,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (text, json)")),
        }
    }
}

impl Report {
    pub fn all_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    /// 0 when every verdict matches its prediction, 1 on any inconsistent
    /// verdict, 2 when the subject was beyond the table cap.
    pub fn exit_code(&self) -> i32 {
        if !self.all_consistent() {
            1
        } else if !self.subject.materialized {
            2
        } else {
            0
        }
    }

    /// The report with timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                let order = self
                    .subject
                    .order
                    .map_or_else(|| "?".to_string(), |o| o.to_string());
                writeln!(
                    out,
                    "subject: {} (order {order}{})",
                    self.subject.spec,
                    if self.subject.materialized { "" } else { ", functional" }
                )
                .unwrap();
                let e = &self.environment;
                writeln!(
                    out,
                    "environment: table_cap={} exhaustive_cap={}{} prescreen_probes={} seed={}",
                    e.table_cap,
                    e.exhaustive_cap,
                    if e.force_exhaustive { " (forced)" } else { "" },
                    e.prescreen_probes,
                    e.seed
                )
                .unwrap();
                writeln!(out, "loop nilpotency: {}", e.loop_nilpotency).unwrap();
                for c in &self.checks {
                    write!(
                        out,
                        "[{}] {:<22} {:<34} expected: {}; observed: {}",
                        c.outcome.tag(),
                        c.id,
                        c.anchor,
                        c.expected,
                        c.observed
                    )
                    .unwrap();
                    if let Some(w) = &c.witness {
                        write!(out, "; witness: {w}").unwrap();
                    }
                    writeln!(out, " ({} ms)", c.millis).unwrap();
                }
                let fails = self.checks.iter().filter(|c| c.outcome == Outcome::Fail).count();
                writeln!(
                    out,
                    "result: {}",
                    if fails == 0 {
                        "all verdicts consistent".to_string()
                    } else {
                        format!("{fails} inconsistent verdict(s)")
                    }
                )
                .unwrap();
                out
            }
        }
    }
}

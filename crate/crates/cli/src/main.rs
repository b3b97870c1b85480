use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use gamma_forge::group::GroupSpec;
use gamma_forge::props::AutomorphicOptions;
use gamma_forge::table::table_cap;
use gamma_forge::verify::{
    cmd_convert, cmd_export, cmd_import, cmd_survey, cmd_verify, CheckId, ConvertInput, Format,
    SurveySource, VerifyOptions,
};

/// Builds loops from odd-order groups and checks the theorems relating them.
#[derive(Parser)]
#[command(name = "gamma-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct AutomorphicArgs {
    /// Seed for the randomized prescreen probe order (not authoritative).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scan automorphicity exhaustively even beyond the default cap.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value = "text")]
    format: Format,
}

impl AutomorphicArgs {
    fn options(&self, checks: Option<&str>) -> Result<VerifyOptions> {
        Ok(VerifyOptions {
            checks: checks.map(CheckId::parse_list).transpose()?,
            automorphic: AutomorphicOptions {
                seed: self.seed,
                force_exhaustive: self.exhaustive,
                ..AutomorphicOptions::default()
            },
            table_cap: table_cap(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the theorem checks on one group.
    Verify {
        /// Group spec, e.g. sd:7:3:2, heis:3, dp:cyclic:3,cyclic:9, file:PATH.
        spec: String,
        /// Comma-separated check ids, or `all`.
        #[arg(long)]
        checks: Option<String>,
        #[command(flatten)]
        common: AutomorphicArgs,
    },
    /// Tabulate automorphic vs metabelian over a range of orders.
    Survey {
        /// Inclusive order range `A..B`.
        #[arg(long)]
        orders: String,
        /// Directory of .tbl files to survey instead of the builtin catalog.
        #[arg(long)]
        source: Option<PathBuf>,
        #[command(flatten)]
        common: AutomorphicArgs,
    },
    /// Build a loop from a table file or spec and write it as a table.
    Convert {
        input: String,
        /// circ, oplus, gamma-to-bruck or bruck-to-gamma.
        #[arg(long)]
        direction: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the Cayley table of a group spec.
    Export {
        spec: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a table file and classify it.
    Import { path: PathBuf },
}

fn parse_orders(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("orders must look like A..B, got `{s}`"))?;
    let lo = a.trim().parse().with_context(|| format!("bad lower bound `{a}`"))?;
    let hi = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .with_context(|| format!("bad upper bound `{b}`"))?;
    if lo > hi {
        return Err(anyhow!("empty order range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { spec, checks, common } => {
            let spec: GroupSpec = spec.parse()?;
            let opts = common.options(checks.as_deref())?;
            let report = cmd_verify(&spec, &opts)?;
            print!("{}", report.render(common.format));
            Ok(report.exit_code() as u8)
        }
        Command::Survey { orders, source, common } => {
            let (lo, hi) = parse_orders(&orders)?;
            let source = source.map_or(SurveySource::Builtin, SurveySource::Directory);
            let report = cmd_survey(lo, hi, &source, &common.options(None)?)?;
            print!("{}", report.render(common.format));
            Ok(report.exit_code() as u8)
        }
        Command::Convert { input, direction, out } => {
            let input = ConvertInput::parse(&input)?;
            let q = cmd_convert(&input, direction.parse()?, &out, table_cap())?;
            println!(
                "wrote {} ({} elements, {})",
                out.display(),
                q.n(),
                q.provenance().comment()
            );
            Ok(0)
        }
        Command::Export { spec, out } => {
            let text = cmd_export(&spec.parse()?, table_cap())?;
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Import { path } => {
            print!("{}", cmd_import(&path)?.render());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

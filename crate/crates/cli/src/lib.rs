//! Command-line harness around `mellin-core`.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on input errors.

pub mod json;
pub mod parser;
pub mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use mellin_core::germ::{germ_at, invariants, Point};
use mellin_core::mellin::{germ_at_infinity_op, mellin};
use mellin_core::phase::{local_dim_with_retry, random_operator, verify, CheckId, CheckStatus, Profile, WindowPolicy};
use mellin_core::polygon::{difference_polygon, global_polygon, local_diff_polygon};
use mellin_core::NewtonPolygon;
use rayon::prelude::*;
use serde_json::json;

pub use parser::{elaborate, parse, parse_operator, ElaborateError, OperatorExpr, SyntaxError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Elaborate(#[from] ElaborateError),
    #[error(transparent)]
    Core(#[from] mellin_core::Error),
    #[error("invalid point `{0}` (expected 0, inf or a rational)")]
    Point(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(name = "mellin", version, about = "Newton polygons, local invariants and the Mellin transform of differential operators")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Render the relevant polygon as SVG.
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Guard terms of u-precision for the microlocal layer.
    #[arg(long, global = true, value_name = "N", default_value_t = 8)]
    pub precision: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Global Newton polygon.
    Polygon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Mellin transform and the polygon of its germ at infinity.
    Mellin {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Local invariants at a point.
    Germ {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// `0`, `inf` or a nonzero rational.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Run every check and report.
    Verify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Accept a nonzero dimension defect of exactly this size.
        #[arg(long, allow_hyphen_values = true)]
        expect_defect: Option<i64>,
    },
    /// Verify a batch of seeded random operators.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value = "SMALL")]
        profile: Profile,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Output goes to the given writers.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn write_svg(cli: &Cli, polygon: &NewtonPolygon, title: &str) -> Result<(), CliError> {
    if let Some(path) = &cli.svg {
        std::fs::write(path, svg::render(polygon, title)).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn emit_json(io: &mut Io<'_>, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    let _ = writeln!(io.out, "{text}");
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<i32, CliError> {
    let policy = WindowPolicy::with_guard(cli.precision);
    match &cli.command {
        Command::Polygon { expr } => {
            let p = parse_operator(expr)?;
            let n = global_polygon(&p)?;
            write_svg(cli, &n, &format!("global polygon of {p}"))?;
            if cli.json {
                emit_json(io, &json!({ "operator": p.to_string(), "global_polygon": json::PolygonJson::from(&n) }));
            } else {
                let _ = writeln!(io.out, "operator: {p}");
                let _ = writeln!(io.out, "{n}");
            }
            Ok(0)
        }
        Command::Mellin { expr } => {
            let p = parse_operator(expr)?;
            let m = mellin(&p)?;
            let germ = germ_at_infinity_op(&m)?;
            let n = difference_polygon(&germ, true)?;
            write_svg(cli, &n, &format!("Mellin germ polygon of {p}"))?;
            if cli.json {
                emit_json(
                    io,
                    &json!({
                        "operator": p.to_string(),
                        "mellin_operator": m.to_string(),
                        "germ_at_infinity": germ.to_string(),
                        "mellin_polygon": json::PolygonJson::from(&n),
                    }),
                );
            } else {
                let _ = writeln!(io.out, "operator: {p}");
                let _ = writeln!(io.out, "mellin: {m}");
                let _ = writeln!(io.out, "germ at infinity: {germ}");
                let _ = writeln!(io.out, "{n}");
            }
            Ok(0)
        }
        Command::Germ { expr, at } => {
            let p = parse_operator(expr)?;
            let point = Point::parse(at).ok_or_else(|| CliError::Point(at.clone()))?;
            let l = germ_at(&p, &point)?;
            let report = invariants(&l, point.clone())?;
            let n = local_diff_polygon(&l)?;
            let dim = local_dim_with_retry(&l, &point, policy).ok();
            write_svg(cli, &n, &format!("local polygon of {p} at {point}"))?;
            if cli.json {
                let mut value = serde_json::to_value(json::LocalJson::from(&report)).expect("serializable");
                value["operator"] = json!(p.to_string());
                value["local_operator"] = json!(l.to_string());
                value["local_mellin_dim"] = json!(dim);
                value["polygon"] = serde_json::to_value(json::PolygonJson::from(&n)).expect("serializable");
                emit_json(io, &value);
            } else {
                let _ = writeln!(io.out, "operator: {p}");
                let _ = writeln!(io.out, "germ at {point}: {l}");
                let _ = writeln!(io.out, "dim {} irr {} mu {}", report.dim, report.irr, report.mu);
                match dim {
                    Some(d) => {
                        let _ = writeln!(io.out, "local Mellin dimension: {d}");
                    }
                    None => {
                        let _ = writeln!(io.out, "local Mellin dimension: not certified");
                    }
                }
                let _ = writeln!(io.out, "{n}");
            }
            Ok(0)
        }
        Command::Verify { expr, expect_defect } => {
            let p = parse_operator(expr)?;
            let report = verify(&p, *expect_defect, policy)?;
            write_svg(cli, &report.mellin_polygon, &format!("Mellin germ polygon of {p}"))?;
            for (id, status) in &report.checks {
                if let CheckStatus::Skipped(reason) = status {
                    let _ = writeln!(io.err, "warning: {id} skipped: {reason}");
                }
            }
            if cli.json {
                emit_json(io, &json::ReportJson::from(&report));
            } else {
                write_report(io, &report);
            }
            Ok(if report.success() { 0 } else { 1 })
        }
        Command::Corpus { seed, count, profile } => corpus(cli, io, *seed, *count, *profile, policy),
    }
}

fn write_report(io: &mut Io<'_>, r: &mellin_core::StationaryPhaseReport) {
    let _ = writeln!(io.out, "operator: {}", r.operator_text);
    let _ = writeln!(io.out, "{}", r.global_polygon);
    let _ = writeln!(io.out, "Mellin germ {}", r.mellin_polygon);
    for g in &r.locals {
        let _ = writeln!(io.out, "at {}: dim {} irr {} mu {}", g.point, g.dim, g.irr, g.mu);
    }
    let dims: Vec<String> = r
        .local_mellin_dims
        .iter()
        .map(|(p, d)| format!("{p}: {}", d.map_or("?".into(), |d| d.to_string())))
        .collect();
    let _ = writeln!(io.out, "local Mellin dimensions: {}", dims.join(", "));
    let w = r.width_partition;
    let _ = writeln!(io.out, "widths: negative {} zero {} positive {}", w.neg, w.zero, w.pos);
    let horz: Vec<String> = r.horz.roots.iter().map(ToString::to_string).collect();
    let _ = writeln!(io.out, "horizontal zeros: {{{}}}", horz.join(", "));
    match r.defect {
        Some(d) => {
            let _ = writeln!(io.out, "defect: {d}");
        }
        None => {
            let _ = writeln!(io.out, "defect: unknown");
        }
    }
    for (id, status) in &r.checks {
        match status.detail() {
            Some(d) => {
                let _ = writeln!(io.out, "{id}: {} ({d})", status.label());
            }
            None => {
                let _ = writeln!(io.out, "{id}: {}", status.label());
            }
        }
    }
}

fn corpus(cli: &Cli, io: &mut Io<'_>, seed: u64, count: u64, profile: Profile, policy: WindowPolicy) -> Result<i32, CliError> {
    let results = (seed..seed.saturating_add(count))
        .into_par_iter()
        .map(|s| {
            let p = random_operator(s, profile);
            verify(&p, None, policy).map(|r| (s, r))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut tally: BTreeMap<&'static str, json::CheckTally> = BTreeMap::new();
    let mut defects: BTreeMap<String, usize> = BTreeMap::new();
    let mut failed = false;
    for (_, r) in &results {
        for (id, status) in &r.checks {
            let t = tally.entry(id.name()).or_default();
            match status {
                CheckStatus::Pass => t.pass += 1,
                CheckStatus::Fail(_) => {
                    t.fail += 1;
                    failed |= *id != CheckId::DimIdentity;
                }
                CheckStatus::Skipped(_) => t.skipped += 1,
            }
        }
        let key = r.defect.map_or("skipped".to_string(), |d| d.to_string());
        *defects.entry(key).or_default() += 1;
    }
    if cli.json {
        let operators = results
            .iter()
            .map(|(s, r)| json::CorpusEntryJson {
                seed: *s,
                operator: r.operator_text.clone(),
                defect: r.defect,
                checks: r.checks.iter().map(|(id, st)| (id.name(), st.label())).collect(),
            })
            .collect();
        emit_json(
            io,
            &json::CorpusJson {
                profile: profile.to_string(),
                seed,
                count,
                operators,
                tally,
                defects,
            },
        );
    } else {
        for (s, r) in &results {
            let labels: Vec<&str> = r.checks.iter().map(|(_, st)| st.label()).collect();
            let defect = r.defect.map_or("?".into(), |d| d.to_string());
            let _ = writeln!(io.out, "{s}\t{}\tdefect {defect}\t{}", labels.join(" "), r.operator_text);
        }
        let _ = writeln!(io.out, "{count} operators, profile {profile}");
        for id in CheckId::ALL {
            let t = tally.get(id.name()).map_or((0, 0, 0), |t| (t.pass, t.fail, t.skipped));
            let _ = writeln!(io.out, "{id}: {} pass, {} fail, {} skipped", t.0, t.1, t.2);
        }
        let hist: Vec<String> = defects.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        let _ = writeln!(io.out, "defects: {}", hist.join(", "));
    }
    Ok(if failed { 1 } else { 0 })
}

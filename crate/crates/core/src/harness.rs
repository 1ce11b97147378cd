//! Bound checking over corpora and the report formats.
//!
//! Reports come as JSON lines or CSV. Both start with one header line that
//! carries the schema version, the RNG description and a creation
//! timestamp; everything after the header depends only on the inputs.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::FactorError;
use crate::generators::{FamilySpec, RNG_NAME};
use crate::graph::Graph;
use crate::heuristic::{solve, HEURISTIC_LIMIT};
use crate::independence::independence_number;
use crate::oracle::{min_small_components_exact, ORACLE_LIMIT};

pub const SCHEMA: &str = "pseudofactor.bound_report";
pub const SCHEMA_VERSION: u32 = 1;

/// `max(0, α − ⌊b(δ−1)/2⌋)`, in integers.
pub fn theorem_bound(alpha: usize, delta: usize, b: usize) -> Result<usize> {
    if alpha < 1 || delta < 1 || b < 2 {
        return Err(Error::InvalidParameter(format!(
            "bound needs alpha >= 1, delta >= 1, b >= 2; got alpha={alpha} delta={delta} b={b}"
        )));
    }
    Ok(alpha.saturating_sub(b * (delta - 1) / 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Oracle,
    Heuristic,
    Both,
}

impl Mode {
    fn oracle(self) -> bool {
        matches!(self, Mode::Oracle | Mode::Both)
    }

    fn heuristic(self) -> bool {
        matches!(self, Mode::Heuristic | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Mode::Oracle),
            "heuristic" => Ok(Mode::Heuristic),
            "both" => Ok(Mode::Both),
            _ => Err(Error::InvalidParameter(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "BOUND_VIOLATION")]
    BoundViolation,
    #[serde(rename = "capacity_skipped")]
    CapacitySkipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::BoundViolation => "BOUND_VIOLATION",
            Status::CapacitySkipped => "capacity_skipped",
        })
    }
}

/// One (instance, b) row. Field order is the column order of both formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub n: usize,
    pub b: usize,
    pub delta: Option<usize>,
    pub alpha: Option<usize>,
    pub theorem_bound: Option<usize>,
    pub oracle_optimum: Option<usize>,
    pub heuristic_value: Option<usize>,
    pub isolated_vertices_present: bool,
    pub b3_no_guarantee: bool,
    /// `α ≤ b(δ−1)/2`, where a [2,b]-factor is guaranteed.
    pub kl_regime: bool,
    pub status: Status,
}

impl BoundReport {
    pub fn is_violation(&self) -> bool {
        self.status == Status::BoundViolation
    }

    pub fn is_tight(&self) -> bool {
        matches!((self.oracle_optimum, self.theorem_bound), (Some(o), Some(t)) if o == t)
    }

    fn csv_row(&self) -> String {
        fn opt(v: Option<usize>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "\"{}\",{},{},{},{},{},{},{},{},{},{},{}",
            self.id.replace('"', "\"\""),
            self.n,
            self.b,
            opt(self.delta),
            opt(self.alpha),
            opt(self.theorem_bound),
            opt(self.oracle_optimum),
            opt(self.heuristic_value),
            self.isolated_vertices_present,
            self.b3_no_guarantee,
            self.kl_regime,
            self.status
        )
    }
}

pub const CSV_COLUMNS: &str = "id,n,b,delta,alpha,theorem_bound,oracle_optimum,heuristic_value,isolated_vertices_present,b3_no_guarantee,kl_regime,status";

/// Computes every field of the report for `g` at `b`. Instances beyond a
/// solver's limit come back as `capacity_skipped` with whatever could be
/// computed filled in.
pub fn verify_instance(id: &str, g: &Graph, b: usize, mode: Mode) -> BoundReport {
    let n = g.vertex_count();
    let delta = g.min_degree().ok();
    let isolated = g.has_isolated_vertex();
    let mut capacity = false;

    let alpha = match independence_number(g) {
        Ok(a) if n > 0 => Some(a),
        Ok(_) => None,
        Err(_) => {
            capacity = true;
            None
        }
    };
    let theorem_bound = match (alpha, delta) {
        (Some(a), Some(d)) if d >= 1 && b >= 2 => theorem_bound(a, d, b).ok(),
        _ => None,
    };
    let kl_regime = match (alpha, delta) {
        (Some(a), Some(d)) if d >= 1 => 2 * a <= b * (d - 1),
        _ => false,
    };

    let oracle_optimum = if mode.oracle() && n <= ORACLE_LIMIT && !capacity {
        match min_small_components_exact(g, b) {
            Ok(r) => Some(r.optimum),
            Err(e) => {
                capacity |= e.is_capacity();
                None
            }
        }
    } else {
        capacity |= mode.oracle();
        None
    };
    let heuristic_value = if mode.heuristic() && n <= HEURISTIC_LIMIT {
        match solve(g, b) {
            Ok(s) => Some(s.small_count()),
            Err(e) => {
                capacity |= e.is_capacity();
                None
            }
        }
    } else {
        capacity |= mode.heuristic() && n > HEURISTIC_LIMIT;
        None
    };

    let violated = b != 3
        && !isolated
        && matches!((oracle_optimum, theorem_bound), (Some(o), Some(t)) if o > t);
    let status = if violated {
        Status::BoundViolation
    } else if capacity {
        Status::CapacitySkipped
    } else {
        Status::Ok
    };
    BoundReport {
        id: id.to_string(),
        n,
        b,
        delta,
        alpha,
        theorem_bound,
        oracle_optimum,
        heuristic_value,
        isolated_vertices_present: isolated,
        b3_no_guarantee: b == 3,
        kl_regime,
        status,
    }
}

/// A named graph to verify.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
}

impl Instance {
    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        Ok(Instance {
            id: spec.to_string(),
            graph: spec.build()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub reports: usize,
    pub violations: usize,
    pub tight: usize,
    pub capacity_skipped: usize,
    pub heuristic_checked: usize,
    pub heuristic_attained: usize,
    /// `heuristic_attained / heuristic_checked`, or `null` when nothing
    /// was checked.
    pub heuristic_attainment: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub reports: Vec<BoundReport>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| r.is_violation())
    }
}

/// Verifies every instance at every `b` on a pool of `jobs` workers. Rows
/// are ordered by instance, then by position in `bs`, whatever the
/// completion order.
pub fn run_corpus(
    instances: &[Instance],
    bs: &[usize],
    mode: Mode,
    jobs: usize,
) -> Result<CorpusReport> {
    if let Some(&b) = bs.iter().find(|&&b| b < 2) {
        return Err(FactorError::InvalidB(b).into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let tasks: Vec<(&Instance, usize)> = instances
        .iter()
        .flat_map(|inst| bs.iter().map(move |&b| (inst, b)))
        .collect();
    let reports: Vec<BoundReport> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(inst, b)| verify_instance(&inst.id, &inst.graph, *b, mode))
            .collect()
    });
    let summary = summarize(instances.len(), &reports);
    Ok(CorpusReport { reports, summary })
}

pub fn summarize(instances: usize, reports: &[BoundReport]) -> Summary {
    let heuristic: Vec<(usize, usize)> = reports
        .iter()
        .filter(|r| !r.b3_no_guarantee)
        .filter_map(|r| Some((r.heuristic_value?, r.theorem_bound?)))
        .collect();
    let attained = heuristic.iter().filter(|(h, t)| h <= t).count();
    Summary {
        instances,
        reports: reports.len(),
        violations: reports.iter().filter(|r| r.is_violation()).count(),
        tight: reports.iter().filter(|r| r.is_tight()).count(),
        capacity_skipped: reports
            .iter()
            .filter(|r| r.status == Status::CapacitySkipped)
            .count(),
        heuristic_checked: heuristic.len(),
        heuristic_attained: attained,
        heuristic_attainment: (!heuristic.is_empty())
            .then(|| attained as f64 / heuristic.len() as f64),
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Header line shared by both formats (JSON object for JSONL, `#` comment
/// for CSV).
fn header_json(created_unix: u64) -> serde_json::Value {
    serde_json::json!({
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "rng": RNG_NAME,
        "created_unix": created_unix,
    })
}

/// Header line, one JSON object per report, then `{"summary": …}`.
pub fn write_jsonl<W: Write>(out: &mut W, report: &CorpusReport) -> io::Result<()> {
    writeln!(out, "{}", header_json(unix_now()))?;
    write_jsonl_body(out, report)
}

pub fn write_jsonl_body<W: Write>(out: &mut W, report: &CorpusReport) -> io::Result<()> {
    for r in &report.reports {
        writeln!(
            out,
            "{}",
            serde_json::to_string(r).map_err(io::Error::other)?
        )?;
    }
    writeln!(out, "{}", serde_json::json!({ "summary": report.summary }))
}

/// `# schema=… version=… created_unix=…`, the column line, then one row per
/// report. Empty cells stand for absent values.
pub fn write_csv<W: Write>(out: &mut W, report: &CorpusReport) -> io::Result<()> {
    writeln!(
        out,
        "# schema={SCHEMA} version={SCHEMA_VERSION} rng=\"{RNG_NAME}\" created_unix={}",
        unix_now()
    )?;
    writeln!(out, "{CSV_COLUMNS}")?;
    for r in &report.reports {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Everything after the first line of a report file.
pub fn report_body(text: &str) -> &str {
    text.split_once('\n').map(|(_, rest)| rest).unwrap_or("")
}

/// Edge-list text that reproduces a failing row, with `b` and the id in a
/// leading comment.
pub fn reproducer(report: &BoundReport, g: &Graph) -> String {
    format!(
        "# pseudofactor bound violation: id=\"{}\" b={} alpha={:?} delta={:?} bound={:?} oracle={:?}\n{}",
        report.id,
        report.b,
        report.alpha,
        report.delta,
        report.theorem_bound,
        report.oracle_optimum,
        g.to_edge_list()
    )
}

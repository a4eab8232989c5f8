//! CSV and JSON reports with an averages section.

use serde::Serialize;

use crate::error::{BenchError, Result};
use crate::runner::Row;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(BenchError::Usage(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

pub const COLUMNS: [&str; 22] = [
    "instance",
    "algorithm",
    "status",
    "cost",
    "start_h",
    "nodes_generated",
    "nodes_expanded",
    "first_solution_nodes",
    "first_solution_cost",
    "optimal_found_at",
    "memory_peak",
    "iterations",
    "direction",
    "nipped",
    "pruned",
    "mindiff",
    "fmin2",
    "wall_ms",
    "baseline_nodes",
    "baseline_wall_ms",
    "norm_nodes",
    "norm_time",
];

/// Arithmetic means over included rows. Normalized ratios are ratios of
/// means, so a few tiny instances cannot dominate them.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Averages {
    pub included: usize,
    pub excluded: usize,
    pub cost: Option<f64>,
    pub start_h: Option<f64>,
    pub nodes_generated: Option<f64>,
    pub nodes_expanded: Option<f64>,
    pub memory_peak: Option<f64>,
    pub iterations: Option<f64>,
    pub mindiff: Option<f64>,
    pub fmin2: Option<f64>,
    /// Mean of `first_solution_nodes / nodes_generated`.
    pub first_solution_fraction: Option<f64>,
    /// Mean of `(first_solution_cost - cost) / cost`.
    pub first_solution_gap: Option<f64>,
    pub wall_ms: Option<f64>,
    pub baseline_nodes: Option<f64>,
    pub baseline_wall_ms: Option<f64>,
    pub norm_nodes: Option<f64>,
    pub norm_time: Option<f64>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

pub fn averages(rows: &[Row]) -> Averages {
    let has_baseline = rows.iter().any(|r| r.baseline_nodes.is_some());
    let inc: Vec<&Row> = rows.iter().filter(|r| r.included(has_baseline)).collect();
    let m = |f: &dyn Fn(&Row) -> Option<f64>| mean(inc.iter().filter_map(|r| f(r)));
    let nodes_generated = m(&|r| Some(r.nodes_generated as f64));
    let baseline_nodes = m(&|r| r.baseline_nodes.map(|b| b as f64));
    let wall_ms = m(&|r| r.wall_ms);
    let baseline_wall_ms = m(&|r| r.baseline_wall_ms);
    let ratio = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) if b > 0.0 => Some(a / b),
        (Some(a), Some(b)) if a == b => Some(1.0),
        _ => None,
    };
    Averages {
        included: inc.len(),
        excluded: rows.len() - inc.len(),
        cost: m(&|r| r.cost.map(|c| c as f64)),
        start_h: m(&|r| Some(r.start_h as f64)),
        nodes_generated,
        nodes_expanded: m(&|r| Some(r.nodes_expanded as f64)),
        memory_peak: m(&|r| Some(r.memory_peak as f64)),
        iterations: m(&|r| Some(r.iterations as f64)),
        mindiff: m(&|r| r.mindiff.map(|c| c as f64)),
        fmin2: m(&|r| r.fmin2.map(|c| c as f64)),
        first_solution_fraction: m(&|r| {
            r.first_solution_nodes.filter(|_| r.nodes_generated > 0).map(|n| n as f64 / r.nodes_generated as f64)
        }),
        first_solution_gap: m(&|r| match (r.first_solution_cost, r.cost) {
            (Some(f), Some(c)) if c > 0 => Some((f as f64 - c as f64) / c as f64),
            _ => None,
        }),
        wall_ms,
        baseline_nodes,
        baseline_wall_ms,
        norm_nodes: ratio(nodes_generated, baseline_nodes),
        norm_time: ratio(wall_ms, baseline_wall_ms),
    }
}

fn averages_record(a: &Averages) -> Vec<String> {
    let f = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    COLUMNS
        .iter()
        .map(|&c| match c {
            "instance" => "mean".to_string(),
            "status" => format!("included={} excluded={}", a.included, a.excluded),
            "cost" => f(a.cost),
            "start_h" => f(a.start_h),
            "nodes_generated" => f(a.nodes_generated),
            "nodes_expanded" => f(a.nodes_expanded),
            "memory_peak" => f(a.memory_peak),
            "iterations" => f(a.iterations),
            "mindiff" => f(a.mindiff),
            "fmin2" => f(a.fmin2),
            "wall_ms" => f(a.wall_ms),
            "baseline_nodes" => f(a.baseline_nodes),
            "baseline_wall_ms" => f(a.baseline_wall_ms),
            "norm_nodes" => f(a.norm_nodes),
            "norm_time" => f(a.norm_time),
            _ => String::new(),
        })
        .collect()
}

/// Serializes rows followed by their averages: a trailing `mean` row in
/// CSV, an `averages` object in JSON. Empty input gives a header-only CSV or
/// `{"rows": [], "averages": {}}`.
pub fn emit_report(rows: &[Row], format: ReportFormat) -> Result<String> {
    let err = |e: &dyn std::fmt::Display| BenchError::Report(e.to_string());
    match format {
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(COLUMNS).map_err(|e| err(&e))?;
            for row in rows {
                w.serialize(row).map_err(|e| err(&e))?;
            }
            if !rows.is_empty() {
                w.write_record(averages_record(&averages(rows))).map_err(|e| err(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| err(&e))?;
            String::from_utf8(bytes).map_err(|e| err(&e))
        }
        ReportFormat::Json => {
            let averages = if rows.is_empty() {
                serde_json::json!({})
            } else {
                serde_json::to_value(averages(rows)).map_err(|e| err(&e))?
            };
            let doc = serde_json::json!({ "rows": rows, "averages": averages });
            serde_json::to_string_pretty(&doc).map_err(|e| err(&e))
        }
    }
}

/// Reads back the instance rows of a CSV report, skipping the averages row.
pub fn parse_csv_rows(text: &str) -> Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| BenchError::Report(e.to_string()))?;
        if record.get(0) == Some("mean") {
            continue;
        }
        out.push(record.deserialize(None).map_err(|e| BenchError::Report(e.to_string()))?);
    }
    Ok(out)
}

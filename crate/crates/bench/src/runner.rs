//! Runs one algorithm over an instance set.

use std::time::{Duration, Instant};

use bidir_core::deadline::{with_deadline, with_node_cap};
use bidir_core::{Direction, SearchError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{run_instance, Algorithm, Knobs, RunOutcome};
use crate::error::{BenchError, Result};
use crate::instances::{instances_for, DomainSpec, Instance};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithm: Algorithm,
    pub domain: DomainSpec,
    pub instances: usize,
    pub seed: u64,
    pub knobs: Knobs,
    /// Normalized columns are relative to this algorithm.
    pub baseline: Option<Algorithm>,
    pub timeout: Option<Duration>,
    /// Generated-node cap per run; exceeding it flags the row like a timeout.
    pub node_cap: Option<u64>,
    pub workers: usize,
    /// Record wall-clock columns. Off, reports depend only on the config.
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(algorithm: Algorithm, domain: DomainSpec) -> Self {
        BenchConfig {
            algorithm,
            domain,
            instances: 100,
            seed: 0,
            knobs: Knobs::default(),
            baseline: None,
            timeout: Some(Duration::from_secs(60)),
            node_cap: None,
            workers: 1,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Solved,
    Unsolvable,
    Timeout,
    NodeLimit,
}

/// One instance's result. Field order is the report's column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub instance: usize,
    pub algorithm: String,
    pub status: Status,
    pub cost: Option<u64>,
    pub start_h: u64,
    pub nodes_generated: u64,
    pub nodes_expanded: u64,
    pub first_solution_nodes: Option<u64>,
    pub first_solution_cost: Option<u64>,
    pub optimal_found_at: Option<u64>,
    pub memory_peak: u64,
    pub iterations: u64,
    pub direction: Option<String>,
    pub nipped: u64,
    pub pruned: u64,
    pub mindiff: Option<u64>,
    pub fmin2: Option<u64>,
    pub wall_ms: Option<f64>,
    pub baseline_nodes: Option<u64>,
    pub baseline_wall_ms: Option<f64>,
    pub norm_nodes: Option<f64>,
    pub norm_time: Option<f64>,
}

impl Row {
    /// Rows that count toward averages: solved (or proven unsolvable), and
    /// the baseline too when there is one.
    pub fn included(&self, has_baseline: bool) -> bool {
        matches!(self.status, Status::Solved | Status::Unsolvable) && (!has_baseline || self.baseline_nodes.is_some())
    }
}

struct Measured {
    status: Status,
    outcome: Option<RunOutcome>,
    wall: Duration,
}

fn measure(algorithm: Algorithm, instance: &Instance, config: &BenchConfig) -> Result<Measured> {
    let started = Instant::now();
    let deadline = config.timeout.map(|t| started + t);
    let result = with_deadline(deadline, || with_node_cap(config.node_cap, || run_instance(algorithm, instance, &config.knobs)));
    let wall = started.elapsed();
    match result {
        Ok(outcome) => {
            let status = if outcome.cost.is_some() { Status::Solved } else { Status::Unsolvable };
            Ok(Measured { status, outcome: Some(outcome), wall })
        }
        Err(SearchError::Timeout) => Ok(Measured { status: Status::Timeout, outcome: None, wall }),
        Err(SearchError::NodeLimit(_)) => Ok(Measured { status: Status::NodeLimit, outcome: None, wall }),
        Err(e) => Err(BenchError::Invariant(format!("{algorithm} on instance: {e}"))),
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn build_row(index: usize, instance: &Instance, config: &BenchConfig, main: &Measured, base: Option<&Measured>) -> Row {
    let stats = main.outcome.as_ref().map(|o| &o.stats);
    let wall_ms = config.timing.then(|| millis(main.wall));
    let baseline_ok = base.filter(|b| b.outcome.is_some());
    let baseline_nodes = baseline_ok.and_then(|b| b.outcome.as_ref()).map(|o| o.stats.nodes_generated);
    let baseline_wall_ms = baseline_ok.filter(|_| config.timing).map(|b| millis(b.wall));
    let nodes = stats.map_or(0, |s| s.nodes_generated);
    let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else if a == b { 1.0 } else { f64::INFINITY };
    Row {
        instance: index + 1,
        algorithm: config.algorithm.name().to_string(),
        status: main.status,
        cost: main.outcome.as_ref().and_then(|o| o.cost).and_then(|c| c.value()),
        start_h: instance.start_h().value().unwrap_or(0),
        nodes_generated: nodes,
        nodes_expanded: stats.map_or(0, |s| s.nodes_expanded),
        first_solution_nodes: stats.and_then(|s| s.first_solution).map(|(n, _)| n),
        first_solution_cost: stats.and_then(|s| s.first_solution).and_then(|(_, c)| c.value()),
        optimal_found_at: stats.and_then(|s| s.optimal_found_at),
        memory_peak: stats.map_or(0, |s| s.memory_peak),
        iterations: stats.map_or(0, |s| s.threshold_sequence.len() as u64),
        direction: stats.and_then(|s| s.direction_assignment).map(|d| match d {
            Direction::Forward => "forward".to_string(),
            Direction::Backward => "backward".to_string(),
        }),
        nipped: stats.map_or(0, |s| s.nipped),
        pruned: stats.map_or(0, |s| s.pruned),
        mindiff: stats.and_then(|s| s.mindiff).and_then(|c| c.value()),
        fmin2: stats.and_then(|s| s.fmin2).and_then(|c| c.value()),
        wall_ms,
        baseline_nodes,
        baseline_wall_ms,
        norm_nodes: baseline_nodes.filter(|_| stats.is_some()).map(|b| ratio(nodes as f64, b as f64)),
        norm_time: wall_ms.zip(baseline_wall_ms).map(|(a, b)| ratio(a, b)),
    }
}

/// Runs `config.algorithm` (and the baseline, if any) on every instance.
/// Rows come back in instance order whatever the worker count.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<Row>> {
    let instances = instances_for(&config.domain, config.instances, config.seed)?;
    run_on_instances(config, &instances)
}

pub fn run_on_instances(config: &BenchConfig, instances: &[Instance]) -> Result<Vec<Row>> {
    if config.workers == 0 {
        return Err(BenchError::Usage("--workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| BenchError::Invariant(format!("thread pool: {e}")))?;
    pool.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| {
                let main = measure(config.algorithm, inst, config)?;
                let base = match config.baseline {
                    Some(b) if b != config.algorithm => Some(measure(b, inst, config)?),
                    _ => None,
                };
                // Self-comparison reuses the same run so ratios are exactly 1.
                let base_ref = match config.baseline {
                    Some(b) if b == config.algorithm => Some(&main),
                    _ => base.as_ref(),
                };
                Ok(build_row(i, inst, config, &main, base_ref))
            })
            .collect()
    })
}

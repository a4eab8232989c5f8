//! Benchmark harness: instance loading and generation, per-algorithm runs
//! with baseline normalization, bound verification and CSV/JSON reports.

pub mod algorithms;
pub mod bounds;
pub mod error;
pub mod instances;
pub mod report;
pub mod runner;

pub use algorithms::{run_instance, run_on, Algorithm, Knobs, RunOutcome};
pub use bounds::{verify_bounds, verify_instance, BoundsReport};
pub use error::{BenchError, Result};
pub use instances::{instances_for, load_instances, parse_korf, DomainSpec, Instance, InstanceFormat};
pub use report::{averages, emit_report, parse_csv_rows, Averages, ReportFormat};
pub use runner::{run_benchmark, run_on_instances, BenchConfig, Row, Status};

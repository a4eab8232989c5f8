use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use bidir_bench::{
    emit_report, instances_for, run_benchmark, verify_instance, Algorithm, BenchConfig, BenchError, DomainSpec, Knobs,
    ReportFormat, Result,
};
use bidir_core::domains::generate_maze;
use bidir_core::oracle::optimal_cost;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bidir-bench", version, about = "Benchmark admissible uni- and bidirectional search engines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// puzzle8, puzzle15, mazeWxH[:skip%[:min_h]], korf15:PATH or mazefile:PATH
    #[arg(long, default_value = "puzzle8")]
    domain: String,
    /// Number of instances.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm over an instance set and print a report.
    Run {
        #[arg(long)]
        algorithm: String,
        #[command(flatten)]
        set: InstanceArgs,
        /// A* generation budget for BAI and Max-BAI.
        #[arg(long, default_value_t = 100_000)]
        memory_nodes: u64,
        /// Transposition-table entries for the Trans variants.
        #[arg(long, default_value_t = 100_000)]
        tt_nodes: usize,
        #[arg(long, default_value_t = 2)]
        perimeter_depth: u64,
        /// Phase-1 budget for BAA and the Add methods (default: half of --memory-nodes).
        #[arg(long)]
        first_phase_budget: Option<u64>,
        /// Algorithm the normalized columns are relative to.
        #[arg(long)]
        baseline: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Per-instance time limit; 0 disables it.
        #[arg(long, default_value_t = 60)]
        timeout_secs: u64,
        /// Per-run generated-node cap.
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Leave wall-clock columns empty so output depends only on the config.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check BHPA's expansion count against A* from both ends.
    VerifyBounds {
        #[command(flatten)]
        set: InstanceArgs,
    },
    /// Print a generated maze in the maze file format.
    GenMaze {
        #[arg(long, default_value_t = 50)]
        width: u32,
        #[arg(long, default_value_t = 50)]
        height: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        skip: u32,
        /// Write explicit wall rows instead of only the header.
        #[arg(long)]
        walls: bool,
    },
    /// Print each instance's optimal cost from uniform-cost search.
    Oracle {
        #[command(flatten)]
        set: InstanceArgs,
    },
}

fn run(cli: Cli) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Run {
            algorithm,
            set,
            memory_nodes,
            tt_nodes,
            perimeter_depth,
            first_phase_budget,
            baseline,
            format,
            timeout_secs,
            node_cap,
            workers,
            no_timing,
        } => {
            let format: ReportFormat = format.parse()?;
            let mut config = BenchConfig::new(algorithm.parse()?, set.domain.parse()?);
            config.instances = set.instances;
            config.seed = set.seed;
            config.knobs = Knobs { memory_nodes, tt_nodes, perimeter_depth, first_phase_budget };
            config.baseline = baseline.as_deref().map(str::parse::<Algorithm>).transpose()?;
            config.timeout = (timeout_secs > 0).then(|| Duration::from_secs(timeout_secs));
            config.node_cap = node_cap;
            config.workers = workers;
            config.timing = !no_timing;
            let rows = run_benchmark(&config)?;
            write!(out, "{}", emit_report(&rows, format)?).map_err(stdout_err)?;
        }
        Command::VerifyBounds { set } => {
            let spec: DomainSpec = set.domain.parse()?;
            let mut failed = Vec::new();
            writeln!(out, "instance,cost,bhpa,astar_fwd,astar_bwd,x1,x2,upper_ok,lower_ok,symmetric,delta").map_err(stdout_err)?;
            for (i, inst) in instances_for(&spec, set.instances, set.seed)?.iter().enumerate() {
                let r = verify_instance(inst)?;
                let opt = |v: Option<String>| v.unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    i + 1,
                    opt(r.cost.map(|c| c.to_string())),
                    r.bhpa_expansions,
                    r.a_star_fwd,
                    r.a_star_bwd,
                    r.x1,
                    r.x2,
                    r.upper_ok,
                    r.lower_ok,
                    r.symmetric,
                    opt(r.delta.map(|d| d.to_string()))
                )
                .map_err(stdout_err)?;
                if !r.ok() {
                    failed.push(i + 1);
                }
            }
            if !failed.is_empty() {
                return Err(BenchError::Invariant(format!("bounds violated on instances {failed:?}")));
            }
        }
        Command::GenMaze { width, height, seed, skip, walls } => {
            if skip > 100 {
                return Err(BenchError::Usage("--skip is a percentage (0-100)".into()));
            }
            let maze = generate_maze(width, height, seed, skip).map_err(|e| BenchError::Usage(e.to_string()))?;
            write!(out, "{}", maze.to_text(walls)).map_err(stdout_err)?;
        }
        Command::Oracle { set } => {
            let spec: DomainSpec = set.domain.parse()?;
            writeln!(out, "instance,start_h,cost").map_err(stdout_err)?;
            for (i, inst) in instances_for(&spec, set.instances, set.seed)?.iter().enumerate() {
                let cost = match inst {
                    bidir_bench::Instance::Puzzle(p) => optimal_cost(p),
                    bidir_bench::Instance::Maze(m) => optimal_cost(m),
                };
                let cost = cost.map(|c| c.to_string()).unwrap_or_else(|| "unsolvable".into());
                writeln!(out, "{},{},{}", i + 1, inst.start_h(), cost).map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn stdout_err(source: std::io::Error) -> BenchError {
    BenchError::Io { path: PathBuf::from("<stdout>"), source }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (`| head`) is not a failure.
        Err(BenchError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

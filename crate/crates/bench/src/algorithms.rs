//! Name-addressed dispatch over every engine.

use std::fmt;
use std::str::FromStr;

use bidir_core::bidi_sequential::{baa, bai};
use bidir_core::bidi_traditional::{bhpa, bsstar};
use bidir_core::diffheur::{add_baa, add_bda, max_bai, max_ida};
use bidir_core::perimeter::{build_perimeter, perimeter_search, PerimeterEngine};
use bidir_core::unisearch::{astar, idastar, trans};
use bidir_core::{Cost, Direction, PairwiseHeuristic, SearchStats};

use crate::error::{BenchError, Result};
use crate::instances::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    AStar,
    IdaStar,
    Trans,
    Bhpa,
    BsStar,
    PerimeterAStar,
    PerimeterIdaStar,
    Bai,
    BaiTrans,
    Baa,
    AddBaa,
    AddBda,
    MaxBai,
    MaxBaiTrans,
    MaxIda,
}

impl Algorithm {
    pub const ALL: [Algorithm; 15] = [
        Algorithm::AStar,
        Algorithm::IdaStar,
        Algorithm::Trans,
        Algorithm::Bhpa,
        Algorithm::BsStar,
        Algorithm::PerimeterAStar,
        Algorithm::PerimeterIdaStar,
        Algorithm::Bai,
        Algorithm::BaiTrans,
        Algorithm::Baa,
        Algorithm::AddBaa,
        Algorithm::AddBda,
        Algorithm::MaxBai,
        Algorithm::MaxBaiTrans,
        Algorithm::MaxIda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::AStar => "astar",
            Algorithm::IdaStar => "idastar",
            Algorithm::Trans => "trans",
            Algorithm::Bhpa => "bhpa",
            Algorithm::BsStar => "bsstar",
            Algorithm::PerimeterAStar => "ps",
            Algorithm::PerimeterIdaStar => "idps",
            Algorithm::Bai => "bai",
            Algorithm::BaiTrans => "bai-trans",
            Algorithm::Baa => "baa",
            Algorithm::AddBaa => "add-baa",
            Algorithm::AddBda => "add-bda",
            Algorithm::MaxBai => "max-bai",
            Algorithm::MaxBaiTrans => "max-bai-trans",
            Algorithm::MaxIda => "max-ida",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            BenchError::Usage(format!("unknown algorithm `{s}` ({})", names.join("|")))
        })
    }
}

/// Memory knobs shared by the engines that use them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Knobs {
    /// Generation budget of the A* part of BAI and Max-BAI.
    pub memory_nodes: u64,
    /// Transposition-table entries for the Trans variants.
    pub tt_nodes: usize,
    pub perimeter_depth: u64,
    /// Phase-1 budget of BAA and the Add methods; half of `memory_nodes`
    /// when unset.
    pub first_phase_budget: Option<u64>,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs { memory_nodes: 100_000, tt_nodes: 100_000, perimeter_depth: 2, first_phase_budget: None }
    }
}

impl Knobs {
    pub fn phase_one(&self) -> u64 {
        self.first_phase_budget.unwrap_or(self.memory_nodes / 2)
    }
}

/// Cost found (if any) and the engine's counters.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub cost: Option<Cost>,
    pub stats: SearchStats,
}

pub fn run_on<D: PairwiseHeuristic>(algorithm: Algorithm, domain: &D, knobs: &Knobs) -> bidir_core::Result<RunOutcome> {
    let (sol, stats) = match algorithm {
        Algorithm::AStar => {
            let (outcome, stats) = astar(domain, Direction::Forward, None)?;
            (outcome.into_solution(), stats)
        }
        Algorithm::IdaStar => idastar(domain, Direction::Forward, None)?,
        Algorithm::Trans => trans(domain, Direction::Forward, knobs.tt_nodes, None)?,
        Algorithm::Bhpa => bhpa(domain)?,
        Algorithm::BsStar => bsstar(domain)?,
        Algorithm::PerimeterAStar | Algorithm::PerimeterIdaStar => {
            let engine = if algorithm == Algorithm::PerimeterAStar { PerimeterEngine::AStar } else { PerimeterEngine::IdaStar };
            let per = build_perimeter(domain, Cost::from(knobs.perimeter_depth))?;
            perimeter_search(domain, &per, engine)?
        }
        Algorithm::Bai => bai(domain, Some(knobs.memory_nodes), 0)?,
        Algorithm::BaiTrans => bai(domain, Some(knobs.memory_nodes), knobs.tt_nodes)?,
        Algorithm::Baa => baa(domain, knobs.phase_one())?,
        Algorithm::AddBaa => add_baa(domain, knobs.phase_one())?,
        Algorithm::AddBda => add_bda(domain, knobs.phase_one())?,
        Algorithm::MaxBai => max_bai(domain, Some(knobs.memory_nodes), 0)?,
        Algorithm::MaxBaiTrans => max_bai(domain, Some(knobs.memory_nodes), knobs.tt_nodes)?,
        Algorithm::MaxIda => max_ida(domain)?,
    };
    if let Some(sol) = &sol {
        sol.validate(domain)?;
    }
    Ok(RunOutcome { cost: sol.map(|s| s.cost), stats })
}

pub fn run_instance(algorithm: Algorithm, instance: &Instance, knobs: &Knobs) -> bidir_core::Result<RunOutcome> {
    match instance {
        Instance::Puzzle(p) => run_on(algorithm, p, knobs),
        Instance::Maze(m) => run_on(algorithm, m, knobs),
    }
}

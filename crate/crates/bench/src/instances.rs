//! Instance files and seeded instance generation.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use bidir_core::domains::{generate_maze, Maze, PuzzleState, SlidingPuzzle};
use bidir_core::{Cost, Direction, Domain, SearchError};

use crate::error::{BenchError, Result};

#[derive(Clone, Debug)]
pub enum Instance {
    Puzzle(SlidingPuzzle),
    Maze(Maze),
}

impl Instance {
    /// `h1(s)`: the forward heuristic at the start state.
    pub fn start_h(&self) -> Cost {
        match self {
            Instance::Puzzle(p) => p.heuristic(&p.start(), Direction::Forward),
            Instance::Maze(m) => m.heuristic(&m.start(), Direction::Forward),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceFormat {
    Korf15,
    Maze,
}

impl FromStr for InstanceFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "korf15" => Ok(InstanceFormat::Korf15),
            "maze" => Ok(InstanceFormat::Maze),
            other => Err(BenchError::Usage(format!("unknown instance format `{other}` (korf15|maze)"))),
        }
    }
}

/// Reads an instance file. Korf files hold one Fifteen Puzzle start per
/// line (16 integers, blank = 0, row-major); maze files hold one or more
/// mazes, each starting with a `W H seed skip%` header.
pub fn load_instances(path: &Path, format: InstanceFormat) -> Result<Vec<Instance>> {
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.to_path_buf(), source })?;
    match format {
        InstanceFormat::Korf15 => parse_korf(&text, path),
        InstanceFormat::Maze => parse_mazes(&text, path),
    }
}

pub fn parse_korf(text: &str, path: &Path) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| BenchError::Parse { path: path.to_path_buf(), line: i + 1, message };
        let tiles = line
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|_| err(format!("`{t}` is not a tile number"))))
            .collect::<Result<Vec<u8>>>()?;
        if tiles.len() != 16 {
            return Err(err(format!("expected 16 tiles, found {}", tiles.len())));
        }
        let start = PuzzleState::from_tiles(&tiles).map_err(|e| err(e.to_string()))?;
        let puzzle = SlidingPuzzle::new(4, start, PuzzleState::solved(4)).map_err(|e| err(e.to_string()))?;
        out.push(Instance::Puzzle(puzzle));
    }
    Ok(out)
}

fn parse_mazes(text: &str, path: &Path) -> Result<Vec<Instance>> {
    let lines: Vec<&str> = text.lines().collect();
    let is_header = |l: &str| !l.starts_with('#') && l.split_whitespace().count() == 4;
    let starts: Vec<usize> = (0..lines.len()).filter(|&i| is_header(lines[i])).collect();
    if starts.is_empty() {
        return match lines.iter().position(|l| !l.trim().is_empty() && !l.starts_with('#')) {
            Some(i) => Err(BenchError::Parse { path: path.to_path_buf(), line: i + 1, message: "expected `W H seed skip%` header".into() }),
            None => Ok(Vec::new()),
        };
    }
    let mut out = Vec::new();
    for (k, &from) in starts.iter().enumerate() {
        let to = starts.get(k + 1).copied().unwrap_or(lines.len());
        // Leading blank lines keep the parser's line numbers file-relative.
        let block = "\n".repeat(from) + &lines[from..to].join("\n");
        let maze = Maze::from_text(&block).map_err(|e| match e {
            SearchError::InvalidInstance(msg) => split_line_number(&msg)
                .map(|(line, message)| BenchError::Parse { path: path.to_path_buf(), line, message })
                .unwrap_or_else(|| BenchError::Parse { path: path.to_path_buf(), line: from + 1, message: msg }),
            other => other.into(),
        })?;
        out.push(Instance::Maze(maze));
    }
    Ok(out)
}

fn split_line_number(msg: &str) -> Option<(usize, String)> {
    let rest = msg.strip_prefix("line ")?;
    let (n, message) = rest.split_once(": ")?;
    Some((n.parse().ok()?, message.to_string()))
}

/// What to benchmark on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    /// Random solvable puzzles with the given side (3 = Eight Puzzle).
    Puzzle { side: usize },
    /// Seeded mazes; instances with `h1(s) < min_h` are skipped.
    Maze { width: u32, height: u32, skip_percent: u32, min_h: u64 },
    /// Instances read from a file.
    File { path: std::path::PathBuf, format: InstanceFormat },
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Puzzle { side } => write!(f, "puzzle{}", side * side - 1),
            DomainSpec::Maze { width, height, skip_percent, min_h } => write!(f, "maze{width}x{height}:{skip_percent}:{min_h}"),
            DomainSpec::File { path, .. } => write!(f, "{}", path.display()),
        }
    }
}

impl FromStr for DomainSpec {
    type Err = BenchError;

    /// `puzzle8`, `puzzle15`, `maze50x50`, `maze200x200:skip:min_h` (skip defaults to 3%),
    /// `korf15:path` or `mazefile:path`.
    fn from_str(s: &str) -> Result<Self> {
        let usage = || BenchError::Usage(format!("unknown domain `{s}` (puzzle8|puzzle15|mazeWxH[:skip[:min_h]]|korf15:PATH|mazefile:PATH)"));
        if let Some(path) = s.strip_prefix("korf15:") {
            return Ok(DomainSpec::File { path: path.into(), format: InstanceFormat::Korf15 });
        }
        if let Some(path) = s.strip_prefix("mazefile:") {
            return Ok(DomainSpec::File { path: path.into(), format: InstanceFormat::Maze });
        }
        match s {
            "puzzle8" => return Ok(DomainSpec::Puzzle { side: 3 }),
            "puzzle15" => return Ok(DomainSpec::Puzzle { side: 4 }),
            _ => {}
        }
        let rest = s.strip_prefix("maze").ok_or_else(usage)?;
        let mut parts = rest.split(':');
        let (w, h) = parts.next().and_then(|d| d.split_once('x')).ok_or_else(usage)?;
        let width = w.parse().map_err(|_| usage())?;
        let height = h.parse().map_err(|_| usage())?;
        let skip_percent = parts.next().map(|p| p.parse()).transpose().map_err(|_| usage())?.unwrap_or(DEFAULT_SKIP_PERCENT);
        let min_h = parts.next().map(|p| p.parse()).transpose().map_err(|_| usage())?.unwrap_or(0);
        if parts.next().is_some() {
            return Err(usage());
        }
        Ok(DomainSpec::Maze { width, height, skip_percent, min_h })
    }
}

/// Wall-skip percentage of generated mazes unless the spec names one.
pub const DEFAULT_SKIP_PERCENT: u32 = 3;

/// Upper bound on seeds tried per requested maze before giving up on the
/// `min_h` filter.
const MAX_SEED_TRIES: u64 = 10_000;

/// `count` instances for `spec`; generated instance `i` draws from seeds
/// starting at `seed + i`, so results are reproducible.
pub fn instances_for(spec: &DomainSpec, count: usize, seed: u64) -> Result<Vec<Instance>> {
    match spec {
        DomainSpec::Puzzle { side } => {
            Ok((0..count as u64).map(|i| Instance::Puzzle(SlidingPuzzle::random(*side, seed.wrapping_add(i)))).collect())
        }
        DomainSpec::Maze { width, height, skip_percent, min_h } => {
            let mut out = Vec::with_capacity(count);
            let mut next = seed;
            let mut tries = 0u64;
            while out.len() < count {
                let maze = generate_maze(*width, *height, next, *skip_percent)?;
                next = next.wrapping_add(1);
                tries += 1;
                if maze.heuristic(&maze.start(), Direction::Forward) >= Cost::from(*min_h) {
                    out.push(Instance::Maze(maze));
                    tries = 0;
                } else if tries > MAX_SEED_TRIES {
                    return Err(BenchError::Usage(format!("no {width}x{height} maze with h(s) >= {min_h} in {MAX_SEED_TRIES} seeds")));
                }
            }
            Ok(out)
        }
        DomainSpec::File { path, format } => {
            let mut all = load_instances(path, *format)?;
            all.truncate(count);
            Ok(all)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_specs_parse() {
        assert_eq!("puzzle8".parse::<DomainSpec>().unwrap(), DomainSpec::Puzzle { side: 3 });
        assert_eq!(
            "maze200x200:0:200".parse::<DomainSpec>().unwrap(),
            DomainSpec::Maze { width: 200, height: 200, skip_percent: 0, min_h: 200 }
        );
        assert_eq!(
            "maze50x40".parse::<DomainSpec>().unwrap(),
            DomainSpec::Maze { width: 50, height: 40, skip_percent: 3, min_h: 0 }
        );
        assert!("maze50".parse::<DomainSpec>().is_err());
        assert!("chess".parse::<DomainSpec>().is_err());
    }

    #[test]
    fn maze_filter_is_respected() {
        let spec = DomainSpec::Maze { width: 30, height: 30, skip_percent: 0, min_h: 30 };
        for inst in instances_for(&spec, 5, 3).unwrap() {
            assert!(inst.start_h() >= Cost::from(30));
        }
    }

    #[test]
    fn korf_rejects_repeated_tile() {
        let text = "1 0 2 3 4 5 6 7 8 9 10 11 12 13 14 15\n1 1 3 4 5 6 7 8 9 10 11 12 13 14 15 0\n";
        match parse_korf(text, Path::new("x")) {
            Err(BenchError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}

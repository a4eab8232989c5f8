//! Randomized grid mazes with 4-connected unit moves.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::domain::{Direction, Domain, PairwiseHeuristic};
use crate::error::{Result, SearchError};

const EAST: u8 = 1;
const SOUTH: u8 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MazeCell {
    pub row: u32,
    pub col: u32,
}

impl MazeCell {
    pub fn new(row: u32, col: u32) -> MazeCell {
        MazeCell { row, col }
    }

    #[inline]
    pub fn manhattan(&self, other: &MazeCell) -> Cost {
        Cost((self.row.abs_diff(other.row) + self.col.abs_diff(other.col)) as u64)
    }
}

/// A `width x height` grid; each cell records whether the walls on its east
/// and south sides are present. Outer boundary walls are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maze {
    width: u32,
    height: u32,
    walls: Vec<u8>,
    start: MazeCell,
    goal: MazeCell,
    seed: u64,
    skip_percent: u32,
}

/// Carves a maze by randomized depth-first search, then removes every
/// remaining internal wall with probability `skip_percent / 100`.
///
/// The result, including `s` and `t`, is a pure function of the arguments.
pub fn generate_maze(width: u32, height: u32, seed: u64, skip_percent: u32) -> Result<Maze> {
    if width < 2 || height < 2 {
        return Err(SearchError::InvalidInstance(format!("maze {}x{} is degenerate", width, height)));
    }
    if skip_percent > 100 {
        return Err(SearchError::InvalidInstance(format!("wall skip {}% exceeds 100", skip_percent)));
    }
    let (w, h) = (width as usize, height as usize);
    let mut walls = vec![EAST | SOUTH; w * h];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut visited = vec![false; w * h];
    let first = rng.gen_range(0..w * h);
    visited[first] = true;
    let mut stack = vec![first];
    let mut options = Vec::with_capacity(4);
    while let Some(&cur) = stack.last() {
        let (r, c) = (cur / w, cur % w);
        options.clear();
        if r > 0 && !visited[cur - w] {
            options.push(cur - w);
        }
        if c > 0 && !visited[cur - 1] {
            options.push(cur - 1);
        }
        if c + 1 < w && !visited[cur + 1] {
            options.push(cur + 1);
        }
        if r + 1 < h && !visited[cur + w] {
            options.push(cur + w);
        }
        if options.is_empty() {
            stack.pop();
            continue;
        }
        let next = options[rng.gen_range(0..options.len())];
        let (lo, hi) = (cur.min(next), cur.max(next));
        walls[lo] &= if hi == lo + 1 { !EAST } else { !SOUTH };
        visited[next] = true;
        stack.push(next);
    }

    for (i, cell) in walls.iter_mut().enumerate() {
        let (r, c) = (i / w, i % w);
        for (bit, internal) in [(EAST, c + 1 < w), (SOUTH, r + 1 < h)] {
            if internal && *cell & bit != 0 && rng.gen_range(0..100) < skip_percent {
                *cell &= !bit;
            }
        }
    }

    let pick = |rng: &mut ChaCha8Rng| MazeCell::new(rng.gen_range(0..height), rng.gen_range(0..width));
    let start = pick(&mut rng);
    let goal = pick(&mut rng);
    Ok(Maze { width, height, walls, start, goal, seed, skip_percent })
}

impl Maze {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn skip_percent(&self) -> u32 {
        self.skip_percent
    }

    pub fn cell_count(&self) -> usize {
        self.walls.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = MazeCell> + Clone + '_ {
        (0..self.height).flat_map(move |r| (0..self.width).map(move |c| MazeCell::new(r, c)))
    }

    pub fn with_endpoints(&self, start: MazeCell, goal: MazeCell) -> Result<Maze> {
        for c in [start, goal] {
            if !self.contains(c) {
                return Err(SearchError::InvalidInstance(format!("{:?} outside the maze", c)));
            }
        }
        Ok(Maze { start, goal, ..self.clone() })
    }

    pub fn contains(&self, c: MazeCell) -> bool {
        c.row < self.height && c.col < self.width
    }

    #[inline]
    fn idx(&self, c: MazeCell) -> usize {
        c.row as usize * self.width as usize + c.col as usize
    }

    pub fn has_east_wall(&self, c: MazeCell) -> bool {
        c.col + 1 >= self.width || self.walls[self.idx(c)] & EAST != 0
    }

    pub fn has_south_wall(&self, c: MazeCell) -> bool {
        c.row + 1 >= self.height || self.walls[self.idx(c)] & SOUTH != 0
    }

    /// Number of internal walls still standing.
    pub fn wall_count(&self) -> usize {
        self.cells()
            .map(|c| {
                (c.col + 1 < self.width && self.has_east_wall(c)) as usize
                    + (c.row + 1 < self.height && self.has_south_wall(c)) as usize
            })
            .sum()
    }

    /// Open neighbors of `c`, each at cost 1.
    pub fn neighbors_of(&self, c: MazeCell, out: &mut Vec<(MazeCell, Cost)>) {
        if c.row > 0 {
            let n = MazeCell::new(c.row - 1, c.col);
            if !self.has_south_wall(n) {
                out.push((n, Cost::ONE));
            }
        }
        if c.col > 0 {
            let n = MazeCell::new(c.row, c.col - 1);
            if !self.has_east_wall(n) {
                out.push((n, Cost::ONE));
            }
        }
        if !self.has_east_wall(c) {
            out.push((MazeCell::new(c.row, c.col + 1), Cost::ONE));
        }
        if !self.has_south_wall(c) {
            out.push((MazeCell::new(c.row + 1, c.col), Cost::ONE));
        }
    }

    /// Serializes as the header line `W H seed skip%` followed by one row of
    /// wall digits per grid row (bit 0 east, bit 1 south), then `s` and `t`.
    pub fn to_text(&self, with_walls: bool) -> String {
        let mut out = format!("{} {} {} {}\n", self.width, self.height, self.seed, self.skip_percent);
        if with_walls {
            for r in 0..self.height as usize {
                let w = self.width as usize;
                for &cell in &self.walls[r * w..(r + 1) * w] {
                    out.push((b'0' + cell) as char);
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "# s {} {} t {} {}", self.start.row, self.start.col, self.goal.row, self.goal.col);
        out
    }

    /// Parses [`Maze::to_text`] output. Header-only text regenerates the
    /// maze from its seed.
    pub fn from_text(text: &str) -> Result<Maze> {
        let bad = |line: usize, msg: &str| SearchError::InvalidInstance(format!("line {}: {}", line, msg));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(bad(ln + 1, "header must be `W H seed skip%`"));
        }
        let num = |i: usize| fields[i].trim_end_matches('%').parse::<u64>().map_err(|_| bad(ln + 1, "bad number"));
        let (w, h, seed, skip) = (num(0)? as u32, num(1)? as u32, num(2)?, num(3)? as u32);
        let mut maze = generate_maze(w, h, seed, skip)?;
        let rows: Vec<(usize, &str)> = lines.collect();
        if !rows.is_empty() {
            if rows.len() != h as usize {
                return Err(bad(rows[0].0 + 1, &format!("expected {} wall rows, found {}", h, rows.len())));
            }
            for (r, (ln, row)) in rows.iter().enumerate() {
                let row = row.trim();
                if row.len() != w as usize {
                    return Err(bad(ln + 1, &format!("expected {} wall digits", w)));
                }
                for (c, ch) in row.bytes().enumerate() {
                    if !(b'0'..=b'3').contains(&ch) {
                        return Err(bad(ln + 1, "wall digits must be 0-3"));
                    }
                    maze.walls[r * w as usize + c] = ch - b'0';
                }
            }
        }
        for line in text.lines().filter(|l| l.starts_with("# s ")) {
            let v: Vec<u32> = line.split_whitespace().filter_map(|x| x.parse().ok()).collect();
            if v.len() == 4 {
                maze = maze.with_endpoints(MazeCell::new(v[0], v[1]), MazeCell::new(v[2], v[3]))?;
            }
        }
        Ok(maze)
    }
}

impl Domain for Maze {
    type State = MazeCell;

    fn start(&self) -> MazeCell {
        self.start
    }

    fn goal(&self) -> MazeCell {
        self.goal
    }

    fn successors(&self, state: &MazeCell, out: &mut Vec<(MazeCell, Cost)>) {
        self.neighbors_of(*state, out)
    }

    fn predecessors(&self, state: &MazeCell, out: &mut Vec<(MazeCell, Cost)>) {
        self.neighbors_of(*state, out)
    }

    #[inline]
    fn heuristic(&self, state: &MazeCell, direction: Direction) -> Cost {
        match direction {
            Direction::Forward => state.manhattan(&self.goal),
            Direction::Backward => state.manhattan(&self.start),
        }
    }
}

impl PairwiseHeuristic for Maze {
    fn estimate_between(&self, from: &MazeCell, to: &MazeCell) -> Cost {
        from.manhattan(to)
    }
}

//! Bounds on `f_d(n)`, the maximum number of holes in an `n`-tile
//! `d`-polyomino, plus an exhaustive enumeration oracle for small `n`.
//!
//! The upper bound comes from the face-partition identity: with `b >= n-1`
//! interior faces (the dual graph is connected) and an isoperimetric outer
//! perimeter `p_o >= 2d(n+h)^((d-1)/d)`, the hole faces satisfy
//! `2dh <= 2dn - 2b - p_o`, which caps `h`. The lower bound is a certified
//! witness: the hole count of an actually constructed polyomino. The
//! oracle enumerates every fixed `n`-omino once (growth from a canonical
//! root with forbidden-cell marking, in any dimension) and takes the
//! maximum hole count.

use num_bigint::BigInt;
use serde::Serialize;

use crate::builder::build_for_n;
use crate::grid::GridBox;
use crate::{Budget, Error, Result};

/// Largest `h` with `2dh <= 2dn - 2(n-1) - 2d(n+h)^((d-1)/d)`.
///
/// The comparison is exact: both sides are raised to the `d`-th power in
/// big-integer arithmetic, so no float rounding can flip a boundary case.
pub fn upper_bound(dim: usize, n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let valid = |h: u64| -> bool {
        let d = dim as i128;
        let slack = 2 * d * n as i128 - 2 * (n as i128 - 1) - 2 * d * h as i128;
        if slack < 0 {
            return false;
        }
        // 2d (n+h)^((d-1)/d) <= slack  <=>  (2d)^d (n+h)^(d-1) <= slack^d
        let lhs = BigInt::from(2 * d).pow(dim as u32) * BigInt::from(n + h).pow(dim as u32 - 1);
        let rhs = BigInt::from(slack).pow(dim as u32);
        lhs <= rhs
    };
    // valid h form a prefix: the left side grows with h, the right shrinks
    debug_assert!(valid(0));
    let mut lo = 0u64; // valid
    let mut hi = (dim as u64 - 1) * n + 2; // invalid
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if valid(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The simplified closed form `(d-1)/d * n - n^((d-1)/d)`.
///
/// This drops a `+1/d` term from the derivation it summarizes and is
/// already violated at `d = 2, n = 7` (where the true maximum is 1); it is
/// reported for reference, never used as a bound.
pub fn display_upper_bound(dim: usize, n: u64) -> f64 {
    let d = dim as f64;
    (d - 1.0) / d * n as f64 - (n as f64).powf((d - 1.0) / d)
}

/// Constructive lower bound: the hole count of the built `n`-tile witness.
pub fn lower_bound(dim: usize, n: u64, budget: &Budget) -> Result<u64> {
    Ok(build_for_n(dim, n, budget)?.1.holes)
}

/// Hole cap for toric polyominoes: `floor(((d-1) n + 1) / d)`, from the
/// identity without an outer perimeter.
pub fn toric_upper_bound(dim: usize, n: u64) -> u64 {
    ((dim as u64 - 1) * n + 1) / dim as u64
}

/// Combined report for one `(d, n)` pair.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub dim: usize,
    pub n: u64,
    /// Certified constructive lower bound.
    pub lower: u64,
    /// Upper bound from the face-partition inequality.
    pub upper: u64,
    /// Exact maximum by exhaustive enumeration, when requested.
    pub exact: Option<u64>,
    /// The simplified closed form, for reference.
    pub display_bound: f64,
    /// Whether the exact value exceeds the simplified closed form.
    pub display_bound_violated: Option<bool>,
}

pub fn bound_report(
    dim: usize,
    n: u64,
    exact: bool,
    jobs: usize,
    budget: &Budget,
) -> Result<BoundReport> {
    let lower = lower_bound(dim, n, budget)?;
    let upper = upper_bound(dim, n);
    let exact = if exact {
        Some(brute_force_max_holes(dim, n, jobs, budget)?)
    } else {
        None
    };
    let display_bound = display_upper_bound(dim, n);
    if let Some(f) = exact {
        assert!(lower <= f && f <= upper, "bound sandwich failed: {lower} <= {f} <= {upper}");
    }
    Ok(BoundReport {
        dim,
        n,
        lower,
        upper,
        exact,
        display_bound,
        display_bound_violated: exact.map(|f| f as f64 > display_bound),
    })
}

/// Board for fixed-polyomino enumeration: the cells a connected `n`-set
/// whose lexicographically minimal cell is the origin can reach.
struct EnumBoard {
    dim: usize,
    n: usize,
    grid: GridBox,
    allowed: Vec<bool>,
    origin: usize,
}

impl EnumBoard {
    fn new(dim: usize, n: usize) -> EnumBoard {
        let m = n as i64 - 1;
        let mut lo = vec![-m; dim];
        let hi = vec![m; dim];
        lo[0] = 0;
        let grid = GridBox::new(&lo, &hi, 0);
        let mut allowed = vec![false; grid.len()];
        for idx in 0..grid.len() {
            let cell = grid.cell_at(idx);
            // origin must stay the lexicographic minimum
            let lex_nonneg = match cell.iter().find(|&&v| v != 0) {
                Some(&v) => v > 0,
                None => true,
            };
            allowed[idx] = lex_nonneg;
        }
        let origin = grid.index(&vec![0; dim]).expect("origin on board");
        EnumBoard {
            dim,
            n,
            grid,
            allowed,
            origin,
        }
    }

    /// A depth-2 work unit: the origin plus one second cell, with the
    /// not-yet-tried second cells and the full reached set captured.
    fn depth2_units(&self) -> Vec<Depth2Unit> {
        let mut candidates = Vec::new();
        for axis in 0..self.dim {
            for dir in [1i64, -1] {
                if let Some(nb) = self.grid.face_neighbor(self.origin, axis, dir) {
                    if self.allowed[nb] {
                        candidates.push(nb);
                    }
                }
            }
        }
        // mirror the sequential pop-from-the-back order
        (0..candidates.len())
            .rev()
            .map(|t| Depth2Unit {
                second: candidates[t],
                untried: candidates[..t].to_vec(),
                all_candidates: candidates.clone(),
            })
            .collect()
    }
}

struct Depth2Unit {
    second: usize,
    untried: Vec<usize>,
    all_candidates: Vec<usize>,
}

struct Enumerator<'b, F: FnMut(&[i64])> {
    board: &'b EnumBoard,
    occupied: Vec<bool>,
    reached: Vec<bool>,
    cells: Vec<usize>,
    coords: Vec<i64>,
    count: u64,
    visit: F,
}

impl<'b, F: FnMut(&[i64])> Enumerator<'b, F> {
    fn new(board: &'b EnumBoard, visit: F) -> Self {
        Enumerator {
            board,
            occupied: vec![false; board.grid.len()],
            reached: vec![false; board.grid.len()],
            cells: Vec::with_capacity(board.n),
            coords: Vec::with_capacity(board.n * board.dim),
            count: 0,
            visit,
        }
    }

    fn place(&mut self, idx: usize) {
        self.occupied[idx] = true;
        self.cells.push(idx);
        self.coords.extend(self.board.grid.cell_at(idx));
    }

    fn unplace(&mut self) {
        let idx = self.cells.pop().expect("matching place");
        self.occupied[idx] = false;
        self.coords.truncate(self.coords.len() - self.board.dim);
    }

    fn leaf(&mut self) {
        self.count += 1;
        (self.visit)(&self.coords);
    }

    /// One unit of the depth-2 partition of the search tree.
    fn run_unit(&mut self, unit: &Depth2Unit) {
        self.place(self.board.origin);
        self.reached[self.board.origin] = true;
        for &c in &unit.all_candidates {
            self.reached[c] = true;
        }
        self.place(unit.second);
        if self.board.n == 2 {
            self.leaf();
        } else {
            let mut untried = unit.untried.clone();
            let added = self.discover(unit.second, &mut untried);
            self.extend(untried, 2);
            for idx in added {
                self.reached[idx] = false;
            }
        }
        self.unplace();
        self.unplace();
        self.reached[self.board.origin] = false;
        for &c in &unit.all_candidates {
            self.reached[c] = false;
        }
    }

    /// Pushes the unreached allowed neighbors of `idx` onto `untried`,
    /// marking them reached; returns them for later unmarking.
    fn discover(&mut self, idx: usize, untried: &mut Vec<usize>) -> Vec<usize> {
        let mut added = Vec::new();
        for axis in 0..self.board.dim {
            for dir in [1i64, -1] {
                if let Some(nb) = self.board.grid.face_neighbor(idx, axis, dir) {
                    if self.board.allowed[nb] && !self.occupied[nb] && !self.reached[nb] {
                        self.reached[nb] = true;
                        untried.push(nb);
                        added.push(nb);
                    }
                }
            }
        }
        added
    }

    /// Classic growth recursion: pop an untried cell, branch on including
    /// it; once popped it stays excluded from every later branch at this
    /// level (its `reached` mark outlives the subtree).
    fn extend(&mut self, mut untried: Vec<usize>, size: usize) {
        while let Some(u) = untried.pop() {
            self.place(u);
            if size + 1 == self.board.n {
                self.leaf();
            } else {
                let mut child = untried.clone();
                let added = self.discover(u, &mut child);
                self.extend(child, size + 1);
                for idx in added {
                    self.reached[idx] = false;
                }
            }
            self.unplace();
        }
    }
}

fn check_enum_inputs(dim: usize, n: u64, budget: &Budget) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    if n == 0 {
        return Err(Error::Precondition {
            condition: "tile count n must be positive".into(),
        });
    }
    let cap = budget.enum_cap(dim);
    if n > cap as u64 {
        return Err(Error::Capacity {
            what: format!("exhaustive enumeration of {n}-tile polyominoes in dimension {dim}"),
            needed: n,
            limit: cap as u64,
        });
    }
    Ok(())
}

/// Visits every fixed `n`-omino (each translation class once, normalized
/// so the lexicographically minimal cell is the origin) single-threaded.
/// The visitor receives the `n * dim` coordinates flattened. Returns the
/// number of polyominoes visited.
pub fn for_each_fixed<F: FnMut(&[i64])>(
    dim: usize,
    n: u64,
    budget: &Budget,
    visit: F,
) -> Result<u64> {
    check_enum_inputs(dim, n, budget)?;
    let board = EnumBoard::new(dim, n as usize);
    let mut enumerator = Enumerator::new(&board, visit);
    if n == 1 {
        enumerator.place(board.origin);
        enumerator.leaf();
        enumerator.unplace();
    } else {
        for unit in board.depth2_units() {
            enumerator.run_unit(&unit);
        }
    }
    Ok(enumerator.count)
}

/// Number of fixed `n`-ominoes in dimension `dim`.
pub fn count_fixed(dim: usize, n: u64, budget: &Budget) -> Result<u64> {
    for_each_fixed(dim, n, budget, |_| {})
}

/// Scratch storage for counting holes of one enumerated polyomino without
/// per-leaf allocation.
struct HoleScratch {
    dim: usize,
    occ_epoch: Vec<u32>,
    vis_epoch: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
    lo: Vec<i64>,
    extents: Vec<usize>,
    strides: Vec<usize>,
}

impl HoleScratch {
    fn new(dim: usize, n: usize) -> HoleScratch {
        let capacity = (n + 2).pow(dim as u32);
        HoleScratch {
            dim,
            occ_epoch: vec![0; capacity],
            vis_epoch: vec![0; capacity],
            epoch: 0,
            stack: Vec::with_capacity(capacity),
            lo: vec![0; dim],
            extents: vec![0; dim],
            strides: vec![0; dim],
        }
    }

    /// Bounded complement components of the cells in `coords`
    /// (flattened), inside their bounding box inflated by one layer.
    fn count_holes(&mut self, coords: &[i64]) -> u64 {
        let dim = self.dim;
        let n = coords.len() / dim;
        for k in 0..dim {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for c in 0..n {
                let v = coords[c * dim + k];
                lo = lo.min(v);
                hi = hi.max(v);
            }
            self.lo[k] = lo - 1;
            self.extents[k] = (hi - lo + 3) as usize;
        }
        let mut stride = 1;
        for k in (0..dim).rev() {
            self.strides[k] = stride;
            stride *= self.extents[k];
        }
        let total = stride;
        self.epoch += 1;
        let epoch = self.epoch;
        for c in 0..n {
            let mut idx = 0;
            for k in 0..dim {
                idx += (coords[c * dim + k] - self.lo[k]) as usize * self.strides[k];
            }
            self.occ_epoch[idx] = epoch;
        }

        // flood the outside from the corner of the inflated box
        self.flood(0, total);
        let mut holes = 0;
        for idx in 0..total {
            if self.occ_epoch[idx] != epoch && self.vis_epoch[idx] != epoch {
                holes += 1;
                self.flood(idx, total);
            }
        }
        holes
    }

    fn flood(&mut self, start: usize, total: usize) {
        debug_assert!(start < total);
        let epoch = self.epoch;
        self.vis_epoch[start] = epoch;
        self.stack.push(start);
        while let Some(idx) = self.stack.pop() {
            for k in 0..self.dim {
                let coord = (idx / self.strides[k]) % self.extents[k];
                if coord > 0 {
                    let nb = idx - self.strides[k];
                    if self.occ_epoch[nb] != epoch && self.vis_epoch[nb] != epoch {
                        self.vis_epoch[nb] = epoch;
                        self.stack.push(nb);
                    }
                }
                if coord + 1 < self.extents[k] {
                    let nb = idx + self.strides[k];
                    if self.occ_epoch[nb] != epoch && self.vis_epoch[nb] != epoch {
                        self.vis_epoch[nb] = epoch;
                        self.stack.push(nb);
                    }
                }
            }
        }
    }
}

/// Exact `f_d(n)` by exhaustive enumeration: the maximum hole count over
/// all fixed `n`-ominoes. The search tree is partitioned at depth 2 into
/// independent units distributed over `jobs` threads; results merge by
/// max-reduction.
pub fn brute_force_max_holes(dim: usize, n: u64, jobs: usize, budget: &Budget) -> Result<u64> {
    check_enum_inputs(dim, n, budget)?;
    let board = EnumBoard::new(dim, n as usize);
    if n == 1 {
        return Ok(0);
    }
    let units = board.depth2_units();
    let jobs = jobs.max(1).min(units.len());

    if jobs == 1 {
        let mut scratch = HoleScratch::new(dim, n as usize);
        let mut best = 0u64;
        let mut enumerator =
            Enumerator::new(&board, |coords| best = best.max(scratch.count_holes(coords)));
        for unit in &units {
            enumerator.run_unit(unit);
        }
        return Ok(best);
    }

    let chunks: Vec<&[Depth2Unit]> = units.chunks(units.len().div_ceil(jobs)).collect();
    let best = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                let board = &board;
                scope.spawn(move || {
                    let mut scratch = HoleScratch::new(dim, n as usize);
                    let mut best = 0u64;
                    let mut enumerator = Enumerator::new(board, |coords| {
                        best = best.max(scratch.count_holes(coords))
                    });
                    for unit in chunk {
                        enumerator.run_unit(unit);
                    }
                    best
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .max()
            .unwrap_or(0)
    });
    Ok(best)
}

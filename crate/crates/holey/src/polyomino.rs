//! Cell sets, rook-connectivity, hole counting, and the face census.
//!
//! Cells are labeled by the integer coordinates of their cube centers. A
//! finite cell set is a polyomino when it is nonempty and rook-connected
//! (connected under face adjacency). A *hole* is a bounded connected
//! component of the complement; for these sets the hole count equals the
//! top Betti number.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::grid::GridBox;
use crate::{Error, Result};

/// A lattice cell: the coordinates of a unit cube's center.
pub type Cell = Vec<i64>;

/// A finite set of cells in a fixed ambient dimension `>= 2`.
///
/// Cells are kept deduplicated and iterate in lexicographic order.
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    dim: usize,
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new(dim: usize) -> Result<CellSet> {
        if dim < 2 {
            return Err(Error::InvalidDimension { got: dim, min: 2 });
        }
        Ok(CellSet {
            dim,
            cells: BTreeSet::new(),
        })
    }

    pub fn from_cells<I>(dim: usize, cells: I) -> Result<CellSet>
    where
        I: IntoIterator<Item = Cell>,
    {
        let mut set = CellSet::new(dim)?;
        for cell in cells {
            if cell.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    got: cell.len(),
                });
            }
            set.cells.insert(cell);
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &[i64]) -> bool {
        self.cells.contains(cell)
    }

    /// Cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    /// Componentwise min and max over all cells; `None` when empty.
    pub fn bounding_box(&self) -> Option<(Cell, Cell)> {
        let mut iter = self.cells.iter();
        let first = iter.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for cell in iter {
            for k in 0..self.dim {
                lo[k] = lo[k].min(cell[k]);
                hi[k] = hi[k].max(cell[k]);
            }
        }
        Some((lo, hi))
    }

    pub fn translated(&self, shift: &[i64]) -> Result<CellSet> {
        if shift.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                got: shift.len(),
            });
        }
        CellSet::from_cells(
            self.dim,
            self.cells
                .iter()
                .map(|c| c.iter().zip(shift).map(|(a, b)| a + b).collect()),
        )
    }
}

/// Face census of a cell set: every one of the `2dn` cube faces is either
/// shared with an adjacent cell, borders a hole, or lies on the outer
/// perimeter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    /// Tile count.
    pub n: u64,
    /// Interior faces shared by two cells of the set.
    pub b: u64,
    /// Faces bounding a hole.
    pub p_h: u64,
    /// Faces on the outer perimeter.
    pub p_o: u64,
    /// Number of holes.
    pub holes: u64,
}

impl FaceCensus {
    /// The face-partition identity `2dn = p_o + 2b + p_h`.
    pub fn identity_holds(&self, dim: usize) -> bool {
        2 * dim as u64 * self.n == self.p_o + 2 * self.b + self.p_h
    }
}

/// Complement labeling of the bounding box inflated by one layer.
struct ComplementLabels {
    grid: GridBox,
    occupied: Vec<bool>,
    /// Component id per empty cell, starting at 1; 0 for occupied cells.
    label: Vec<u32>,
    /// Per component (index `id - 1`): whether it touches the inflated
    /// boundary, i.e. is the unbounded outside.
    touches_boundary: Vec<bool>,
}

impl ComplementLabels {
    fn compute(set: &CellSet) -> Option<ComplementLabels> {
        let (lo, hi) = set.bounding_box()?;
        let grid = GridBox::new(&lo, &hi, 1);
        let mut occupied = vec![false; grid.len()];
        for cell in set.iter() {
            occupied[grid.index(cell).expect("cell inside own bounding box")] = true;
        }
        let mut label = vec![0u32; grid.len()];
        let mut touches_boundary = Vec::new();
        let mut stack = Vec::new();
        let dim = grid.dim();
        for start in 0..grid.len() {
            if occupied[start] || label[start] != 0 {
                continue;
            }
            let id = touches_boundary.len() as u32 + 1;
            let mut touches = false;
            label[start] = id;
            stack.push(start);
            while let Some(idx) = stack.pop() {
                if grid.on_box_boundary(idx) {
                    touches = true;
                }
                for axis in 0..dim {
                    for dir in [-1i64, 1] {
                        if let Some(nb) = grid.face_neighbor(idx, axis, dir) {
                            if !occupied[nb] && label[nb] == 0 {
                                label[nb] = id;
                                stack.push(nb);
                            }
                        }
                    }
                }
            }
            touches_boundary.push(touches);
        }
        Some(ComplementLabels {
            grid,
            occupied,
            label,
            touches_boundary,
        })
    }

    fn hole_count(&self) -> u64 {
        self.touches_boundary.iter().filter(|&&t| !t).count() as u64
    }

    fn is_outside(&self, label: u32) -> bool {
        self.touches_boundary[label as usize - 1]
    }
}

/// True iff the face-adjacency graph on the cells is connected.
/// The empty set is not considered connected.
pub fn is_rook_connected(set: &CellSet) -> bool {
    let Some((lo, hi)) = set.bounding_box() else {
        return false;
    };
    let grid = GridBox::new(&lo, &hi, 0);
    let mut occupied = vec![false; grid.len()];
    let mut start = None;
    for cell in set.iter() {
        let idx = grid.index(cell).expect("cell inside own bounding box");
        occupied[idx] = true;
        start.get_or_insert(idx);
    }
    let Some(start) = start else { return false };
    let mut seen = vec![false; grid.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut visited = 0usize;
    while let Some(idx) = stack.pop() {
        visited += 1;
        for axis in 0..grid.dim() {
            for dir in [-1i64, 1] {
                if let Some(nb) = grid.face_neighbor(idx, axis, dir) {
                    if occupied[nb] && !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
    }
    visited == set.len()
}

/// The holes of a cell set, with the cells of each hole component.
#[derive(Clone, Debug)]
pub struct HoleReport {
    pub count: u64,
    pub components: Vec<Vec<Cell>>,
}

/// Flood-fills the complement inside the bounding box inflated by one
/// layer; every complement component not reaching the inflated boundary is
/// a hole.
pub fn holes(set: &CellSet) -> HoleReport {
    let Some(labels) = ComplementLabels::compute(set) else {
        return HoleReport {
            count: 0,
            components: Vec::new(),
        };
    };
    let mut components: Vec<Vec<Cell>> = Vec::new();
    let mut slot = vec![usize::MAX; labels.touches_boundary.len()];
    for (id0, &touches) in labels.touches_boundary.iter().enumerate() {
        if !touches {
            slot[id0] = components.len();
            components.push(Vec::new());
        }
    }
    for idx in 0..labels.grid.len() {
        let id = labels.label[idx];
        if id != 0 && slot[id as usize - 1] != usize::MAX {
            components[slot[id as usize - 1]].push(labels.grid.cell_at(idx));
        }
    }
    HoleReport {
        count: components.len() as u64,
        components,
    }
}

/// Independent hole counter used to cross-check [`holes`]: union-find over
/// the complement cells instead of a breadth-first flood fill.
pub fn holes_by_union_find(set: &CellSet) -> u64 {
    let Some((lo, hi)) = set.bounding_box() else {
        return 0;
    };
    let grid = GridBox::new(&lo, &hi, 1);
    let mut occupied = vec![false; grid.len()];
    for cell in set.iter() {
        occupied[grid.index(cell).expect("cell inside own bounding box")] = true;
    }

    // one extra slot acts as the "unbounded outside" node
    let outside = grid.len();
    let mut parent: Vec<usize> = (0..=grid.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    fn union(parent: &mut [usize], a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }

    for idx in 0..grid.len() {
        if occupied[idx] {
            continue;
        }
        if grid.on_box_boundary(idx) {
            union(&mut parent, idx, outside);
        }
        for axis in 0..grid.dim() {
            if let Some(nb) = grid.face_neighbor(idx, axis, 1) {
                if !occupied[nb] {
                    union(&mut parent, idx, nb);
                }
            }
        }
    }

    let outside_root = find(&mut parent, outside);
    let mut roots = BTreeSet::new();
    for idx in 0..grid.len() {
        if !occupied[idx] {
            let r = find(&mut parent, idx);
            if r != outside_root {
                roots.insert(r);
            }
        }
    }
    roots.len() as u64
}

/// Classifies all `2dn` faces and counts holes in one pass.
///
/// Panics if the face-partition identity or the hole/perimeter lower
/// bounds fail; they are structural invariants of the computation.
pub fn face_census(set: &CellSet) -> FaceCensus {
    let dim = set.dim() as u64;
    let Some(labels) = ComplementLabels::compute(set) else {
        return FaceCensus {
            n: 0,
            b: 0,
            p_h: 0,
            p_o: 0,
            holes: 0,
        };
    };
    let mut shared_incidences = 0u64;
    let mut p_h = 0u64;
    let mut p_o = 0u64;
    for idx in 0..labels.grid.len() {
        if !labels.occupied[idx] {
            continue;
        }
        for axis in 0..labels.grid.dim() {
            for dir in [-1i64, 1] {
                let nb = labels
                    .grid
                    .face_neighbor(idx, axis, dir)
                    .expect("occupied cells sit inside the margin");
                if labels.occupied[nb] {
                    shared_incidences += 1;
                } else if labels.is_outside(labels.label[nb]) {
                    p_o += 1;
                } else {
                    p_h += 1;
                }
            }
        }
    }
    let census = FaceCensus {
        n: set.len() as u64,
        b: shared_incidences / 2,
        p_h,
        p_o,
        holes: labels.hole_count(),
    };
    assert!(
        census.identity_holds(set.dim()),
        "face identity failed: {census:?}"
    );
    assert!(
        census.p_h >= 2 * dim * census.holes,
        "hole-face lower bound failed: {census:?}"
    );
    if is_rook_connected(set) {
        assert!(
            census.b + 1 >= census.n,
            "interior faces below tree bound: {census:?}"
        );
    }
    census
}

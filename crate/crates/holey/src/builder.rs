//! Shell-and-sponge polyomino constructions.
//!
//! Every construction starts from a domain `D`: a union of fundamental
//! parallelotopes (boxes of shape `q x 1 x ... x 1 x 2`, `q = 2d - 1`)
//! surrounded by a one-cube-thick shell. The polyomino `P(D)` fills the
//! whole shell and intersects the interior with the sponge pattern `K_d`,
//! which leaves `(d-1)/(2d-1)` of the interior as isolated unit holes
//! while staying rook-connected.
//!
//! The domains come in a single family: cubes `Q_i` of side `2qi + 2`,
//! and interpolating domains `D_m` built by extending the interior of
//! `Q_i` with the first `m - (4d-2)^(d-1) i^d` fundamental parallelotopes
//! of the interior of `Q_{i+1}` in lexicographic order. All interiors are
//! anchored at the cell `(1, ..., 1)`, so every domain in the family lives
//! on one common parallelotope grid.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::grid::GridBox;
use crate::pattern::KdPattern;
use crate::polyomino::{face_census, Cell, CellSet};
use crate::{Budget, Error, Result};

/// A domain plus its shell/interior partition.
#[derive(Clone, Debug)]
pub struct Domain {
    dim: usize,
    /// All cells of `D`.
    pub cells: CellSet,
    /// Cells of `D` with some complement cell at Chebyshev distance 1.
    pub shell: CellSet,
    /// Cells of `D` whose full Chebyshev neighborhood lies in `D`.
    pub interior: CellSet,
}

impl Domain {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Census and volume report for one built polyomino.
#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub dim: usize,
    /// Tile count of the polyomino.
    pub n: u64,
    pub holes: u64,
    pub b: u64,
    pub p_h: u64,
    pub p_o: u64,
    /// Volume of the domain `D` (0 when no domain was involved).
    #[serde(rename = "vol_D")]
    pub vol_domain: u64,
    /// Volume of the shell of `D`.
    pub vol_shell: u64,
}

/// The cells of `set` having some complement cell within Chebyshev
/// distance 1 ("touching the boundary, even if only in a corner").
pub fn shell(set: &CellSet) -> CellSet {
    let Some((lo, hi)) = set.bounding_box() else {
        return CellSet::new(set.dim()).expect("dimension already validated");
    };
    let grid = GridBox::new(&lo, &hi, 1);
    let mut occupied = vec![false; grid.len()];
    for cell in set.iter() {
        occupied[grid.index(cell).expect("cell inside own bounding box")] = true;
    }
    let deltas = grid.chebyshev_deltas();
    let cells = set.iter().filter(|cell| {
        let idx = grid.index(cell).unwrap() as isize;
        deltas.iter().any(|&d| !occupied[(idx + d) as usize])
    });
    CellSet::from_cells(set.dim(), cells.cloned()).expect("same dimension")
}

/// Number of fundamental parallelotopes in the interior of `Q_i`:
/// `(4d - 2)^(d-1) * i^d`.
pub fn interior_parallelotope_count(dim: usize, i: u64) -> u64 {
    let tp = 4 * dim as u64 - 2;
    tp.pow(dim as u32 - 1) * i.pow(dim as u32)
}

fn parallelotope_count_u128(dim: usize, i: u128) -> u128 {
    let tp = 4 * dim as u128 - 2;
    tp.pow(dim as u32 - 1) * i.pow(dim as u32)
}

/// Volume bookkeeping for an interpolating domain, without materializing
/// cell sets.
#[derive(Clone, Copy, Debug)]
pub struct DomainStats {
    /// Band index: `m` lies between the interiors of `Q_band` and
    /// `Q_{band+1}`.
    pub band: u64,
    pub parallelotopes: u64,
    pub vol: u64,
    pub vol_shell: u64,
    /// Volume of `P(D_m)`: the shell plus `q + 1` cells per parallelotope.
    pub vol_polyomino: u64,
}

struct DomainFlags {
    grid: GridBox,
    core: Vec<bool>,
    domain: Vec<bool>,
    shell: Vec<bool>,
    band: u64,
}

fn validate_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    Ok(())
}

/// Band index for `m`: the unique `i >= 1` with
/// `count(i) <= m <= count(i+1)` (the lower band at shared endpoints).
fn band_of(dim: usize, m: u64) -> Result<u64> {
    let first = interior_parallelotope_count(dim, 1);
    if m < first {
        return Err(Error::BandOutOfRange { m, min: first });
    }
    let mut i: u128 = 1;
    while parallelotope_count_u128(dim, i + 1) < m as u128 {
        i += 1;
    }
    Ok(i as u64)
}

fn domain_flags(dim: usize, m: u64, budget: &Budget) -> Result<DomainFlags> {
    validate_dim(dim)?;
    let q = 2 * dim as i64 - 1;
    let band = band_of(dim, m)?;
    let i = band as i64;
    let extra = m - interior_parallelotope_count(dim, band);

    // D_m fits in Q_i when no extra parallelotopes are used, else in Q_{i+1}
    let outer = if extra == 0 { i } else { i + 1 };
    let side = 2 * q * outer + 2;
    let needed = GridBox::len_u128(&vec![0; dim], &vec![side - 1; dim], 1);
    budget.check(
        format!("interpolated domain (m = {m})"),
        u64::try_from(needed).unwrap_or(u64::MAX),
    )?;

    let grid = GridBox::new(&vec![0i64; dim], &vec![side - 1; dim], 1);
    let mut core = vec![false; grid.len()];

    // interior of Q_i: the box [1, 2qi + 1)^d
    let inner = 2 * q * i;
    mark_box(&grid, &mut core, &vec![1; dim], &vec![inner; dim]);

    if extra > 0 {
        let mut corners = parallelotope_corners(dim, q, i + 1);
        // drop parallelotopes already inside the interior of Q_i
        let mut size = vec![1i64; dim];
        size[0] = q;
        size[dim - 1] = 2;
        corners.retain(|corner| {
            !corner
                .iter()
                .zip(&size)
                .all(|(&c, &s)| c + s <= 1 + inner)
        });
        corners.sort();
        for corner in corners.into_iter().take(extra as usize) {
            let hi: Vec<i64> = corner.iter().zip(&size).map(|(&c, &s)| c + s - 1).collect();
            mark_box(&grid, &mut core, &corner, &hi);
        }
    }

    // domain = core dilated by one in Chebyshev distance
    let deltas = grid.chebyshev_deltas();
    let mut domain = core.clone();
    for idx in 0..grid.len() {
        if core[idx] {
            for &d in &deltas {
                domain[(idx as isize + d) as usize] = true;
            }
        }
    }
    let mut shell = vec![false; grid.len()];
    for idx in 0..grid.len() {
        if domain[idx] {
            shell[idx] = deltas.iter().any(|&d| !domain[(idx as isize + d) as usize]);
        }
    }
    // the interior of the dilation recovers exactly the parallelotope union
    debug_assert!((0..grid.len()).all(|idx| (domain[idx] && !shell[idx]) == core[idx]));

    Ok(DomainFlags {
        grid,
        core,
        domain,
        shell,
        band,
    })
}

/// Lowest corners of all fundamental parallelotopes in the interior of
/// `Q_i` (anchored at `(1, ..., 1)`, strides `q, 1, ..., 1, 2`).
fn parallelotope_corners(dim: usize, q: i64, i: i64) -> Vec<Cell> {
    let side = 2 * q * i;
    let mut corners = vec![Vec::with_capacity(dim)];
    for axis in 0..dim {
        let stride = if axis == 0 {
            q
        } else if axis == dim - 1 {
            2
        } else {
            1
        };
        let mut next = Vec::with_capacity(corners.len() * (side / stride) as usize);
        for corner in corners {
            let mut value = 1;
            while value < 1 + side {
                let mut extended = corner.clone();
                extended.push(value);
                next.push(extended);
                value += stride;
            }
        }
        corners = next;
    }
    corners
}

fn mark_box(grid: &GridBox, flags: &mut [bool], lo: &[i64], hi: &[i64]) {
    let mut cell = lo.to_vec();
    loop {
        flags[grid.index(&cell).expect("box inside grid")] = true;
        let mut axis = cell.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            cell[axis] += 1;
            if cell[axis] <= hi[axis] {
                break;
            }
            cell[axis] = lo[axis];
        }
    }
}

/// Volumes of `D_m`, its shell, and `P(D_m)` without building cell sets.
pub fn interpolation_stats(dim: usize, m: u64, budget: &Budget) -> Result<DomainStats> {
    let flags = domain_flags(dim, m, budget)?;
    let vol = flags.domain.iter().filter(|&&v| v).count() as u64;
    let vol_shell = flags.shell.iter().filter(|&&v| v).count() as u64;
    let q = 2 * dim as u64 - 1;
    Ok(DomainStats {
        band: flags.band,
        parallelotopes: m,
        vol,
        vol_shell,
        vol_polyomino: vol_shell + (q + 1) * m,
    })
}

/// The interpolating domain `D_m`, fully materialized.
pub fn domain_for_m(dim: usize, m: u64, budget: &Budget) -> Result<Domain> {
    let flags = domain_flags(dim, m, budget)?;
    let decode = |take: &dyn Fn(usize) -> bool| -> Vec<Cell> {
        (0..flags.grid.len())
            .filter(|&idx| take(idx))
            .map(|idx| flags.grid.cell_at(idx))
            .collect()
    };
    let cells = decode(&|idx| flags.domain[idx]);
    let shell = decode(&|idx| flags.shell[idx]);
    let interior = decode(&|idx| flags.core[idx]);
    Ok(Domain {
        dim,
        cells: CellSet::from_cells(dim, cells)?,
        shell: CellSet::from_cells(dim, shell)?,
        interior: CellSet::from_cells(dim, interior)?,
    })
}

/// `P(D)`: the shell of the domain plus the pattern cells of its interior.
pub fn polyomino_of(domain: &Domain) -> Result<CellSet> {
    let pattern = KdPattern::new(domain.dim)?;
    let cells = domain
        .shell
        .iter()
        .cloned()
        .chain(domain.interior.iter().filter(|c| pattern.contains(c)).cloned());
    CellSet::from_cells(domain.dim, cells)
}

fn report_for(set: &CellSet, vol_domain: u64, vol_shell: u64) -> BuildReport {
    let census = face_census(set);
    BuildReport {
        dim: set.dim(),
        n: census.n,
        holes: census.holes,
        b: census.b,
        p_h: census.p_h,
        p_o: census.p_o,
        vol_domain,
        vol_shell,
    }
}

/// Builds `P(Q_i)` for the cube `Q_i` of side `2qi + 2`.
pub fn build_cube_polyomino(dim: usize, i: u64, budget: &Budget) -> Result<(CellSet, BuildReport)> {
    if i == 0 {
        return Err(Error::Precondition {
            condition: "cube index i must be positive".into(),
        });
    }
    build_interpolated(dim, interior_parallelotope_count(dim, i), budget)
}

/// Builds `P(D_m)` for the interpolating domain with `m` fundamental
/// parallelotopes.
pub fn build_interpolated(dim: usize, m: u64, budget: &Budget) -> Result<(CellSet, BuildReport)> {
    let domain = domain_for_m(dim, m, budget)?;
    let set = polyomino_of(&domain)?;
    let report = report_for(&set, domain.cells.len() as u64, domain.shell.len() as u64);
    Ok((set, report))
}

/// Builds a rook-connected polyomino with exactly `n` tiles.
///
/// For `n >= vol(P(Q_1))` this is `P(D_m*)` for the largest `m*` with
/// `vol(P(D_m*)) <= n`, padded with tiles appended above the top face of
/// the bounding box (which never closes or creates a hole). Below that
/// threshold it falls back to a lexicographic prefix of a near-cubical
/// box, with no hole guarantee.
pub fn build_for_n(dim: usize, n: u64, budget: &Budget) -> Result<(CellSet, BuildReport)> {
    validate_dim(dim)?;
    if n == 0 {
        return Err(Error::Precondition {
            condition: "tile count n must be positive".into(),
        });
    }
    budget.check(format!("polyomino with {n} tiles"), n)?;

    let m1 = interior_parallelotope_count(dim, 1);
    let smallest = interpolation_stats(dim, m1, budget)?.vol_polyomino;
    if n < smallest {
        let set = lexicographic_blob(dim, n)?;
        let report = report_for(&set, 0, 0);
        return Ok((set, report));
    }

    // find the band [Q_i, Q_{i+1}] holding n, then the largest m with
    // vol(P(D_m)) <= n by bisection (vol is strictly increasing in m)
    let mut band = 1u64;
    while interpolation_stats(dim, interior_parallelotope_count(dim, band + 1), budget)?
        .vol_polyomino
        <= n
    {
        band += 1;
    }
    let mut lo = interior_parallelotope_count(dim, band);
    let mut hi = interior_parallelotope_count(dim, band + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if interpolation_stats(dim, mid, budget)?.vol_polyomino <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let domain = domain_for_m(dim, lo, budget)?;
    let base = polyomino_of(&domain)?;
    let set = append_tiles(&base, n - base.len() as u64)?;
    let report = report_for(&set, domain.cells.len() as u64, domain.shell.len() as u64);
    debug_assert_eq!(report.n, n);
    Ok((set, report))
}

/// Appends `extra` tiles in layers above the maximal-coordinate-`d` face
/// of the bounding box, in lexicographic order. Each appended tile rests
/// on a tile below it, so connectivity is preserved and no hole can form
/// or close.
fn append_tiles(base: &CellSet, extra: u64) -> Result<CellSet> {
    if extra == 0 {
        return Ok(base.clone());
    }
    let dim = base.dim();
    let (_, hi) = base.bounding_box().expect("base polyomino is nonempty");
    let top = hi[dim - 1];
    let mut support: BTreeSet<Vec<i64>> = base
        .iter()
        .filter(|c| c[dim - 1] == top)
        .map(|c| c[..dim - 1].to_vec())
        .collect();

    let mut cells: Vec<Cell> = base.iter().cloned().collect();
    let mut remaining = extra;
    let mut layer = top;
    while remaining > 0 {
        layer += 1;
        let mut placed = BTreeSet::new();
        for prefix in &support {
            if remaining == 0 {
                break;
            }
            let mut cell = prefix.clone();
            cell.push(layer);
            cells.push(cell);
            placed.insert(prefix.clone());
            remaining -= 1;
        }
        support = placed;
    }
    CellSet::from_cells(dim, cells)
}

/// Lexicographic prefix of the smallest box `[0, s)^dim` with at least `n`
/// cells: connected, hole-free, used below the first construction size.
fn lexicographic_blob(dim: usize, n: u64) -> Result<CellSet> {
    let mut side = (n as f64).powf(1.0 / dim as f64).round() as u64;
    while side.pow(dim as u32) < n {
        side += 1;
    }
    while side > 1 && (side - 1).pow(dim as u32) >= n {
        side -= 1;
    }
    let mut cells = Vec::with_capacity(n as usize);
    let mut cell = vec![0i64; dim];
    for _ in 0..n {
        cells.push(cell.clone());
        let mut axis = dim;
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            cell[axis] += 1;
            if cell[axis] < side as i64 {
                break;
            }
            cell[axis] = 0;
        }
    }
    CellSet::from_cells(dim, cells)
}

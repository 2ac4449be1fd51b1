//! Integer lattices, quotient tori, and toric polyominoes.
//!
//! A full-rank lattice `Λ ⊂ Z^d` turns `R^d/Λ` into a flat torus still
//! tessellated by unit cubes; cells are the `det(Λ)` cosets of `Z^d/Λ`,
//! enumerated canonically through the Hermite normal form of a basis.
//! When `Λ` preserves the sponge pattern `K_d` — it suffices that `Λ`
//! lies inside the lattice `Λ₀` of even-sum points over the lifted code
//! columns — the projection of `K_d` is a toric polyomino with
//! `d/(2d-1) · det(Λ)` tiles and the maximum possible
//! `(d-1)/(2d-1) · det(Λ)` holes, every hole a single cube.

use rand::prelude::*;
use serde::Serialize;

use crate::pattern::KdPattern;
use crate::polyomino::Cell;
use crate::{Budget, Error, Result};

/// A full-rank integer lattice given by basis rows, with its derived
/// lower-triangular Hermite normal form and determinant.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    hnf: Vec<Vec<i64>>,
    det: u64,
}

impl IntegerLattice {
    /// Lattice spanned by exactly `dim` basis rows.
    pub fn from_basis(rows: Vec<Vec<i64>>) -> Result<IntegerLattice> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::RankDeficient);
        }
        for row in &rows {
            if row.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        let hnf = hermite_normal_form(dim, &rows)?;
        let det: i128 = (0..dim).map(|i| hnf[i][i] as i128).product();
        // fraction-free elimination must agree with the triangular product
        debug_assert_eq!(bareiss_determinant(&rows).abs(), det);
        Ok(IntegerLattice {
            dim,
            basis: rows,
            hnf,
            det: u64::try_from(det).expect("positive determinant at desk scale"),
        })
    }

    /// Lattice spanned by any number of generator rows; the canonical
    /// Hermite basis becomes the stored basis.
    pub fn from_generators(dim: usize, rows: Vec<Vec<i64>>) -> Result<IntegerLattice> {
        for row in &rows {
            if row.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        let hnf = hermite_normal_form(dim, &rows)?;
        let det: i128 = (0..dim).map(|i| hnf[i][i] as i128).product();
        Ok(IntegerLattice {
            dim,
            basis: hnf.clone(),
            hnf,
            det: u64::try_from(det).expect("positive determinant at desk scale"),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Covolume `|det|` of the lattice.
    pub fn det(&self) -> u64 {
        self.det
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Lower-triangular Hermite normal form: positive diagonal,
    /// `0 <= H[i][j] < H[j][j]` below it.
    pub fn hnf(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    fn diagonal(&self) -> Vec<i64> {
        (0..self.dim).map(|i| self.hnf[i][i]).collect()
    }

    /// Canonical coset representative of `point`: back-substitution from
    /// the last coordinate down leaves each coordinate in `[0, H[i][i])`.
    pub fn reduce(&self, point: &[i64]) -> Result<Cell> {
        if point.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.reduce_raw(point))
    }

    fn reduce_raw(&self, point: &[i64]) -> Cell {
        let mut x: Vec<i128> = point.iter().map(|&v| v as i128).collect();
        for i in (0..self.dim).rev() {
            let k = x[i].div_euclid(self.hnf[i][i] as i128);
            if k != 0 {
                for j in 0..=i {
                    x[j] -= k * self.hnf[i][j] as i128;
                }
            }
        }
        x.into_iter()
            .map(|v| i64::try_from(v).expect("reduced coordinate fits"))
            .collect()
    }

    /// True iff `point` belongs to the lattice.
    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.contains_raw(point))
    }

    fn contains_raw(&self, point: &[i64]) -> bool {
        let mut x: Vec<i128> = point.iter().map(|&v| v as i128).collect();
        for i in (0..self.dim).rev() {
            let h = self.hnf[i][i] as i128;
            if x[i].rem_euclid(h) != 0 {
                return false;
            }
            let k = x[i] / h;
            if k != 0 {
                for j in 0..=i {
                    x[j] -= k * self.hnf[i][j] as i128;
                }
            }
        }
        true
    }

    /// The canonical transversal of `Z^dim / Λ`: all points with
    /// `0 <= x_i < H[i][i]`, exactly `det` of them, in index order.
    pub fn fundamental_domain(&self, budget: &Budget) -> Result<Vec<Cell>> {
        budget.check("fundamental domain enumeration", self.det)?;
        let diag = self.diagonal();
        Ok((0..self.det as usize)
            .map(|idx| self.rep_of_index(idx, &diag))
            .collect())
    }

    /// Mixed-radix index of a canonical representative, last axis fastest.
    fn index_of_rep(&self, rep: &[i64], diag: &[i64]) -> usize {
        let mut idx = 0usize;
        for k in 0..self.dim {
            debug_assert!(0 <= rep[k] && rep[k] < diag[k]);
            idx = idx * diag[k] as usize + rep[k] as usize;
        }
        idx
    }

    fn rep_of_index(&self, mut idx: usize, diag: &[i64]) -> Cell {
        let mut rep = vec![0i64; self.dim];
        for k in (0..self.dim).rev() {
            rep[k] = (idx % diag[k] as usize) as i64;
            idx /= diag[k] as usize;
        }
        rep
    }
}

/// Lower-triangular Hermite normal form of the row span.
fn hermite_normal_form(dim: usize, rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let mut work: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut result: Vec<Option<Vec<i128>>> = vec![None; dim];
    for col in (0..dim).rev() {
        // gcd-eliminate the column down to one row
        loop {
            let mut nonzero: Vec<usize> = (0..work.len()).filter(|&r| work[r][col] != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::RankDeficient);
            }
            if nonzero.len() == 1 {
                let mut pivot = work.remove(nonzero[0]);
                if pivot[col] < 0 {
                    pivot.iter_mut().for_each(|v| *v = -*v);
                }
                result[col] = Some(pivot);
                break;
            }
            nonzero.sort_by_key(|&r| work[r][col].abs());
            let a = nonzero[0];
            for &b in &nonzero[1..] {
                let k = work[b][col] / work[a][col];
                for j in 0..dim {
                    work[b][j] -= k * work[a][j];
                }
            }
        }
    }
    let mut hnf: Vec<Vec<i128>> = result.into_iter().map(|r| r.expect("filled")).collect();
    // normalize entries below the diagonal into [0, H[j][j])
    for i in 0..dim {
        for j in (0..i).rev() {
            let k = hnf[i][j].div_euclid(hnf[j][j]);
            if k != 0 {
                for t in 0..=j {
                    let sub = k * hnf[j][t];
                    hnf[i][t] -= sub;
                }
            }
        }
    }
    debug_assert!((0..dim).all(|i| (i + 1..dim).all(|j| hnf[i][j] == 0)));
    Ok(hnf
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| i64::try_from(v).expect("HNF entries at desk scale"))
                .collect()
        })
        .collect())
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
fn bareiss_determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// The vectors `u_1, ..., u_{d-1}` spanning the lifted code columns,
/// embedded in `Z^d` with last coordinate 0: `u_1 = q e_1`, and for
/// `2 <= i <= d-1` either `e_i - i e_1` (odd `i`) or `e_i + (q - i) e_1`
/// (even `i`), with `q = 2d - 1`.
fn column_basis(dim: usize) -> Vec<Vec<i64>> {
    let q = 2 * dim as i64 - 1;
    let mut vectors = Vec::with_capacity(dim - 1);
    let mut u1 = vec![0i64; dim];
    u1[0] = q;
    vectors.push(u1);
    for i in 2..dim {
        let mut u = vec![0i64; dim];
        u[i - 1] = 1;
        u[0] = if i % 2 == 1 { -(i as i64) } else { q - i as i64 };
        vectors.push(u);
    }
    vectors
}

/// The lattice `Λ₀` of points over the lifted code columns whose
/// coordinate sum is even; the pattern `K_dim` is invariant under it and
/// under every sublattice of it.
pub fn lambda0(dim: usize) -> Result<IntegerLattice> {
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    let mut generators = column_basis(dim);
    let mut last = vec![0i64; dim];
    last[dim - 1] = 1;
    generators.push(last);
    // intersect with the even-sum sublattice: keep even generators, pair
    // odd ones with one fixed odd pivot, and double the pivot
    let parity = |v: &[i64]| v.iter().map(|&x| x.rem_euclid(2)).sum::<i64>() % 2;
    let pivot = generators
        .iter()
        .position(|g| parity(g) == 1)
        .expect("e_d is odd");
    let pivot_vec = generators[pivot].clone();
    let mut even_generators = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if parity(g) == 0 {
            even_generators.push(g.clone());
        } else if i != pivot {
            even_generators.push(g.iter().zip(&pivot_vec).map(|(a, b)| a + b).collect());
        }
    }
    even_generators.push(pivot_vec.iter().map(|&v| 2 * v).collect());
    IntegerLattice::from_generators(dim, even_generators)
}

/// True iff every generator of `a` lies in `b`.
pub fn is_sublattice(a: &IntegerLattice, b: &IntegerLattice) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.basis().iter().all(|row| b.contains_raw(row)))
}

/// A toric polyomino: a lattice quotient plus the occupied subset of the
/// canonical coset representatives.
#[derive(Clone, Debug)]
pub struct TorusPolyomino {
    lattice: IntegerLattice,
    occupied: Vec<bool>,
    tiles: u64,
}

impl TorusPolyomino {
    /// Projects the sponge pattern `K_d` to the torus. Meaningful when the
    /// lattice preserves the pattern (any sublattice of `Λ₀`).
    pub fn from_pattern(lattice: IntegerLattice, budget: &Budget) -> Result<TorusPolyomino> {
        let pattern = KdPattern::new(lattice.dim())?;
        let reps = lattice.fundamental_domain(budget)?;
        let occupied: Vec<bool> = reps.iter().map(|rep| pattern.contains(rep)).collect();
        let tiles = occupied.iter().filter(|&&o| o).count() as u64;
        Ok(TorusPolyomino {
            lattice,
            occupied,
            tiles,
        })
    }

    /// Torus with an explicit occupied set (cells are reduced first).
    pub fn from_cells<I>(lattice: IntegerLattice, cells: I, budget: &Budget) -> Result<TorusPolyomino>
    where
        I: IntoIterator<Item = Cell>,
    {
        budget.check("fundamental domain enumeration", lattice.det())?;
        let diag = lattice.diagonal();
        let mut occupied = vec![false; lattice.det() as usize];
        for cell in cells {
            let rep = lattice.reduce(&cell)?;
            occupied[lattice.index_of_rep(&rep, &diag)] = true;
        }
        let tiles = occupied.iter().filter(|&&o| o).count() as u64;
        Ok(TorusPolyomino {
            lattice,
            occupied,
            tiles,
        })
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn tiles(&self) -> u64 {
        self.tiles
    }

    /// Occupied coset representatives in index order.
    pub fn occupied_cells(&self) -> Vec<Cell> {
        let diag = self.lattice.diagonal();
        (0..self.occupied.len())
            .filter(|&i| self.occupied[i])
            .map(|i| self.lattice.rep_of_index(i, &diag))
            .collect()
    }

    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        let rep = self.lattice.reduce(point)?;
        let diag = self.lattice.diagonal();
        Ok(self.occupied[self.lattice.index_of_rep(&rep, &diag)])
    }

    /// Face census and connectivity under quotient adjacency.
    pub fn census(&self) -> ToricCensus {
        toric_census(self)
    }
}

/// Census of a toric polyomino. Without an outer perimeter the face
/// identity reads `2dn = 2b + p_h`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ToricCensus {
    pub n: u64,
    pub holes: u64,
    pub b: u64,
    pub p_h: u64,
    pub connected: bool,
}

pub fn toric_census(torus: &TorusPolyomino) -> ToricCensus {
    let dim = torus.dim();
    let lattice = &torus.lattice;
    let diag = lattice.diagonal();
    let total = torus.occupied.len();

    // quotient face neighbors per cell, memoized once
    let neighbor = |idx: usize, axis: usize, dir: i64| -> usize {
        let mut rep = lattice.rep_of_index(idx, &diag);
        rep[axis] += dir;
        let rep = lattice.reduce_raw(&rep);
        lattice.index_of_rep(&rep, &diag)
    };

    let mut shared = 0u64;
    let mut p_h = 0u64;
    for idx in 0..total {
        if !torus.occupied[idx] {
            continue;
        }
        for axis in 0..dim {
            for dir in [-1i64, 1] {
                if torus.occupied[neighbor(idx, axis, dir)] {
                    shared += 1;
                } else {
                    p_h += 1;
                }
            }
        }
    }

    // component counts by flood fill over occupied and complement cells
    let mut holes = 0u64;
    let mut seen = vec![false; total];
    let mut stack = Vec::new();
    for start in 0..total {
        if torus.occupied[start] || seen[start] {
            continue;
        }
        holes += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            for axis in 0..dim {
                for dir in [-1i64, 1] {
                    let nb = neighbor(idx, axis, dir);
                    if !torus.occupied[nb] && !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
    }

    let connected = if torus.tiles == 0 {
        false
    } else {
        let mut seen = vec![false; total];
        let start = (0..total).find(|&i| torus.occupied[i]).expect("nonempty");
        let mut reached = 0u64;
        seen[start] = true;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            reached += 1;
            for axis in 0..dim {
                for dir in [-1i64, 1] {
                    let nb = neighbor(idx, axis, dir);
                    if torus.occupied[nb] && !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
        reached == torus.tiles
    };

    let census = ToricCensus {
        n: torus.tiles,
        holes,
        b: shared / 2,
        p_h,
        connected,
    };
    assert_eq!(
        2 * dim as u64 * census.n,
        2 * census.b + census.p_h,
        "toric face identity failed"
    );
    census
}

/// Construction report for one optimal torus.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ToricReport {
    pub det: u64,
    pub tiles: u64,
    pub holes: u64,
    pub connected: bool,
}

/// Builds the lattice of the optimal construction: generators
/// `n_i u_i` and `c e_d - sum u_i`, requiring pairwise coprime `n_i`
/// with `n_1` even and odd `c`.
pub fn optimal_torus_lattice(dim: usize, n_list: &[u64], c: u64) -> Result<IntegerLattice> {
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    if n_list.len() != dim - 1 {
        return Err(Error::Precondition {
            condition: format!("need {} column periods, got {}", dim - 1, n_list.len()),
        });
    }
    if n_list.contains(&0) {
        return Err(Error::Precondition {
            condition: "all n_i must be positive".into(),
        });
    }
    if n_list[0] % 2 != 0 {
        return Err(Error::Precondition {
            condition: format!("n_1 must be even, got {}", n_list[0]),
        });
    }
    if c == 0 || c % 2 == 0 {
        return Err(Error::Precondition {
            condition: format!("c must be a positive odd integer, got {c}"),
        });
    }
    for i in 0..n_list.len() {
        for j in i + 1..n_list.len() {
            if gcd(n_list[i], n_list[j]) != 1 {
                return Err(Error::Precondition {
                    condition: format!(
                        "n_{} = {} and n_{} = {} are not coprime",
                        i + 1,
                        n_list[i],
                        j + 1,
                        n_list[j]
                    ),
                });
            }
        }
    }

    let columns = column_basis(dim);
    let mut generators: Vec<Vec<i64>> = columns
        .iter()
        .zip(n_list)
        .map(|(u, &n)| u.iter().map(|&v| v * n as i64).collect())
        .collect();
    let mut last = vec![0i64; dim];
    last[dim - 1] = c as i64;
    for u in &columns {
        for (t, &v) in u.iter().enumerate() {
            last[t] -= v;
        }
    }
    generators.push(last);
    IntegerLattice::from_generators(dim, generators)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Builds the optimal toric polyomino for the given parameters and
/// reports its exact tile and hole counts.
pub fn build_optimal_torus(
    dim: usize,
    n_list: &[u64],
    c: u64,
    budget: &Budget,
) -> Result<(TorusPolyomino, ToricReport)> {
    let lattice = optimal_torus_lattice(dim, n_list, c)?;
    debug_assert!(is_sublattice(&lattice, &lambda0(dim)?)?);
    let det = lattice.det();
    let torus = TorusPolyomino::from_pattern(lattice, budget)?;
    let census = torus.census();
    let report = ToricReport {
        det,
        tiles: census.n,
        holes: census.holes,
        connected: census.connected,
    };
    Ok((torus, report))
}

/// Squared Euclidean length of the shortest nonzero lattice vector, by
/// exhaustive scan of the integer points within the shortest generator's
/// norm (any shorter vector must lie in that box).
pub fn systole_squared(lattice: &IntegerLattice, budget: &Budget) -> Result<u128> {
    let dim = lattice.dim();
    let norm_sq = |row: &[i64]| -> u128 { row.iter().map(|&v| (v as i128 * v as i128) as u128).sum() };
    let best_gen = lattice
        .basis()
        .iter()
        .chain(lattice.hnf().iter())
        .map(|r| norm_sq(r))
        .min()
        .expect("nonempty basis");

    let radius = isqrt_u128(best_gen) as i64;
    let scan = (2 * radius as u128 + 1).pow(dim as u32);
    budget.check(
        "short-vector scan",
        u64::try_from(scan).unwrap_or(u64::MAX),
    )?;

    let mut best = best_gen;
    let mut point = vec![-radius; dim];
    'outer: loop {
        if point.iter().any(|&v| v != 0) {
            let sq = norm_sq(&point);
            if sq < best && lattice.contains_raw(&point) {
                best = sq;
            }
        }
        let mut axis = dim;
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            point[axis] += 1;
            if point[axis] <= radius {
                break;
            }
            point[axis] = -radius;
        }
    }
    Ok(best)
}

/// Euclidean length of the shortest nonzero lattice vector.
pub fn systole(lattice: &IntegerLattice, budget: &Budget) -> Result<f64> {
    Ok((systole_squared(lattice, budget)? as f64).sqrt())
}

fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Checks that the pattern `K_dim` is invariant under every basis vector
/// of the lattice.
///
/// When the pattern's full period box (side `2q`) fits the budget the
/// check is exhaustive — membership only depends on coordinates modulo
/// `2q`, so covering one period proves invariance everywhere. Otherwise
/// `samples` random cells are tested.
pub fn verify_invariance(
    dim: usize,
    lattice: &IntegerLattice,
    samples: u64,
    budget: &Budget,
) -> Result<bool> {
    if lattice.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: lattice.dim(),
        });
    }
    let pattern = KdPattern::new(dim)?;
    let period = 2 * pattern.modulus();
    let invariant_at = |cell: &[i64]| -> bool {
        lattice.basis().iter().all(|g| {
            let shifted: Vec<i64> = cell.iter().zip(g).map(|(a, b)| a + b).collect();
            pattern.contains(cell) == pattern.contains(&shifted)
        })
    };

    let box_cells = (period as u128).pow(dim as u32);
    if box_cells <= budget.max_cells as u128 {
        let mut cell = vec![0i64; dim];
        loop {
            if !invariant_at(&cell) {
                return Ok(false);
            }
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return Ok(true);
                }
                axis -= 1;
                cell[axis] += 1;
                if cell[axis] < period {
                    break;
                }
                cell[axis] = 0;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x1ee7_c0de);
    for _ in 0..samples {
        let cell: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1000..1000)).collect();
        if !invariant_at(&cell) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One candidate from the fat-torus parameter scan.
#[derive(Clone, Debug, Serialize)]
pub struct FatTorusEntry {
    pub n_list: Vec<u64>,
    pub c: u64,
    pub det: u64,
    pub systole_sq: u64,
    pub systole: f64,
    /// `systole / det^(1/d)`, the scale-free fatness measure.
    pub normalized: f64,
}

/// Scans all valid `(n_list, c)` tuples with entries up to `max_param`
/// and ranks the resulting tori by normalized systole, descending. An
/// exploration utility: no optimality claim is made.
pub fn search_fat_tori(
    dim: usize,
    max_param: u64,
    budget: &Budget,
) -> Result<Vec<FatTorusEntry>> {
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    let mut entries = Vec::new();
    let mut n_list = vec![0u64; dim - 1];
    scan_tuples(dim, max_param, 0, &mut n_list, budget, &mut entries)?;
    entries.sort_by(|a, b| {
        b.normalized
            .total_cmp(&a.normalized)
            .then(a.det.cmp(&b.det))
            .then(a.n_list.cmp(&b.n_list))
            .then(a.c.cmp(&b.c))
    });
    Ok(entries)
}

fn scan_tuples(
    dim: usize,
    max_param: u64,
    pos: usize,
    n_list: &mut Vec<u64>,
    budget: &Budget,
    out: &mut Vec<FatTorusEntry>,
) -> Result<()> {
    if pos == dim - 1 {
        let mut c = 1;
        while c <= max_param {
            let lattice = optimal_torus_lattice(dim, n_list, c)?;
            let det = lattice.det();
            let sq = systole_squared(&lattice, budget)?;
            let systole = (sq as f64).sqrt();
            out.push(FatTorusEntry {
                n_list: n_list.clone(),
                c,
                det,
                systole_sq: u64::try_from(sq).expect("desk-scale norms"),
                systole,
                normalized: systole / (det as f64).powf(1.0 / dim as f64),
            });
            c += 2;
        }
        return Ok(());
    }
    let start = if pos == 0 { 2 } else { 1 };
    let step = if pos == 0 { 2 } else { 1 };
    let mut value = start;
    while value <= max_param {
        if n_list[..pos].iter().all(|&prev| gcd(prev, value) == 1) {
            n_list[pos] = value;
            scan_tuples(dim, max_param, pos + 1, n_list, budget, out)?;
        }
        value += step;
    }
    n_list[pos] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_lattice(values: &[i64]) -> IntegerLattice {
        let dim = values.len();
        let rows = (0..dim)
            .map(|i| {
                let mut row = vec![0i64; dim];
                row[i] = values[i];
                row
            })
            .collect();
        IntegerLattice::from_basis(rows).unwrap()
    }

    #[test]
    fn fundamental_domain_of_diagonal_lattice() {
        let lattice = diag_lattice(&[2, 3]);
        let reps = lattice.fundamental_domain(&Budget::default()).unwrap();
        assert_eq!(reps.len(), 6);
        assert!(reps.contains(&vec![1, 2]));
        assert_eq!(lattice.reduce(&[7, 5]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn skew_basis_has_eighteen_cosets() {
        let lattice = IntegerLattice::from_basis(vec![vec![6, 0], vec![-3, 3]]).unwrap();
        assert_eq!(lattice.det(), 18);
        assert_eq!(lattice.fundamental_domain(&Budget::default()).unwrap().len(), 18);
        assert_eq!(lattice.hnf(), &[vec![6, 0], vec![3, 3]]);
    }

    #[test]
    fn reduce_is_idempotent_and_additive() {
        let lattice = IntegerLattice::from_basis(vec![vec![6, 0], vec![-3, 3]]).unwrap();
        let x = [17, -4];
        let y = [-9, 22];
        let rx = lattice.reduce(&x).unwrap();
        assert_eq!(lattice.reduce(&rx).unwrap(), rx);
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let via_reps: Vec<i64> = rx
            .iter()
            .zip(&lattice.reduce(&y).unwrap())
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(
            lattice.reduce(&sum).unwrap(),
            lattice.reduce(&via_reps).unwrap()
        );
    }

    #[test]
    fn lambda0_planar() {
        let lattice = lambda0(2).unwrap();
        assert_eq!(lattice.det(), 6);
        assert!(lattice.contains(&[3, 1]).unwrap());
        assert!(!lattice.contains(&[3, 0]).unwrap());
        assert!(lattice.contains(&[0, 2]).unwrap());
        assert!(!lattice.contains(&[1, 1]).unwrap());
    }

    #[test]
    fn sublattice_examples() {
        let coarse = diag_lattice(&[4, 6]);
        let fine = diag_lattice(&[2, 3]);
        assert!(is_sublattice(&coarse, &fine).unwrap());
        assert!(!is_sublattice(&fine, &coarse).unwrap());

        let ambient = diag_lattice(&[1, 1]);
        assert!(!is_sublattice(&ambient, &lambda0(2).unwrap()).unwrap());

        let prop = optimal_torus_lattice(2, &[2], 3).unwrap();
        assert!(is_sublattice(&prop, &lambda0(2).unwrap()).unwrap());
    }

    #[test]
    fn optimal_torus_planar() {
        let (torus, report) = build_optimal_torus(2, &[2], 3, &Budget::default()).unwrap();
        assert_eq!(report.det, 18);
        assert_eq!(report.tiles, 12);
        assert_eq!(report.holes, 6);
        assert!(report.connected);
        let census = torus.census();
        assert_eq!(census.p_h, 2 * 2 * 6); // six unit holes, four faces each
    }

    #[test]
    fn optimal_torus_spatial() {
        let lattice = optimal_torus_lattice(3, &[2, 3], 5).unwrap();
        assert_eq!(lattice.det(), 150);
        let (_, report) = build_optimal_torus(3, &[2, 3], 5, &Budget::default()).unwrap();
        assert_eq!(report.tiles, 90);
        assert_eq!(report.holes, 60);
        assert!(report.connected);
    }

    #[test]
    fn optimal_torus_preconditions() {
        assert!(matches!(
            build_optimal_torus(2, &[3], 3, &Budget::default()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            build_optimal_torus(2, &[2], 4, &Budget::default()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            build_optimal_torus(3, &[2], 3, &Budget::default()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            build_optimal_torus(3, &[2, 4], 3, &Budget::default()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn full_torus_has_no_holes() {
        let lattice = diag_lattice(&[3, 4]);
        let reps = lattice.fundamental_domain(&Budget::default()).unwrap();
        let torus = TorusPolyomino::from_cells(lattice, reps, &Budget::default()).unwrap();
        let census = torus.census();
        assert_eq!(census.holes, 0);
        assert_eq!(census.p_h, 0);
        assert!(census.connected);
    }

    #[test]
    fn systole_examples() {
        let budget = Budget::default();
        assert_eq!(systole_squared(&diag_lattice(&[2, 3]), &budget).unwrap(), 4);
        let skew = IntegerLattice::from_basis(vec![vec![6, 0], vec![-3, 3]]).unwrap();
        assert_eq!(systole_squared(&skew, &budget).unwrap(), 18);
        assert!((systole(&skew, &budget).unwrap() - 18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn invariance_examples() {
        let budget = Budget::default();
        assert!(verify_invariance(2, &lambda0(2).unwrap(), 100, &budget).unwrap());
        assert!(!verify_invariance(2, &diag_lattice(&[1, 1]), 100, &budget).unwrap());
        let prop = optimal_torus_lattice(2, &[2], 3).unwrap();
        assert!(verify_invariance(2, &prop, 100, &budget).unwrap());
    }

    #[test]
    fn search_includes_the_small_example() {
        let entries = search_fat_tori(2, 6, &Budget::default()).unwrap();
        assert!(!entries.is_empty());
        let hit = entries
            .iter()
            .find(|e| e.n_list == vec![2] && e.c == 3)
            .expect("small tuple present");
        assert_eq!(hit.det, 18);
        assert_eq!(hit.systole_sq, 18);
        // every entry satisfies the construction preconditions
        for e in &entries {
            assert_eq!(e.n_list[0] % 2, 0);
            assert_eq!(e.c % 2, 1);
        }
    }

    proptest! {
        #[test]
        fn systole_scales_linearly(k in 1i64..=4) {
            let base = IntegerLattice::from_basis(vec![vec![6, 0], vec![-3, 3]]).unwrap();
            let scaled = IntegerLattice::from_basis(
                base.basis().iter().map(|r| r.iter().map(|&v| v * k).collect()).collect(),
            ).unwrap();
            let budget = Budget::default();
            prop_assert_eq!(
                systole_squared(&scaled, &budget).unwrap(),
                (k * k) as u128 * systole_squared(&base, &budget).unwrap()
            );
        }

        #[test]
        fn reduce_lands_in_fundamental_box(x in -100i64..100, y in -100i64..100, z in -100i64..100) {
            let lattice = optimal_torus_lattice(3, &[2, 3], 5).unwrap();
            let rep = lattice.reduce(&[x, y, z]).unwrap();
            for (k, &v) in rep.iter().enumerate() {
                prop_assert!(0 <= v && v < lattice.hnf()[k][k]);
            }
            // representative differs from the input by a lattice vector
            let diff: Vec<i64> = [x, y, z].iter().zip(&rep).map(|(a, b)| a - b).collect();
            prop_assert!(lattice.contains(&diff).unwrap());
        }
    }
}

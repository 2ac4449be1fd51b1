//! Dense axis-aligned boxes of cells with flat row-major storage.
//!
//! Every flood fill, face census, and shell computation in the crate runs
//! on one of these rather than on hashed cell sets; the coordinates of a
//! cell are recovered from its flat index only when needed.

/// An inclusive box `[lo, hi]` of integer cells, indexed row-major with the
/// last axis fastest.
#[derive(Clone, Debug)]
pub(crate) struct GridBox {
    lo: Vec<i64>,
    extents: Vec<usize>,
    strides: Vec<usize>,
}

impl GridBox {
    /// Box spanning `[lo - margin, hi + margin]` per axis.
    pub fn new(lo: &[i64], hi: &[i64], margin: i64) -> GridBox {
        debug_assert_eq!(lo.len(), hi.len());
        let dim = lo.len();
        let lo: Vec<i64> = lo.iter().map(|&v| v - margin).collect();
        let extents: Vec<usize> = hi
            .iter()
            .zip(&lo)
            .map(|(&h, &l)| (h + margin - l + 1) as usize)
            .collect();
        let mut strides = vec![1usize; dim];
        for k in (0..dim.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * extents[k + 1];
        }
        GridBox {
            lo,
            extents,
            strides,
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Total number of cells in the box.
    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    /// Number of cells, computed in u128 to survive absurd requests before
    /// a budget check can reject them.
    pub fn len_u128(lo: &[i64], hi: &[i64], margin: i64) -> u128 {
        lo.iter()
            .zip(hi)
            .map(|(&l, &h)| (h + margin - (l - margin) + 1) as u128)
            .product()
    }

    /// Flat index of `cell`, or `None` if it lies outside the box.
    pub fn index(&self, cell: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for k in 0..self.dim() {
            let off = cell[k] - self.lo[k];
            if off < 0 || off as usize >= self.extents[k] {
                return None;
            }
            idx += off as usize * self.strides[k];
        }
        Some(idx)
    }

    /// Coordinates of the cell at flat index `idx`.
    pub fn cell_at(&self, idx: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            out.push(self.lo[k] + ((idx / self.strides[k]) % self.extents[k]) as i64);
        }
        out
    }

    /// Face neighbor of `idx` along `axis` in direction `dir` (+1/-1),
    /// or `None` if it would leave the box.
    pub fn face_neighbor(&self, idx: usize, axis: usize, dir: i64) -> Option<usize> {
        let coord = (idx / self.strides[axis]) % self.extents[axis];
        if dir > 0 {
            if coord + 1 >= self.extents[axis] {
                return None;
            }
            Some(idx + self.strides[axis])
        } else {
            if coord == 0 {
                return None;
            }
            Some(idx - self.strides[axis])
        }
    }

    /// Flat-index offsets of the `3^d - 1` Chebyshev neighbors.
    ///
    /// Only valid for cells at distance >= 1 from every box face, where no
    /// offset can wrap across an axis.
    pub fn chebyshev_deltas(&self) -> Vec<isize> {
        let dim = self.dim();
        let mut deltas = vec![0isize];
        for k in 0..dim {
            let stride = self.strides[k] as isize;
            let mut next = Vec::with_capacity(deltas.len() * 3);
            for &d in &deltas {
                next.push(d - stride);
                next.push(d);
                next.push(d + stride);
            }
            deltas = next;
        }
        deltas.retain(|&d| d != 0);
        deltas
    }

    /// True if `idx` lies on the boundary of the box itself.
    pub fn on_box_boundary(&self, idx: usize) -> bool {
        (0..self.dim()).any(|k| {
            let coord = (idx / self.strides[k]) % self.extents[k];
            coord == 0 || coord + 1 == self.extents[k]
        })
    }
}

//! The sponge pattern `K_d`.
//!
//! `K_d` consists of every cell of `Z^d` with even coordinate sum, plus
//! every full column (direction `e_d`) over the periodic lift of the
//! perfect Lee code in dimension `d - 1` with modulus `q = 2d - 1`. Every
//! `q x 1 x ... x 1 x 2` box contains exactly `q + 1` of its cells, so its
//! density is `d/(2d-1)`.

use crate::lee_code;
use crate::{Error, Result};

/// Membership oracle for `K_d`.
#[derive(Clone, Copy, Debug)]
pub struct KdPattern {
    dim: usize,
    modulus: i64,
}

impl KdPattern {
    pub fn new(dim: usize) -> Result<KdPattern> {
        if dim < 2 {
            return Err(Error::InvalidDimension { got: dim, min: 2 });
        }
        Ok(KdPattern {
            dim,
            modulus: 2 * dim as i64 - 1,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Modulus of the embedded `(d-1)`-dimensional code.
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// True iff the first `d - 1` coordinates index a full column, i.e.
    /// lie on the lifted code in dimension `d - 1`.
    pub fn column_contains(&self, cell: &[i64]) -> bool {
        debug_assert_eq!(cell.len(), self.dim);
        lee_code::lift_contains(self.dim - 1, &cell[..self.dim - 1])
            .expect("prefix arity matches the embedded code")
    }

    /// Membership of a cell in `K_d`.
    pub fn contains(&self, cell: &[i64]) -> bool {
        debug_assert_eq!(cell.len(), self.dim);
        let parity: i64 = cell.iter().map(|&c| c.rem_euclid(2)).sum::<i64>() % 2;
        parity == 0 || self.column_contains(cell)
    }

    /// Number of pattern cells in the `q x 1 x ... x 1 x 2` box whose
    /// lowest corner is `anchor` (length `q` along axis 1, length 2 along
    /// axis `d`). Always `q + 1`.
    pub fn box_census(&self, anchor: &[i64]) -> u64 {
        debug_assert_eq!(anchor.len(), self.dim);
        let mut cell = anchor.to_vec();
        let mut count = 0;
        for dx in 0..self.modulus {
            cell[0] = anchor[0] + dx;
            for dz in 0..2 {
                cell[self.dim - 1] = anchor[self.dim - 1] + dz;
                if self.contains(&cell) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Membership of `cell` in `K_dim`, with argument validation.
pub fn kd_contains(dim: usize, cell: &[i64]) -> Result<bool> {
    let pattern = KdPattern::new(dim)?;
    if cell.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            got: cell.len(),
        });
    }
    Ok(pattern.contains(cell))
}

/// Census of the canonical box at `anchor`, with argument validation.
pub fn box_census(dim: usize, anchor: &[i64]) -> Result<u64> {
    let pattern = KdPattern::new(dim)?;
    if anchor.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            got: anchor.len(),
        });
    }
    Ok(pattern.box_census(anchor))
}

//! Polyominoes with many holes.
//!
//! A *d-polyomino* is a finite, rook-connected set of unit cubes of the
//! cubical tessellation of `R^d`; a *hole* is a bounded connected component
//! of its complement. This crate builds polyominoes whose hole count per
//! tile approaches `(d-1)/d`, the best possible ratio, and ships the
//! machinery needed to certify that claim at desk scale:
//!
//! - [`lee_code`]: perfect 1-error-correcting codes in the Lee metric on
//!   `(Z/qZ)^d` with `q = 2d+1`, and their periodic lifts to `Z^d`.
//! - [`pattern`]: the sponge pattern `K_d` (all even-parity cells plus full
//!   columns over the lifted code) whose density is `d/(2d-1)`.
//! - [`polyomino`]: cell sets, rook-connectivity, hole counting by
//!   complement flood fill, and the interior/hole/outer face census.
//! - [`builder`]: shell-plus-sponge constructions over cubes, the
//!   lexicographic interpolation between consecutive cubes, and an
//!   `n`-tile builder for every `n`.
//! - [`bounds`]: closed-form upper bounds, constructive lower bounds, and
//!   an exhaustive enumeration oracle for the true maximum at small `n`.
//! - [`torus`]: integer lattices, quotient tori, toric polyominoes with
//!   the maximal hole count, and systole computation.
//! - [`cellfile`]: the plain-text cell file format shared by the tools.

pub mod bounds;
pub mod builder;
pub mod cellfile;
mod grid;
pub mod lee_code;
pub mod pattern;
pub mod polyomino;
pub mod torus;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Dimension below the minimum an operation supports.
    #[error("dimension {got} is out of range (need d >= {min})")]
    InvalidDimension { got: usize, min: usize },
    /// A point whose arity does not match the ambient dimension.
    #[error("point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    /// Two objects of different ambient dimensions were combined.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// An operation would exceed the configured cell budget.
    #[error("capacity exceeded for {what}: needs {needed} cells, limit is {limit}")]
    Capacity {
        what: String,
        needed: u64,
        limit: u64,
    },
    /// Interpolation parameter below the first band.
    #[error("parallelotope count {m} is outside every interpolation band (need m >= {min})")]
    BandOutOfRange { m: u64, min: u64 },
    /// A named construction precondition failed.
    #[error("precondition violated: {condition}")]
    Precondition { condition: String },
    /// A generating set that does not span the ambient space.
    #[error("lattice basis is rank deficient")]
    RankDeficient,
    /// Malformed cell file input.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Capacity limits for grid-filling and enumeration operations.
///
/// All limits are configuration: callers (and the CLI via
/// `HOLEY_CELL_BUDGET`) may raise or lower them freely.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Upper bound on the number of cells any single grid, domain,
    /// fundamental domain, or scan box may contain.
    pub max_cells: u64,
    /// Override for the largest tile count the exhaustive polyomino
    /// enumerator accepts; `None` uses the per-dimension default.
    pub enum_tiles: Option<u32>,
}

impl Budget {
    pub const DEFAULT_MAX_CELLS: u64 = 2_000_000;

    pub fn with_max_cells(max_cells: u64) -> Self {
        Budget {
            max_cells,
            ..Budget::default()
        }
    }

    /// Errors with a capacity report if `needed` cells exceed the budget.
    pub fn check(&self, what: impl fmt::Display, needed: u64) -> Result<()> {
        if needed > self.max_cells {
            Err(Error::Capacity {
                what: what.to_string(),
                needed,
                limit: self.max_cells,
            })
        } else {
            Ok(())
        }
    }

    /// Largest `n` the exhaustive enumerator will attempt in dimension `dim`.
    pub fn enum_cap(&self, dim: usize) -> u32 {
        self.enum_tiles.unwrap_or(match dim {
            2 => 12,
            3 => 8,
            _ => 6,
        })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cells: Self::DEFAULT_MAX_CELLS,
            enum_tiles: None,
        }
    }
}

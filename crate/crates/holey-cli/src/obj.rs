//! OBJ export for 3-dimensional cell files: one unit cube per cell,
//! 8 vertices and 12 triangles each, no shared-vertex deduplication.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use holey::polyomino::CellSet;
use holey::{Error, Result};

pub struct ObjStats {
    pub cells: u64,
    pub vertices: u64,
    pub triangles: u64,
}

/// Cube corners relative to a cell center (cells sit at integer centers,
/// so faces land on half-integer planes).
const CORNERS: [[f64; 3]; 8] = [
    [-0.5, -0.5, -0.5],
    [0.5, -0.5, -0.5],
    [-0.5, 0.5, -0.5],
    [0.5, 0.5, -0.5],
    [-0.5, -0.5, 0.5],
    [0.5, -0.5, 0.5],
    [-0.5, 0.5, 0.5],
    [0.5, 0.5, 0.5],
];

/// Two triangles per cube face, indices into [`CORNERS`], outward-facing.
const TRIANGLES: [[usize; 3]; 12] = [
    [0, 2, 1],
    [1, 2, 3], // bottom (z-)
    [4, 5, 6],
    [5, 7, 6], // top (z+)
    [0, 1, 4],
    [1, 5, 4], // front (y-)
    [2, 6, 3],
    [3, 6, 7], // back (y+)
    [0, 4, 2],
    [2, 4, 6], // left (x-)
    [1, 3, 5],
    [3, 7, 5], // right (x+)
];

pub fn export_obj(set: &CellSet, path: &Path) -> Result<ObjStats> {
    if set.dim() != 3 {
        return Err(Error::InvalidDimension {
            got: set.dim(),
            min: 3,
        });
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {} unit cubes", set.len())?;
    let mut base = 1u64; // OBJ indices are 1-based
    for cell in set.iter() {
        for corner in &CORNERS {
            writeln!(
                out,
                "v {} {} {}",
                cell[0] as f64 + corner[0],
                cell[1] as f64 + corner[1],
                cell[2] as f64 + corner[2]
            )?;
        }
        for tri in &TRIANGLES {
            writeln!(
                out,
                "f {} {} {}",
                base + tri[0] as u64,
                base + tri[1] as u64,
                base + tri[2] as u64
            )?;
        }
        base += 8;
    }
    out.flush()?;
    Ok(ObjStats {
        cells: set.len() as u64,
        vertices: 8 * set.len() as u64,
        triangles: 12 * set.len() as u64,
    })
}

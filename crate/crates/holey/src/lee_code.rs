//! Perfect 1-error-correcting codes in the Lee metric.
//!
//! For every `d >= 1` and `q = 2d + 1`, the words `(a_1, ..., a_d)` in
//! `(Z/qZ)^d` with `sum_i i * a_i = 0 (mod q)` form a perfect code: the
//! closed Lee 1-balls (*jacks*) centered at the words tile the whole
//! space. Lifting the code periodically to `Z^d` gives the column set the
//! sponge pattern is built from.

use crate::{Budget, Error, Result};
use serde::Serialize;

/// The canonical perfect Lee code in dimension `dim`, modulus `2*dim + 1`.
#[derive(Clone, Debug)]
pub struct LeeCode {
    dim: usize,
    modulus: i64,
    words: Vec<Vec<i64>>,
}

impl LeeCode {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// All code words, lexicographically sorted, coordinates in `[0, q)`.
    pub fn words(&self) -> &[Vec<i64>] {
        &self.words
    }

    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        is_code_word(self.dim, point)
    }
}

/// Modulus of the code in dimension `dim`.
pub fn modulus(dim: usize) -> i64 {
    2 * dim as i64 + 1
}

/// The weighted coordinate sum `sum_i i * p_i` reduced to `[0, q)`.
fn syndrome(point: &[i64], q: i64) -> i64 {
    let mut s: i64 = 0;
    for (k, &coord) in point.iter().enumerate() {
        s = (s + (k as i64 + 1) * coord.rem_euclid(q)).rem_euclid(q);
    }
    s
}

/// Constructs the code in dimension `dim`.
///
/// Every choice of the trailing `dim - 1` coordinates extends to exactly
/// one word, so the word list has `q^(dim-1)` entries.
pub fn code_words(dim: usize) -> Result<LeeCode> {
    if dim == 0 {
        return Err(Error::InvalidDimension { got: 0, min: 1 });
    }
    let q = modulus(dim);
    let count = (q as u64).pow(dim as u32 - 1);
    let mut words = Vec::with_capacity(count as usize);
    let mut tail = vec![0i64; dim - 1];
    loop {
        // solve for the first coordinate: a_1 = -(sum_{i>=2} i * a_i) mod q
        let mut s: i64 = 0;
        for (k, &coord) in tail.iter().enumerate() {
            s = (s + (k as i64 + 2) * coord).rem_euclid(q);
        }
        let mut word = Vec::with_capacity(dim);
        word.push((-s).rem_euclid(q));
        word.extend_from_slice(&tail);
        words.push(word);
        // odometer over the tail
        let mut k = dim - 1;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            tail[k] += 1;
            if tail[k] < q {
                break;
            }
            tail[k] = 0;
        }
        if dim == 1 || tail.iter().all(|&v| v == 0) {
            break;
        }
    }
    words.sort();
    debug_assert_eq!(words.len() as u64, count);
    Ok(LeeCode {
        dim,
        modulus: q,
        words,
    })
}

/// True iff `point` (any integer coordinates; reduced mod q) is a word.
pub fn is_code_word(dim: usize, point: &[i64]) -> Result<bool> {
    if dim == 0 {
        return Err(Error::InvalidDimension { got: 0, min: 1 });
    }
    if point.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            got: point.len(),
        });
    }
    Ok(syndrome(point, modulus(dim)) == 0)
}

/// Membership in the periodic lift of the code to `Z^dim`.
///
/// Periodic with period `q` in every coordinate.
pub fn lift_contains(dim: usize, point: &[i64]) -> Result<bool> {
    is_code_word(dim, point)
}

/// Outcome of the exhaustive perfect-code check.
#[derive(Clone, Debug, Serialize)]
pub struct PerfectCodeReport {
    pub dim: usize,
    pub modulus: i64,
    /// Number of code words (= number of jacks).
    pub jack_count: u64,
    /// Number of points of `(Z/qZ)^dim`.
    pub cell_count: u64,
    /// True iff every point lies in exactly one jack.
    pub covered_once: bool,
}

/// Exhaustively checks that the jacks centered at code words partition
/// `(Z/qZ)^dim`: every point must be within Lee distance 1 of exactly one
/// word.
pub fn verify_perfect(dim: usize, budget: &Budget) -> Result<PerfectCodeReport> {
    if dim == 0 {
        return Err(Error::InvalidDimension { got: 0, min: 1 });
    }
    let q = modulus(dim);
    let cell_count = (q as u64).checked_pow(dim as u32).ok_or(Error::Capacity {
        what: "perfect-code verification".into(),
        needed: u64::MAX,
        limit: budget.max_cells,
    })?;
    budget.check("perfect-code verification", cell_count)?;

    let mut covered_once = true;
    let mut point = vec![0i64; dim];
    'outer: loop {
        // words within Lee distance <= 1: the point itself and its 2*dim
        // cyclic face neighbors
        let mut hits = 0u32;
        if syndrome(&point, q) == 0 {
            hits += 1;
        }
        for k in 0..dim {
            for delta in [-1i64, 1] {
                let orig = point[k];
                point[k] = (orig + delta).rem_euclid(q);
                if syndrome(&point, q) == 0 {
                    hits += 1;
                }
                point[k] = orig;
            }
        }
        if hits != 1 {
            covered_once = false;
            break;
        }
        // odometer
        let mut k = dim;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            point[k] += 1;
            if point[k] < q {
                break;
            }
            point[k] = 0;
        }
    }

    Ok(PerfectCodeReport {
        dim,
        modulus: q,
        jack_count: (q as u64).pow(dim as u32 - 1),
        cell_count,
        covered_once,
    })
}

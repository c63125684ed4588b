//! Exact integer lattice algebra.
//!
//! Closed subgroups of a torus are classified by the sublattice of characters
//! vanishing on them. This module provides the canonical form of such a
//! lattice (row-style Hermite normal form), its rank, the generator in the
//! rank-one case, and the gcd of character pairings against a fixed
//! direction. All arithmetic is arbitrary precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major. Rows may be zero in number, columns may
/// not: a lattice always lives in some `Z^cols` with `cols >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if cols == 0 {
            return Err(Error::InvalidConstruction(
                "matrix must have at least one column".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidConstruction(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// The empty (zero-row) matrix in `Z^cols`; encodes the zero lattice.
    pub fn empty(cols: usize) -> Self {
        IntMatrix::new(0, cols, Vec::new()).expect("cols >= 1")
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::InvalidConstruction(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r);
        }
        IntMatrix::new(n, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    /// Row-style Hermite normal form of the row lattice: zero rows removed,
    /// staircase shape, positive pivots, entries above each pivot reduced
    /// into `[0, pivot)`. The result is the unique canonical representative
    /// of the lattice generated by the rows.
    #[allow(clippy::needless_range_loop)]
    pub fn hermite_normal_form(&self) -> IntMatrix {
        let m = self.rows;
        let n = self.cols;
        let mut a: Vec<Vec<BigInt>> = (0..m).map(|r| self.row(r).to_vec()).collect();
        let mut pivot_row = 0usize;
        for col in 0..n {
            if pivot_row == m {
                break;
            }
            // Euclidean descent: shrink the column below pivot_row until a
            // single nonzero entry remains.
            loop {
                let mut best: Option<usize> = None;
                for (r, row) in a.iter().enumerate().take(m).skip(pivot_row) {
                    if !row[col].is_zero() {
                        match best {
                            None => best = Some(r),
                            Some(b) => {
                                if row[col].magnitude() < a[b][col].magnitude() {
                                    best = Some(r);
                                }
                            }
                        }
                    }
                }
                let Some(b) = best else { break };
                a.swap(pivot_row, b);
                let mut clean = true;
                for r in pivot_row + 1..m {
                    if !a[r][col].is_zero() {
                        let q = &a[r][col] / &a[pivot_row][col];
                        if !q.is_zero() {
                            for c in col..n {
                                let t = &q * &a[pivot_row][c];
                                a[r][c] -= t;
                            }
                        }
                        if !a[r][col].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if !a[pivot_row][col].is_zero() {
                if a[pivot_row][col].is_negative() {
                    for c in col..n {
                        let v = -a[pivot_row][c].clone();
                        a[pivot_row][c] = v;
                    }
                }
                for i in 0..pivot_row {
                    if !a[i][col].is_zero() {
                        let q = a[i][col].div_floor(&a[pivot_row][col]);
                        if !q.is_zero() {
                            for c in col..n {
                                let t = &q * &a[pivot_row][c];
                                a[i][c] -= t;
                            }
                        }
                    }
                }
                pivot_row += 1;
            }
        }
        a.truncate(pivot_row);
        IntMatrix::from_rows(n, a).expect("rows produced with matching width")
    }

    /// Rank of the row lattice, and for rank one the canonical generator:
    /// `primitive * multiplier` is the Hermite-form row, with `primitive`
    /// of content 1.
    pub fn rank_and_generator(&self) -> (usize, Option<RankOneGenerator>) {
        let h = self.hermite_normal_form();
        if h.rows != 1 {
            return (h.rows, None);
        }
        let row = h.row(0);
        let mut content = BigUint::zero();
        for e in row {
            content = content.gcd(e.magnitude());
        }
        debug_assert!(!content.is_zero());
        let content_int = BigInt::from(content.clone());
        let primitive: Vec<BigInt> = row.iter().map(|e| e / &content_int).collect();
        (
            1,
            Some(RankOneGenerator {
                primitive,
                multiplier: content,
            }),
        )
    }

    /// Gcd over all rows `a` of `|<a, v>|`; zero when all pairings vanish or
    /// the matrix has no rows. For a rank-one lattice this is the order of
    /// the intersection of the dual subgroup with the circle in direction
    /// `v`.
    pub fn pairing_gcd(&self, v: &[BigInt]) -> Result<BigUint> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut g = BigUint::zero();
        for r in 0..self.rows {
            let dot: BigInt = self.row(r).iter().zip(v).map(|(a, b)| a * b).sum();
            g = g.gcd(dot.magnitude());
        }
        Ok(g)
    }
}

/// Generator of a rank-one lattice: the lattice is `Z * (multiplier * primitive)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneGenerator {
    /// Content-1 integer vector.
    pub primitive: Vec<BigInt>,
    /// Positive scale factor; the Hermite row is `multiplier * primitive`.
    pub multiplier: BigUint,
}

impl RankOneGenerator {
    /// The Hermite-form generator row itself.
    pub fn row(&self) -> Vec<BigInt> {
        let m = BigInt::from(self.multiplier.clone());
        self.primitive.iter().map(|p| p * &m).collect()
    }
}

/// Content (gcd of absolute entries) of an integer vector.
pub fn content(v: &[BigInt]) -> BigUint {
    let mut g = BigUint::zero();
    for e in v {
        g = g.gcd(e.magnitude());
    }
    g
}

/// A vector is primitive when its content is exactly 1.
pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v) == BigUint::from(1u32)
}

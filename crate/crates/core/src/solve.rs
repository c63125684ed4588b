//! Exact linear solving over the rationals.
//!
//! Plain Gaussian elimination with exact arithmetic; used for annihilator
//! and weight recovery and for coefficient reconstruction from line
//! restrictions. Overdetermined systems are accepted; inconsistency is
//! detected exactly, and free variables of underdetermined systems are set
//! to zero.

use num_rational::BigRational;
use num_traits::Zero;

/// Solve `a x = b` exactly. Returns `None` when the system is inconsistent,
/// otherwise a particular solution (free variables zero).
#[allow(clippy::needless_range_loop)]
pub fn solve_linear_system(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count of matrix and rhs must agree");
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "ragged matrix");
            let mut v = row.clone();
            v.push(rhs.clone());
            v
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let pivot = aug[row][col].clone();
        for c in col..=n {
            let v = &aug[row][c] / &pivot;
            aug[row][c] = v;
        }
        for r in 0..m {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n {
                    let v = &aug[r][c] - &f * &aug[row][c];
                    aug[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }

    // Rows below the pivot rows must have zero rhs, else inconsistent.
    for r in row..m {
        if !aug[r][n].is_zero() {
            return None;
        }
    }

    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

//! Fraction-free (Bareiss) elimination over ℚ(params).
//!
//! A pivot is only accepted if it is a nonzero constant, so the computed rank
//! holds for every parameter value. When the remaining block is nonzero but
//! has no constant entry, elimination stops with
//! [`Error::ParameterDependentRank`].

use super::Tensor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of elimination: the rank and the pivot columns in order.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Rank of a rank-2 tensor, valid for all parameter values.
pub fn rank(m: &Tensor) -> Result<Elimination> {
    if m.rank() != 2 {
        return Err(Error::shape("rank needs a matrix"));
    }
    let (rows, cols) = (m.shape()[0], m.shape()[1]);
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(&[i, j]).clone()).collect())
        .collect();
    // drop all-zero rows up front; they are common in structure-constant systems
    a.retain(|row| row.iter().any(|v| !v.is_zero()));
    let rows = a.len();

    let mut prev = Scalar::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero() && a[i][c].is_constant()) else {
            if let Some(i) = (r..rows).find(|&i| !a[i][c].is_zero()) {
                return Err(Error::ParameterDependentRank {
                    row: i,
                    col: c,
                    entry: a[i][c].to_string(),
                });
            }
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = piv.mul(&a[i][j]).sub(&lead.mul(&a[r][j]));
                a[i][j] = v.div(&prev).expect("previous pivot is a nonzero constant");
            }
            a[i][c] = Scalar::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Ok(Elimination {
        rank: r,
        pivot_columns: pivots,
    })
}

//! LU factorization with partial pivoting, the workhorse behind every
//! inverse and linear solve in the crate.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Packed LU factors of a square matrix with row pivoting.
///
/// A pivot whose magnitude falls below `tol * max_entry_norm` marks the
/// matrix singular at that tolerance and factorization fails.
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn new(m: &ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        // Relative pivot threshold; an exactly-zero matrix gets an absolute floor.
        let scale = m.norm_max();
        let threshold = if scale > 0.0 {
            tol.abs() * scale
        } else {
            f64::MIN_POSITIVE
        };

        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = lu[(i, k)].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = i;
                }
            }
            if pivot_mag <= threshold {
                return Err(Error::Singular(format!(
                    "pivot {pivot_mag:.3e} at column {k} below tolerance {threshold:.3e}"
                )));
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    let adj = factor * lu[(k, j)];
                    lu[(i, j)] -= adj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    /// Solve `A * X = rhs` for a (possibly multi-column) right-hand side.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.lu.rows();
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "solve rhs has {} rows, expected {n}",
                rhs.rows()
            )));
        }
        let k = rhs.cols();
        let mut x = ComplexMatrix::zeros(n, k);
        // apply permutation
        for i in 0..n {
            for j in 0..k {
                x[(i, j)] = rhs[(self.perm[i], j)];
            }
        }
        // forward substitution (unit lower triangle)
        for i in 0..n {
            for l in 0..i {
                let f = self.lu[(i, l)];
                for j in 0..k {
                    let adj = f * x[(l, j)];
                    x[(i, j)] -= adj;
                }
            }
        }
        // back substitution
        for i in (0..n).rev() {
            for l in (i + 1)..n {
                let f = self.lu[(i, l)];
                for j in 0..k {
                    let adj = f * x[(l, j)];
                    x[(i, j)] -= adj;
                }
            }
            let d = self.lu[(i, i)];
            for j in 0..k {
                x[(i, j)] /= d;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.lu.rows()))
    }

    /// Determinant from the factorization (product of pivots, sign from the
    /// permutation parity).
    pub fn det(&self) -> Complex64 {
        let n = self.lu.rows();
        let mut det = Complex64::new(1.0, 0.0);
        for i in 0..n {
            det *= self.lu[(i, i)];
        }
        // permutation parity
        let mut visited = vec![false; n];
        let mut swaps = 0usize;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0usize;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.perm[i];
                len += 1;
            }
            swaps += len.saturating_sub(1);
        }
        if swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }
}

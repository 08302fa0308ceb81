//! Batch kernels with sequential and data-parallel variants.
//!
//! The `parallel` feature (on by default) routes large batches and large
//! matrix products through rayon; without it everything runs sequentially.
//! The `_seq` entry points are always compiled so the two paths can be
//! compared directly in benches and tests.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::realization::Realization;
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Element-count threshold above which a matrix product is worth splitting
/// across threads.
const PAR_MATMUL_WORK: usize = 1 << 18;

/// Sequential dense product kernel (dimensions already validated).
pub fn matmul_seq(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
    matmul_rows(a, b, 0, out.data_mut());
    out
}

/// Parallel dense product kernel, splitting output rows across threads.
#[cfg(feature = "parallel")]
pub fn matmul_par(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (a.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    out.data_mut()
        .par_chunks_mut(cols)
        .enumerate()
        .for_each(|(i, row)| matmul_rows(a, b, i, row));
    out
}

fn matmul_rows(a: &ComplexMatrix, b: &ComplexMatrix, first_row: usize, out: &mut [Complex64]) {
    let inner = a.cols();
    let cols = b.cols();
    if cols == 0 {
        return;
    }
    let row_count = out.len() / cols;
    for local in 0..row_count {
        let i = first_row + local;
        let dst = &mut out[local * cols..(local + 1) * cols];
        for k in 0..inner {
            let f = a[(i, k)];
            let brow = b.row(k);
            for (d, bv) in dst.iter_mut().zip(brow) {
                *d += f * bv;
            }
        }
    }
}

pub(crate) fn matmul_dispatch(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    #[cfg(feature = "parallel")]
    {
        if a.rows() * a.cols() * b.cols() >= PAR_MATMUL_WORK {
            return matmul_par(a, b);
        }
    }
    matmul_seq(a, b)
}

/// Apply `f` to every item of a slice, sequentially.
pub fn map_slice_seq<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Apply `f` to every item of a slice across threads.
#[cfg(feature = "parallel")]
pub fn map_slice_par<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

/// Apply `f` to every item, in parallel when the feature is enabled.
pub fn map_slice<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        if items.len() > 1 {
            return map_slice_par(items, f);
        }
    }
    map_slice_seq(items, f)
}

/// Evaluate a realization at every point of a grid, sequentially.
pub fn eval_many_seq(r: &Realization, points: &[Complex64]) -> Vec<Result<ComplexMatrix>> {
    map_slice_seq(points, |z| r.eval(*z))
}

/// Evaluate a realization at every point of a grid across threads.
#[cfg(feature = "parallel")]
pub fn eval_many_par(r: &Realization, points: &[Complex64]) -> Vec<Result<ComplexMatrix>> {
    map_slice_par(points, |z| r.eval(*z))
}

/// Evaluate a realization at every point of a grid.
pub fn eval_many(r: &Realization, points: &[Complex64]) -> Vec<Result<ComplexMatrix>> {
    map_slice(points, |z| r.eval(*z))
}

//! Eigendecomposition of general complex matrices.
//!
//! Pipeline: unitary Hessenberg reduction (Householder), explicit
//! single-shift QR with Wilkinson shifts and deflation down to a Schur form
//! `A = Q T Q*`, then eigenvectors of the triangular factor by protected
//! back-substitution. Sized for desk-scale matrices, not for bulk numerics.

use num_complex::Complex64;

use super::{c, numeric_rank, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenvalues of a square matrix, with multiplicity, sorted
/// lexicographically by (re, im).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let (t, _) = schur(a, false)?;
    let mut vals: Vec<Complex64> = (0..t.rows()).map(|i| t[(i, i)]).collect();
    sort_lex(&mut vals);
    Ok(vals)
}

/// Diagonalization in the form `A = V^{-1} diag(eigenvalues) V`.
///
/// Eigenvalues are listed with multiplicity and sorted lexicographically by
/// (re, im). Fails with [`Error::NotDiagonalizable`] when the eigenvector
/// matrix is rank-deficient at the relative tolerance `tol` (a nontrivial
/// Jordan block at working precision).
pub fn eig_diagonalize(a: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok((ComplexMatrix::zeros(0, 0), Vec::new()));
    }
    let (t, q) = schur(a, true)?;
    let q = q.expect("schur with vectors");

    // Eigenvectors of the triangular factor, one per diagonal entry.
    let norm_t = t.norm_max().max(f64::MIN_POSITIVE);
    let smin = f64::EPSILON * norm_t;
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![c(0.0, 0.0); n];
        y[k] = c(1.0, 0.0);
        for i in (0..k).rev() {
            let mut sum = c(0.0, 0.0);
            for j in (i + 1)..=k {
                sum += t[(i, j)] * y[j];
            }
            let mut diag = t[(i, i)] - lambda;
            if diag.norm() < smin {
                diag = c(smin, 0.0);
            }
            y[i] = -sum / diag;
            let mag = y[i].norm();
            if mag > 1e100 {
                for v in y.iter_mut() {
                    *v /= mag;
                }
            }
        }
        pairs.push((lambda, y));
    }
    pairs.sort_by(|l, r| lex_cmp(l.0, r.0));

    // Columns of P are eigenvectors of A mapped back through Q, normalized.
    let mut p = ComplexMatrix::zeros(n, n);
    for (col, (_, y)) in pairs.iter().enumerate() {
        let mut x = vec![c(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = c(0.0, 0.0);
            for j in 0..n {
                acc += q[(i, j)] * y[j];
            }
            x[i] = acc;
        }
        let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for (i, v) in x.iter().enumerate() {
            p[(i, col)] = v / norm;
        }
    }
    if numeric_rank(&p, tol) < n {
        return Err(Error::NotDiagonalizable);
    }
    let v = p.inverse(f64::EPSILON)?;
    let values = pairs.into_iter().map(|(l, _)| l).collect();
    Ok((v, values))
}

pub(crate) fn sort_lex(vals: &mut [Complex64]) {
    vals.sort_by(|l, r| lex_cmp(*l, *r));
}

pub fn lex_cmp(l: Complex64, r: Complex64) -> std::cmp::Ordering {
    l.re.partial_cmp(&r.re)
        .unwrap()
        .then(l.im.partial_cmp(&r.im).unwrap())
}

/// Schur form `A = Q T Q*` with `T` upper triangular.
fn schur(a: &ComplexMatrix, want_q: bool) -> Result<(ComplexMatrix, Option<ComplexMatrix>)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n <= 1 {
        let q = want_q.then(|| ComplexMatrix::identity(n));
        return Ok((a.clone(), q));
    }
    let (mut h, mut q) = hessenberg(a, want_q);
    let norm_h = h.norm_max().max(f64::MIN_POSITIVE);

    let mut hi = n - 1;
    let mut stalls = 0usize;
    let mut total_iters = 0usize;
    let max_iters = 60 * n;
    loop {
        // deflate negligible subdiagonals
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut ulp = f64::EPSILON * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm());
            if ulp == 0.0 {
                ulp = f64::EPSILON * norm_h;
            }
            if sub <= ulp {
                h[(lo, lo - 1)] = c(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            // eigenvalue at position hi has converged
            if hi == 0 {
                break;
            }
            hi -= 1;
            stalls = 0;
            continue;
        }

        total_iters += 1;
        if total_iters > max_iters {
            return Err(Error::ConvergenceFailure(format!(
                "QR iteration exceeded {max_iters} steps"
            )));
        }
        stalls += 1;
        let mu = if stalls.is_multiple_of(12) {
            // exceptional shift to break rare limit cycles
            h[(hi, hi)] + c(1.0, 0.5).scale_complex(h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        qr_step(&mut h, q.as_mut(), lo, hi, mu);
    }

    // clean the strictly lower part (rounding residue below the subdiagonal)
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = c(0.0, 0.0);
        }
    }
    Ok((h, q))
}

trait ScaleComplex {
    fn scale_complex(self, f: f64) -> Complex64;
}

impl ScaleComplex for Complex64 {
    fn scale_complex(self, f: f64) -> Complex64 {
        c(self.re * f, self.im * f)
    }
}

/// One explicit shifted QR step on the active block `lo..=hi` of a
/// Hessenberg matrix, updating `q` when present.
fn qr_step(
    h: &mut ComplexMatrix,
    q: Option<&mut ComplexMatrix>,
    lo: usize,
    hi: usize,
    mu: Complex64,
) {
    let n = h.rows();
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    // (H - mu I) = G_lo^* ... G_{hi-1}^* R  via Givens eliminating each subdiagonal
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (cs, sn, r) = givens(h[(k, k)], h[(k + 1, k)]);
        h[(k, k)] = r;
        h[(k + 1, k)] = c(0.0, 0.0);
        for j in (k + 1)..n {
            let top = h[(k, j)];
            let bot = h[(k + 1, j)];
            h[(k, j)] = top.scale_complex(cs) + sn * bot;
            h[(k + 1, j)] = -sn.conj() * top + bot.scale_complex(cs);
        }
        rots.push((cs, sn));
    }
    // H <- R Q + mu I, applying each G_k^* from the right on columns (k, k+1)
    for (idx, &(cs, sn)) in rots.iter().enumerate() {
        let k = lo + idx;
        for i in 0..=(k + 1).min(hi) {
            let left = h[(i, k)];
            let right = h[(i, k + 1)];
            h[(i, k)] = left.scale_complex(cs) + right * sn.conj();
            h[(i, k + 1)] = -left * sn + right.scale_complex(cs);
        }
    }
    if let Some(q) = q {
        for (idx, &(cs, sn)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in 0..n {
                let left = q[(i, k)];
                let right = q[(i, k + 1)];
                q[(i, k)] = left.scale_complex(cs) + right * sn.conj();
                q[(i, k + 1)] = -left * sn + right.scale_complex(cs);
            }
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Unitary rotation `[[c, s], [-conj(s), c]]` (c real) mapping `[f; g]` to `[r; 0]`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, c(0.0, 0.0), f);
    }
    if f.norm() == 0.0 {
        let r = c(g.norm(), 0.0);
        return (0.0, g.conj() / g.norm(), r);
    }
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let cs = f.norm() / denom;
    let fsign = f / f.norm();
    let sn = fsign * g.conj() / denom;
    let r = fsign.scale_complex(denom);
    (cs, sn, r)
}

/// Eigenvalue of `[[a, b], [cc, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Complex64 {
    let tr_half = (a + d).scale_complex(0.5);
    let diff_half = (a - d).scale_complex(0.5);
    let disc = (diff_half * diff_half + b * cc).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Reduce to upper Hessenberg form `A = Q H Q*` by Householder reflectors.
fn hessenberg(a: &ComplexMatrix, want_q: bool) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = want_q.then(|| ComplexMatrix::identity(n));
    if n < 3 {
        return (h, q);
    }
    for col in 0..(n - 2) {
        // reflector for the subcolumn h[col+1.., col]
        let len = n - col - 1;
        let mut x: Vec<Complex64> = (0..len).map(|i| h[(col + 1 + i, col)]).collect();
        let norm_x = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            c(1.0, 0.0)
        };
        let alpha = -phase.scale_complex(norm_x);
        x[0] -= alpha;
        let vnorm_sqr: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // left: rows col+1..n of columns col..n
        for j in col..n {
            let mut dot = c(0.0, 0.0);
            for i in 0..len {
                dot += x[i].conj() * h[(col + 1 + i, j)];
            }
            let dot = dot.scale_complex(tau);
            for i in 0..len {
                let adj = x[i] * dot;
                h[(col + 1 + i, j)] -= adj;
            }
        }
        // right: columns col+1..n of all rows
        for i in 0..n {
            let mut dot = c(0.0, 0.0);
            for j in 0..len {
                dot += h[(i, col + 1 + j)] * x[j];
            }
            let dot = dot.scale_complex(tau);
            for j in 0..len {
                let adj = dot * x[j].conj();
                h[(i, col + 1 + j)] -= adj;
            }
        }
        if let Some(q) = q.as_mut() {
            for i in 0..n {
                let mut dot = c(0.0, 0.0);
                for j in 0..len {
                    dot += q[(i, col + 1 + j)] * x[j];
                }
                let dot = dot.scale_complex(tau);
                for j in 0..len {
                    let adj = dot * x[j].conj();
                    q[(i, col + 1 + j)] -= adj;
                }
            }
        }
        // zero out the annihilated part explicitly
        h[(col + 1, col)] = alpha;
        for i in (col + 2)..n {
            h[(i, col)] = c(0.0, 0.0);
        }
    }
    (h, q)
}

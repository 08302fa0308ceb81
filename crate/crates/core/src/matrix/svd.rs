//! Singular values by one-sided Jacobi, and the numeric rank built on them.

use num_complex::Complex64;

use super::ComplexMatrix;

/// Singular values, descending. Implemented by one-sided Jacobi sweeps on
/// the columns (orthogonalizing pairs until the Gram matrix is diagonal).
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    // one-sided Jacobi wants rows >= cols
    let work = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let (rows, cols) = (work.rows(), work.cols());
    let mut g: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| work[(i, j)]).collect())
        .collect();

    let total: f64 = g
        .iter()
        .map(|col| col.iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum();
    if total == 0.0 {
        return vec![0.0; cols];
    }
    let stop = f64::EPSILON * total;

    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let mut a = 0.0f64;
                let mut b = 0.0f64;
                let mut d = Complex64::new(0.0, 0.0);
                for (gi, gj) in g[i].iter().zip(&g[j]) {
                    a += gi.norm_sqr();
                    b += gj.norm_sqr();
                    d += gi.conj() * gj;
                }
                let mag = d.norm();
                if mag * mag <= stop * f64::EPSILON || mag <= f64::EPSILON * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = d / mag;
                let tau = (b - a) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let s_phase = Complex64::new(phase.re * sn, phase.im * sn);
                let (head, tail) = g.split_at_mut(j);
                for (gi, gj) in head[i].iter_mut().zip(tail[0].iter_mut()) {
                    let (old_i, old_j) = (*gi, *gj);
                    *gi = Complex64::new(old_i.re * cs, old_i.im * cs) - s_phase.conj() * old_j;
                    *gj = s_phase * old_i + Complex64::new(old_j.re * cs, old_j.im * cs);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = g
        .iter()
        .map(|col| col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|l, r| r.partial_cmp(l).unwrap());
    sigma
}

/// Count of singular values above `tol` times the largest one.
pub fn numeric_rank(m: &ComplexMatrix, tol: f64) -> usize {
    let sigma = singular_values(m);
    let largest = sigma.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol * largest).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(numeric_rank(&ComplexMatrix::zeros(3, 3), 1e-9), 0);
    }

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(numeric_rank(&ComplexMatrix::identity(3), 1e-9), 3);
    }

    #[test]
    fn outer_product_has_rank_one() {
        let u =
            ComplexMatrix::from_rows(&[vec![c(1.0, 2.0)], vec![c(-0.5, 0.3)], vec![c(0.7, 0.0)]])
                .unwrap();
        let v = ComplexMatrix::from_rows(&[vec![c(2.0, -1.0)], vec![c(0.4, 0.9)]]).unwrap();
        let outer = &u * &v.adjoint();
        assert_eq!(numeric_rank(&outer, 1e-9), 1);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let d = ComplexMatrix::diagonal(&[c(0.0, 3.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let s = singular_values(&d);
        assert!((s[0] - 3.0).abs() < 1e-12);
        assert!((s[1] - 1.0).abs() < 1e-12);
        assert!(s[2].abs() < 1e-12);
    }

    #[test]
    fn rank_of_wide_matrix() {
        let m =
            ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 2.0, 0.0], &[0.0, 1.0, 0.0, 3.0]]).unwrap();
        assert_eq!(numeric_rank(&m, 1e-9), 2);
    }

    #[test]
    fn empty_matrix_rank_zero() {
        assert_eq!(numeric_rank(&ComplexMatrix::zeros(0, 4), 1e-9), 0);
    }

    #[test]
    fn singular_values_match_sqrt_gram_eigenvalues() {
        let mut rng = crate::random::rng(17);
        let m = crate::random::matrix(5, 3, &mut rng);
        let s = singular_values(&m);
        let gram = &m.adjoint() * &m;
        let mut eigs = crate::matrix::hermitian_eigenvalues(&gram);
        eigs.reverse();
        for (sv, ev) in s.iter().zip(eigs.iter()) {
            assert!((sv * sv - ev).abs() < 1e-10 * (1.0 + ev.abs()));
        }
    }
}

//! Hermitian eigenvalues by cyclic Jacobi rotations, and the positive
//! (semi-)definiteness classifier built on them.

use num_complex::Complex64;

use super::{c, ComplexMatrix};

/// Classification of a square matrix against the positive (semi-)definite cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsdStatus {
    PositiveDefinite,
    PositiveSemiDefinite,
    Indefinite,
    NotHermitian,
}

impl PsdStatus {
    /// True for `PositiveDefinite` and `PositiveSemiDefinite`.
    pub fn is_psd(self) -> bool {
        matches!(
            self,
            PsdStatus::PositiveDefinite | PsdStatus::PositiveSemiDefinite
        )
    }
}

/// Eigenvalues of a Hermitian matrix, ascending. The caller is responsible
/// for `h` being Hermitian; only the Hermitian part drives the result.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    assert!(
        h.is_square(),
        "hermitian_eigenvalues requires a square matrix"
    );
    let n = h.rows();
    if n == 0 {
        return Vec::new();
    }
    // work on the exact Hermitian part to tolerate rounding asymmetry
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()).scale(0.5));

    let norm = a.norm_fro().max(f64::MIN_POSITIVE);
    let stop = f64::EPSILON * norm;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= stop / (n as f64) {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let s_phase = phase.scale(sn);
                // columns p, q
                for r in 0..n {
                    let hp = a[(r, p)];
                    let hq = a[(r, q)];
                    a[(r, p)] = hp.scale(cs) - s_phase.conj() * hq;
                    a[(r, q)] = s_phase * hp + hq.scale(cs);
                }
                // rows p, q
                for r in 0..n {
                    let hp = a[(p, r)];
                    let hq = a[(q, r)];
                    a[(p, r)] = hp.scale(cs) - s_phase * hq;
                    a[(q, r)] = s_phase.conj() * hp + hq.scale(cs);
                }
                a[(p, q)] = c(0.0, 0.0);
                a[(q, p)] = c(0.0, 0.0);
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    vals.sort_by(|l, r| l.partial_cmp(r).unwrap());
    vals
}

trait ScaleBy {
    fn scale(self, f: f64) -> Complex64;
}

impl ScaleBy for Complex64 {
    fn scale(self, f: f64) -> Complex64 {
        c(self.re * f, self.im * f)
    }
}

/// Classify a square matrix: Hermitian within `tol * norm`, then positive
/// definite / semidefinite / indefinite by the smallest eigenvalue of its
/// Hermitian part against `±tol * norm`.
pub fn herm_psd_check(h: &ComplexMatrix, tol: f64) -> PsdStatus {
    herm_psd_check_scaled(h, tol, 0.0)
}

/// [`herm_psd_check`] with an external reference scale, for matrices that
/// inherit the magnitude of a larger computation (a Schur complement of a
/// nearly singular block matrix can be zero up to rounding in the parent's
/// scale; judged against its own tiny norm it would classify as noise).
pub fn herm_psd_check_scaled(h: &ComplexMatrix, tol: f64, scale: f64) -> PsdStatus {
    assert!(h.is_square(), "herm_psd_check requires a square matrix");
    let n = h.rows();
    if n == 0 {
        return PsdStatus::PositiveDefinite;
    }
    let reference = h.norm_fro().max(scale);
    let asym = h.matsub(&h.adjoint()).expect("same shape").norm_fro();
    if reference > 0.0 && asym > tol * reference {
        return PsdStatus::NotHermitian;
    }
    let reference = reference.max(f64::MIN_POSITIVE);
    let min_eig = hermitian_eigenvalues(h)
        .into_iter()
        .next()
        .unwrap_or(f64::INFINITY);
    if min_eig > tol * reference {
        PsdStatus::PositiveDefinite
    } else if min_eig >= -tol * reference {
        PsdStatus::PositiveSemiDefinite
    } else {
        PsdStatus::Indefinite
    }
}

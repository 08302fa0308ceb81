//! Seeded generators for random test instances.
//!
//! Everything here is deterministic given the seed (ChaCha8), so oracle
//! tests and the acceptance suite are reproducible across platforms.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::matrix::{c, ComplexMatrix};
use crate::realization::Realization;

/// Deterministic RNG for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex scalar with re, im uniform in [-1, 1].
pub fn scalar(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Matrix with i.i.d. entries uniform in the unit square.
pub fn matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| scalar(rng))
}

/// Random unitary matrix (modified Gram-Schmidt on a random matrix).
pub fn unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| scalar(rng)).collect();
        // orthogonalize twice against what we already have
        for _ in 0..2 {
            for u in &cols {
                let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= dot * ui;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        cols.push(v);
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Square matrix with condition number at most 4: `U1 diag(s) U2` with
/// singular values in [0.5, 2].
pub fn well_conditioned(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let u1 = unitary(n, rng);
    let u2 = unitary(n, rng);
    let sigma: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(0.5..2.0), 0.0)).collect();
    &(&u1 * &ComplexMatrix::diagonal(&sigma)) * &u2
}

/// Diagonalizable matrix `V^{-1} diag(lambda) V` with a well-conditioned `V`
/// and eigenvalues drawn from the disk of radius 2.
pub fn diagonalizable(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let lambdas: Vec<Complex64> = (0..n)
        .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    diagonalizable_with_eigenvalues(&lambdas, rng)
}

/// Diagonalizable matrix with the given eigenvalues (repeats allowed) and a
/// well-conditioned similarity.
pub fn diagonalizable_with_eigenvalues(
    lambdas: &[Complex64],
    rng: &mut ChaCha8Rng,
) -> ComplexMatrix {
    let n = lambdas.len();
    let v = well_conditioned(n, rng);
    let d = ComplexMatrix::diagonal(lambdas);
    let v_inv = v.inverse(1e-12).expect("well-conditioned");
    &v_inv * &(&d * &v)
}

/// Hermitian positive definite matrix.
pub fn hpd(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = matrix(n, n, rng);
    let gram = &g * &g.adjoint();
    gram.matadd(&ComplexMatrix::identity(n).scale(c(0.25, 0.0)))
        .expect("square")
}

/// Hermitian positive semidefinite matrix of the given rank.
pub fn psd(n: usize, rank: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    if rank == 0 {
        return ComplexMatrix::zeros(n, n);
    }
    let g = matrix(n, rank, rng);
    &g * &g.adjoint()
}

/// Fully random realization with the given dimensions.
pub fn realization(n: usize, p: usize, m: usize, rng: &mut ChaCha8Rng) -> Realization {
    Realization::new(
        matrix(n, n, rng),
        matrix(n, m, rng),
        matrix(p, n, rng),
        matrix(p, m, rng),
    )
    .expect("consistent dimensions")
}

/// Square-valued realization whose feedthrough `D` has condition number
/// at most 4, so it is safely invertible.
pub fn realization_invertible_d(n: usize, p: usize, rng: &mut ChaCha8Rng) -> Realization {
    Realization::new(
        matrix(n, n, rng),
        matrix(n, p, rng),
        matrix(p, n, rng),
        well_conditioned(p, rng),
    )
    .expect("consistent dimensions")
}

/// Scalar-valued realization of exact McMillan degree `n`: distinct poles,
/// nonzero residues, random feedthrough.
pub fn minimal_scalar(n: usize, rng: &mut ChaCha8Rng) -> Realization {
    let mut poles: Vec<Complex64> = Vec::with_capacity(n);
    while poles.len() < n {
        let cand = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if poles.iter().all(|p| (p - cand).norm() > 0.2) {
            poles.push(cand);
        }
    }
    let residues: Vec<Complex64> = (0..n)
        .map(|_| {
            let mut r = scalar(rng);
            while r.norm() < 0.2 {
                r = scalar(rng);
            }
            r
        })
        .collect();
    Realization::new(
        ComplexMatrix::diagonal(&poles),
        ComplexMatrix::from_fn(n, 1, |_, _| c(1.0, 0.0)),
        ComplexMatrix::from_fn(1, n, |_, j| residues[j]),
        ComplexMatrix::scalar(scalar(rng)),
    )
    .expect("consistent dimensions")
}

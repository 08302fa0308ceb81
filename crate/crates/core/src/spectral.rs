//! Structural analysis of realizations: eigenvector (PBH) and Kalman-rank
//! controllability/observability tests, minimality, McMillan degree, oblique
//! spectral projections and partial-fraction realizations.
//!
//! Conventions. `eig_diagonalize` returns `V` with `A = V^{-1} diag(a) V`,
//! so the coordinate change `S = V^{-1}` carries `(A, B, C)` to
//! `(diag(a), V B, C V^{-1})`. The eigenvector test inspects the row blocks
//! of `V B` (one block per distinct eigenvalue) and the column blocks of
//! `C V^{-1}`; a pair is controllable / observable exactly when every block
//! has full rank.
//!
//! Eigenvalues whose pairwise distance is at most `tol * |A|` are merged into
//! one distinct eigenvalue when forming projections; multiplicities are the
//! cluster sizes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c, eig_diagonalize, numeric_rank, ComplexMatrix};
use crate::realization::Realization;

/// One distinct eigenvalue of a diagonalizable matrix with its oblique
/// spectral projection.
#[derive(Debug, Clone)]
pub struct SpectralTerm {
    pub eigenvalue: Complex64,
    pub projection: ComplexMatrix,
    pub multiplicity: usize,
}

/// Distinct eigenvalues with oblique projections: `Pi_j Pi_k = delta_jk Pi_j`,
/// `sum Pi_j = I`, `sum a_j Pi_j = A`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub terms: Vec<SpectralTerm>,
}

impl SpectralDecomposition {
    /// Reconstruct `A` as `sum a_j Pi_j`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.terms.first().map_or(0, |t| t.projection.rows());
        let mut acc = ComplexMatrix::zeros(n, n);
        for t in &self.terms {
            acc = acc
                .matadd(&t.projection.scale(t.eigenvalue))
                .expect("uniform projection dimensions");
        }
        acc
    }

    /// Resolvent `(zI - A)^{-1} = sum Pi_j (z - a_j)^{-1} Pi_j`.
    pub fn resolvent(&self, z: Complex64) -> Result<ComplexMatrix> {
        let n = self.terms.first().map_or(0, |t| t.projection.rows());
        let mut acc = ComplexMatrix::zeros(n, n);
        for t in &self.terms {
            let gap = z - t.eigenvalue;
            if gap.norm() < 1e-300 {
                return Err(Error::Pole { z });
            }
            let piece = t.projection.matmul(&t.projection)?;
            acc = acc.matadd(&piece.scale(c(1.0, 0.0) / gap))?;
        }
        Ok(acc)
    }
}

/// One simple-pole term `C_j (z - a_j)^{-1} B_j` of a partial-fraction
/// realization, with `B_j = Pi_j B` and `C_j = C Pi_j`.
#[derive(Debug, Clone)]
pub struct PartialFractionTerm {
    pub pole: Complex64,
    pub input: ComplexMatrix,
    pub output: ComplexMatrix,
    pub multiplicity: usize,
}

/// Partial-fraction form `F(z) = D + sum C_j (z - a_j)^{-1} B_j`.
#[derive(Debug, Clone)]
pub struct PartialFractionForm {
    pub d: ComplexMatrix,
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractionForm {
    pub fn eval(&self, z: Complex64) -> Result<ComplexMatrix> {
        let mut acc = self.d.clone();
        for t in &self.terms {
            let gap = z - t.pole;
            if gap.norm() < 1e-300 {
                return Err(Error::Pole { z });
            }
            let piece = t.output.matmul(&t.input)?.scale(c(1.0, 0.0) / gap);
            acc = acc.matadd(&piece)?;
        }
        Ok(acc)
    }

    /// Sum of the input blocks (equals `B` of the source realization).
    pub fn input_sum(&self) -> ComplexMatrix {
        let (rows, cols) = self
            .terms
            .first()
            .map_or((0, 0), |t| (t.input.rows(), t.input.cols()));
        let mut acc = ComplexMatrix::zeros(rows, cols);
        for t in &self.terms {
            acc = acc.matadd(&t.input).expect("uniform dimensions");
        }
        acc
    }

    /// Sum of the output blocks (equals `C` of the source realization).
    pub fn output_sum(&self) -> ComplexMatrix {
        let (rows, cols) = self
            .terms
            .first()
            .map_or((0, 0), |t| (t.output.rows(), t.output.cols()));
        let mut acc = ComplexMatrix::zeros(rows, cols);
        for t in &self.terms {
            acc = acc.matadd(&t.output).expect("uniform dimensions");
        }
        acc
    }
}

/// Group indices of tol-close eigenvalues (single linkage).
fn cluster_indices(vals: &[Complex64], scale: f64, tol: f64) -> Vec<Vec<usize>> {
    let n = vals.len();
    let threshold = tol * scale.max(f64::MIN_POSITIVE);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (vals[i] - vals[j]).norm() <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(slot) => clusters[slot].push(i),
            None => {
                root_of[r] = Some(clusters.len());
                clusters.push(vec![i]);
            }
        }
    }
    clusters
}

struct DiagonalizedPair {
    /// `V` with `A = V^{-1} diag(vals) V`
    v: ComplexMatrix,
    v_inv: ComplexMatrix,
    vals: Vec<Complex64>,
    clusters: Vec<Vec<usize>>,
}

fn diagonalize_clustered(a: &ComplexMatrix, tol: f64) -> Result<DiagonalizedPair> {
    let (v, vals) = eig_diagonalize(a, tol)?;
    let v_inv = v.inverse(f64::EPSILON)?;
    let clusters = cluster_indices(&vals, a.norm_max(), tol);
    Ok(DiagonalizedPair {
        v,
        v_inv,
        vals,
        clusters,
    })
}

/// Eigenvector test for controllability of the pair `(A, B)`.
///
/// Requires `A` diagonalizable at `tol`; true exactly when every row block
/// of the transformed input map (one block per distinct eigenvalue) has full
/// row rank. In particular the input count must be at least the largest
/// multiplicity.
pub fn pbh_controllable(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "input map has {} rows, state dimension is {}",
            b.rows(),
            a.rows()
        )));
    }
    let dp = diagonalize_clustered(a, tol)?;
    let bt = dp.v.matmul(b)?;
    // block ranks are judged against the scale of the whole transformed map:
    // an uncontrollable mode shows up as a block that is negligible globally,
    // even though relative to itself it still looks full rank
    let scale = bt.norm_fro();
    for cluster in &dp.clusters {
        let block = ComplexMatrix::from_fn(cluster.len(), bt.cols(), |i, j| bt[(cluster[i], j)]);
        if !block_has_rank(&block, cluster.len(), scale, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the `need`-th largest singular value of `block` exceeds
/// `tol * scale`.
fn block_has_rank(block: &ComplexMatrix, need: usize, scale: f64, tol: f64) -> bool {
    let sigma = crate::matrix::singular_values(block);
    sigma.len() >= need && sigma[need - 1] > tol * scale.max(f64::MIN_POSITIVE)
}

/// Eigenvector test for observability of the pair `(A, C)`; the dual of
/// [`pbh_controllable`] via column blocks of the transformed output map.
pub fn pbh_observable(a: &ComplexMatrix, cmat: &ComplexMatrix, tol: f64) -> Result<bool> {
    if cmat.cols() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "output map has {} columns, state dimension is {}",
            cmat.cols(),
            a.rows()
        )));
    }
    let dp = diagonalize_clustered(a, tol)?;
    let ct = cmat.matmul(&dp.v_inv)?;
    let scale = ct.norm_fro();
    for cluster in &dp.clusters {
        let block = ComplexMatrix::from_fn(ct.rows(), cluster.len(), |i, j| ct[(i, cluster[j])]);
        if !block_has_rank(&block, cluster.len(), scale, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale `A` to unit size before forming Krylov blocks; the spanned spaces,
/// hence the rank verdicts, are unchanged.
fn scaled_state(a: &ComplexMatrix) -> ComplexMatrix {
    let norm = a.norm_fro();
    if norm > 1.0 {
        a.scale(c(1.0 / norm, 0.0))
    } else {
        a.clone()
    }
}

fn krylov_controllability(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    if n == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    let a = scaled_state(a);
    let mut blocks: Vec<ComplexMatrix> = Vec::with_capacity(n);
    blocks.push(b.clone());
    for k in 1..n {
        let next = a.matmul(&blocks[k - 1]).expect("dimensions fixed");
        blocks.push(next);
    }
    let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
    ComplexMatrix::hstack(&refs).expect("uniform rows")
}

/// Kalman rank test for controllability: rank `[B, AB, ..., A^{n-1} B] = n`.
pub fn kalman_controllable(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "input map has {} rows, state dimension is {}",
            b.rows(),
            a.rows()
        )));
    }
    let n = a.rows();
    Ok(numeric_rank(&krylov_controllability(a, b), tol) == n)
}

/// Kalman rank test for observability (controllability of the adjoint pair).
pub fn kalman_observable(a: &ComplexMatrix, cmat: &ComplexMatrix, tol: f64) -> Result<bool> {
    if cmat.cols() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "output map has {} columns, state dimension is {}",
            cmat.cols(),
            a.rows()
        )));
    }
    kalman_controllable(&a.adjoint(), &cmat.adjoint(), tol)
}

/// Minimality: controllable and observable. Uses the eigenvector test when
/// `A` is diagonalizable at `tol` and falls back to Kalman ranks otherwise.
pub fn is_minimal(r: &Realization, tol: f64) -> bool {
    if r.state_dim() == 0 {
        return true;
    }
    match (
        pbh_controllable(r.a(), r.b(), tol),
        pbh_observable(r.a(), r.c(), tol),
    ) {
        (Ok(ctrl), Ok(obs)) => ctrl && obs,
        _ => {
            kalman_controllable(r.a(), r.b(), tol).unwrap_or(false)
                && kalman_observable(r.a(), r.c(), tol).unwrap_or(false)
        }
    }
}

/// McMillan degree as the numeric rank of the Hankel product
/// `Obs(A, C) * Ctrl(A, B)` of the Krylov stackings.
///
/// A Hankel product that is negligible relative to its factors (exact
/// cancellation, as for `F F^{-1} = I`) is treated as zero rather than
/// ranked against its own rounding noise.
pub fn mcmillan_degree(r: &Realization, tol: f64) -> usize {
    let n = r.state_dim();
    if n == 0 {
        return 0;
    }
    let ctrl = krylov_controllability(r.a(), r.b());
    let obs = krylov_controllability(&r.a().adjoint(), &r.c().adjoint()).adjoint();
    let hankel = obs.matmul(&ctrl).expect("dimensions fixed");
    let factor_scale = obs.norm_fro() * ctrl.norm_fro();
    let sigma = crate::matrix::singular_values(&hankel);
    let largest = sigma.first().copied().unwrap_or(0.0);
    if largest <= tol * factor_scale {
        return 0;
    }
    // the exact rank never exceeds the state dimension; anything above n is
    // noise promoted past the threshold
    sigma.iter().filter(|&&s| s > tol * largest).count().min(n)
}

/// Distinct eigenvalues of a diagonalizable matrix with their oblique
/// projections `Pi_j = V^{-1} E_j V`, sorted by eigenvalue.
pub fn spectral_projections(a: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    let dp = diagonalize_clustered(a, tol)?;
    let n = a.rows();
    let mut terms = Vec::with_capacity(dp.clusters.len());
    for cluster in &dp.clusters {
        let mut indicator = ComplexMatrix::zeros(n, n);
        for &i in cluster {
            indicator[(i, i)] = c(1.0, 0.0);
        }
        let projection = dp.v_inv.matmul(&indicator.matmul(&dp.v)?)?;
        let mean = cluster.iter().fold(c(0.0, 0.0), |acc, &i| acc + dp.vals[i])
            / c(cluster.len() as f64, 0.0);
        terms.push(SpectralTerm {
            eigenvalue: mean,
            projection,
            multiplicity: cluster.len(),
        });
    }
    terms.sort_by(|l, r| crate::matrix::lex_cmp(l.eigenvalue, r.eigenvalue));
    Ok(SpectralDecomposition { terms })
}

/// Partial-fraction realization of `F(z)` for diagonalizable `A`.
///
/// With `distinct = false` there is one rank-one term per eigenvalue
/// (multiplicity included); with `distinct = true` one term per distinct
/// eigenvalue after tol-clustering. In both cases the input/output blocks
/// sum back to `B` and `C`.
pub fn partial_fractions(r: &Realization, distinct: bool, tol: f64) -> Result<PartialFractionForm> {
    let n = r.state_dim();
    let dp = diagonalize_clustered(r.a(), tol)?;
    let groups: Vec<Vec<usize>> = if distinct {
        dp.clusters.clone()
    } else {
        (0..n).map(|i| vec![i]).collect()
    };
    let mut terms = Vec::with_capacity(groups.len());
    for group in &groups {
        let mut indicator = ComplexMatrix::zeros(n, n);
        for &i in group {
            indicator[(i, i)] = c(1.0, 0.0);
        }
        let projection = dp.v_inv.matmul(&indicator.matmul(&dp.v)?)?;
        let pole =
            group.iter().fold(c(0.0, 0.0), |acc, &i| acc + dp.vals[i]) / c(group.len() as f64, 0.0);
        terms.push(PartialFractionTerm {
            pole,
            input: projection.matmul(r.b())?,
            output: r.c().matmul(&projection)?,
            multiplicity: group.len(),
        });
    }
    terms.sort_by(|l, r| crate::matrix::lex_cmp(l.pole, r.pole));
    Ok(PartialFractionForm {
        d: r.d().clone(),
        terms,
    })
}

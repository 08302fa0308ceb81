//! Positive-real sampling checks and Stieltjes realization theory.
//!
//! A square-valued function is *positive* when it is analytic on the open
//! right half plane with positive semidefinite Hermitian part there; it is
//! *Stieltjes* when additionally `F(z) / (iz)` has the same property. The
//! sampling checks here are necessary-condition samplers over a fixed grid,
//! not proofs: a `true` verdict is evidence, a `false` verdict is a
//! certificate of failure at a concrete point.
//!
//! On the algebraic side, rational Stieltjes functions analytic at the
//! origin and at infinity are exactly those admitting the canonical
//! realization
//!
//! ```text
//! A = -i alpha,   B = C*,   C,   D = i (C alpha^{-1} C* + delta)
//! ```
//!
//! with `alpha` Hermitian positive definite, `delta` Hermitian positive
//! semidefinite and `C` full rank; equivalently, realizations whose blocks
//! are all full rank with `-i diag(-I, I) [[A, B], [C, D]]` positive
//! semidefinite. Canonical realizations are closed under full-rank
//! congruence compressions and under the pencil-argument composition, and
//! both closures are verified here with explicit certificate matrices.

use num_complex::Complex64;

use crate::bulk;
use crate::error::{Error, Result};
use crate::matrix::{c, herm_psd_check, numeric_rank, ComplexMatrix, PsdStatus};
use crate::realization::Realization;

/// `F(z) + F(z)*` at a point (exactly Hermitian by construction).
pub fn hermitian_part_at(r: &Realization, z: Complex64) -> Result<ComplexMatrix> {
    let value = r.eval(z)?;
    value.matadd(&value.adjoint())
}

fn validate_samples(samples: &[Complex64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    if let Some(z) = samples.iter().find(|z| z.re <= 0.0) {
        return Err(Error::InvalidParams(format!(
            "sample {z} is not in the open right half plane"
        )));
    }
    Ok(())
}

/// Sampled positivity check: true when `F` has no pole among the samples and
/// `F(z) + F(z)*` is positive semidefinite at every one of them.
///
/// All samples must lie in the open right half plane. This is a
/// necessary-condition sampler, not a proof of positivity.
pub fn is_positive_sampled(r: &Realization, samples: &[Complex64], tol: f64) -> Result<bool> {
    validate_samples(samples)?;
    let verdicts = bulk::map_slice(samples, |z| match r.eval(*z) {
        Err(_) => false,
        Ok(value) => {
            let herm = value.matadd(&value.adjoint()).expect("square value");
            herm_psd_check(&herm, tol).is_psd()
        }
    });
    Ok(verdicts.into_iter().all(|ok| ok))
}

/// Sampled Stieltjes check: [`is_positive_sampled`] plus the same condition
/// for `F(z) / (iz)` at every sample.
pub fn is_stieltjes_sampled(r: &Realization, samples: &[Complex64], tol: f64) -> Result<bool> {
    validate_samples(samples)?;
    let verdicts = bulk::map_slice(samples, |z| match r.eval(*z) {
        Err(_) => false,
        Ok(value) => {
            let herm = value.matadd(&value.adjoint()).expect("square value");
            if !herm_psd_check(&herm, tol).is_psd() {
                return false;
            }
            let scaled = value.scale(c(1.0, 0.0) / (c(0.0, 1.0) * z));
            let herm2 = scaled.matadd(&scaled.adjoint()).expect("square value");
            herm_psd_check(&herm2, tol).is_psd()
        }
    });
    Ok(verdicts.into_iter().all(|ok| ok))
}

/// Parameters `(C, alpha, delta)` of a canonical Stieltjes realization.
#[derive(Debug, Clone)]
pub struct StieltjesParams {
    c: ComplexMatrix,
    alpha: ComplexMatrix,
    delta: ComplexMatrix,
}

impl StieltjesParams {
    /// Validate: `C` (p x n) full rank, `alpha` (n x n) Hermitian positive
    /// definite, `delta` (p x p) Hermitian positive semidefinite.
    pub fn new(c_map: ComplexMatrix, alpha: ComplexMatrix, delta: ComplexMatrix) -> Result<Self> {
        let (p, n) = (c_map.rows(), c_map.cols());
        if alpha.rows() != n || !alpha.is_square() {
            return Err(Error::InvalidParams(format!(
                "alpha must be {n}x{n}, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if delta.rows() != p || !delta.is_square() {
            return Err(Error::InvalidParams(format!(
                "delta must be {p}x{p}, got {}x{}",
                delta.rows(),
                delta.cols()
            )));
        }
        let tol = crate::matrix::DEFAULT_TOL;
        if numeric_rank(&c_map, tol) != p.min(n) {
            return Err(Error::InvalidParams("C must have full rank".into()));
        }
        if herm_psd_check(&alpha, tol) != PsdStatus::PositiveDefinite {
            return Err(Error::InvalidParams(
                "alpha must be Hermitian positive definite".into(),
            ));
        }
        if !herm_psd_check(&delta, tol).is_psd() {
            return Err(Error::InvalidParams(
                "delta must be Hermitian positive semidefinite".into(),
            ));
        }
        Ok(Self {
            c: c_map,
            alpha,
            delta,
        })
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn alpha(&self) -> &ComplexMatrix {
        &self.alpha
    }

    pub fn delta(&self) -> &ComplexMatrix {
        &self.delta
    }

    pub fn state_dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }
}

/// Canonical realization of the Stieltjes function
/// `F(z) = i (C alpha^{-1} C* + delta) + C (zI + i alpha)^{-1} C*`.
pub fn canonical_realization(params: &StieltjesParams) -> Realization {
    let minus_i = c(0.0, -1.0);
    let plus_i = c(0.0, 1.0);
    let a = params.alpha.scale(minus_i);
    let b = params.c.adjoint();
    let alpha_inv = params
        .alpha
        .inverse(f64::EPSILON)
        .expect("alpha is positive definite");
    let d = params
        .c
        .matmul(&alpha_inv.matmul(&params.c.adjoint()).expect("shapes"))
        .expect("shapes")
        .matadd(&params.delta)
        .expect("shapes")
        .scale(plus_i);
    Realization::new(a, b, params.c.clone(), d).expect("consistent blocks")
}

/// Certificate matrix `-i diag(-I_n, I_p) [[A, B], [C, D]]`; the realization
/// is canonical exactly when this is Hermitian positive semidefinite and all
/// four blocks have full rank.
pub fn canonical_certificate(r: &Realization) -> ComplexMatrix {
    let n = r.state_dim();
    let p = r.output_dim();
    let mut signs = ComplexMatrix::identity(n + p);
    for i in 0..n {
        signs[(i, i)] = c(-1.0, 0.0);
    }
    signs
        .matmul(&r.array())
        .expect("shapes")
        .scale(c(0.0, -1.0))
}

/// Canonical-form test: square-valued, all four blocks full rank, and the
/// certificate matrix Hermitian positive semidefinite at `tol`.
pub fn is_canonical(r: &Realization, tol: f64) -> bool {
    if !r.is_square_valued() {
        return false;
    }
    let n = r.state_dim();
    let p = r.output_dim();
    let full = |m: &ComplexMatrix, rows: usize, cols: usize| numeric_rank(m, tol) == rows.min(cols);
    if !full(r.a(), n, n) || !full(r.b(), n, p) || !full(r.c(), p, n) || !full(r.d(), p, p) {
        return false;
    }
    herm_psd_check(&canonical_certificate(r), tol).is_psd()
}

/// Compression of a canonical realization by full-rank congruence:
/// `(U A U*, U B V*, V C U*, V D V*)` for `U` (nu x n) and `V` (pi x p),
/// yielding a `pi x pi`-valued Stieltjes function of McMillan degree `nu`.
pub fn compress(
    r: &Realization,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    tol: f64,
) -> Result<Realization> {
    if !is_canonical(r, tol) {
        return Err(Error::NotCanonical(
            "compression input must be canonical".into(),
        ));
    }
    let n = r.state_dim();
    let p = r.output_dim();
    if u.cols() != n || u.rows() > n {
        return Err(Error::DimensionMismatch(format!(
            "U must be nu x {n} with nu <= {n}, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    if v.cols() != p || v.rows() > p {
        return Err(Error::DimensionMismatch(format!(
            "V must be pi x {p} with pi <= {p}, got {}x{}",
            v.rows(),
            v.cols()
        )));
    }
    if numeric_rank(u, tol) != u.rows() {
        return Err(Error::RankDeficient("U must have full row rank".into()));
    }
    if numeric_rank(v, tol) != v.rows() {
        return Err(Error::RankDeficient("V must have full row rank".into()));
    }
    Realization::new(
        u.matmul(&r.a().matmul(&u.adjoint())?)?,
        u.matmul(&r.b().matmul(&v.adjoint())?)?,
        v.matmul(&r.c().matmul(&u.adjoint())?)?,
        v.matmul(&r.d().matmul(&v.adjoint())?)?,
    )
}

/// Result of composing two canonical Stieltjes realizations, with the
/// positive-semidefiniteness certificates from the closure argument.
#[derive(Debug, Clone)]
pub struct StieltjesComposition {
    /// Canonical realization of `F_L(F_R)`.
    pub realization: Realization,
    /// `M = Delta_R^{-1} - (Delta_R + alpha_L)^{-1}`, positive definite for
    /// canonical inputs.
    pub m: ComplexMatrix,
    pub m_status: PsdStatus,
    /// `W = diag(eta, delta) + T M T*`, the certificate matrix of the
    /// composed realization.
    pub w: ComplexMatrix,
    pub w_status: PsdStatus,
    pub w_rank: usize,
}

/// Pencil-argument composition of canonical Stieltjes realizations.
///
/// `left` is `p x p`-valued of degree `n`, `right` must be `n x n`-valued of
/// degree `m <= n`, both canonical. The shifted feedthrough
/// `D_R - A_L = i (Delta_R + alpha_L)` is automatically nonsingular. Returns
/// the composed realization together with the `M` and `W` certificates.
pub fn compose(left: &Realization, right: &Realization, tol: f64) -> Result<StieltjesComposition> {
    if !is_canonical(left, tol) {
        return Err(Error::NotCanonical("left factor is not canonical".into()));
    }
    if !is_canonical(right, tol) {
        return Err(Error::NotCanonical("right factor is not canonical".into()));
    }
    let n = left.state_dim();
    let m = right.state_dim();
    if right.output_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "right factor must be {n}x{n}-valued, got {}x{}",
            right.output_dim(),
            right.input_dim()
        )));
    }
    if m > n {
        return Err(Error::DimensionMismatch(format!(
            "composition closure requires right degree <= left degree ({m} > {n})"
        )));
    }
    let realization = crate::compose::pencil(left, right, tol)?;

    // certificates, in the Hermitian parameters of the two canonical arrays
    let plus_i = c(0.0, 1.0);
    let minus_i = c(0.0, -1.0);
    let alpha_l = left.a().scale(plus_i);
    let gamma_l = left.c().scale(minus_i);
    let delta_r = right.d().scale(minus_i);
    let gamma_r = right.c().scale(minus_i);
    let alpha_r = right.a().scale(plus_i);
    let delta_l = left.d().scale(minus_i);

    let delta_r_inv = delta_r.inverse(tol).map_err(|_| {
        Error::NotCanonical(
            "right feedthrough is singular; Delta_R must be positive definite".into(),
        )
    })?;
    let alpha_l_inv = alpha_l.inverse(tol).map_err(|_| {
        Error::NotCanonical(
            "left state block is singular; alpha_L must be positive definite".into(),
        )
    })?;
    let sum_inv = delta_r.matadd(&alpha_l)?.inverse(tol)?;
    let m_mat = delta_r_inv.matsub(&sum_inv)?;

    // eta and delta are the Schur complements inside the two certificates
    let eta = alpha_r.matsub(&gamma_r.adjoint().matmul(&delta_r_inv.matmul(&gamma_r)?)?)?;
    let delta_schur = delta_l.matsub(&gamma_l.matmul(&alpha_l_inv.matmul(&gamma_l.adjoint())?)?)?;

    let t = ComplexMatrix::vstack(&[
        &gamma_r.adjoint(),
        &gamma_l
            .matmul(&alpha_l_inv.matmul(&delta_r)?)?
            .scale(c(-1.0, 0.0)),
    ])?;
    let w = ComplexMatrix::block_diag(&[&eta, &delta_schur])
        .matadd(&t.matmul(&m_mat.matmul(&t.adjoint())?)?)?;

    let m_status = herm_psd_check(&m_mat, tol);
    let w_status = herm_psd_check(&w, tol);
    let w_rank = numeric_rank(&w, tol);
    Ok(StieltjesComposition {
        realization,
        m: m_mat,
        m_status,
        w,
        w_status,
        w_rank,
    })
}

/// Truth values of the three block positive-semidefiniteness statements for
/// `[[X, Z*], [Z, Y]]`, and any violations of the implications between them.
#[derive(Debug, Clone)]
pub struct SchurReport {
    /// (i): the joint block matrix is positive semidefinite.
    pub joint_psd: bool,
    /// (ii): `Y` positive definite and `X - Z* Y^{-1} Z` positive semidefinite.
    pub via_y: bool,
    /// (iii): `X` positive definite and `Y - Z X^{-1} Z*` positive semidefinite.
    pub via_x: bool,
    /// Whether `Z` is full rank; the converse implications presuppose it.
    pub z_full_rank: bool,
    /// `n >= p` and `Z` full rank, the regime in which (i) implies (ii).
    pub converse_via_y_applies: bool,
    /// `p >= n` and `Z` full rank, the regime in which (i) implies (iii).
    pub converse_via_x_applies: bool,
    /// Human-readable descriptions of any violated implication.
    pub violations: Vec<String>,
}

/// Evaluate the Schur-complement equivalences for `X` (n x n Hermitian),
/// `Z` (p x n) and `Y` (p x p Hermitian).
///
/// The forward implications (ii) => (i) and (iii) => (i) hold for any `Z`;
/// the converses additionally need `Z` full rank, so they are only checked
/// in that regime (flagged in the report).
pub fn schur_psd_report(
    x: &ComplexMatrix,
    z: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: f64,
) -> Result<SchurReport> {
    let (p, n) = (z.rows(), z.cols());
    if x.rows() != n || !x.is_square() || y.rows() != p || !y.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected X {n}x{n} and Y {p}x{p} for Z {p}x{n}, got X {}x{} and Y {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let z_full_rank = numeric_rank(z, tol) == p.min(n);

    let joint = ComplexMatrix::block2x2(x, &z.adjoint(), z, y)?;
    let joint_psd = herm_psd_check(&joint, tol).is_psd();
    // the sub-statements are classified in the scale of the joint matrix:
    // a Schur complement can be exactly zero up to rounding in that scale
    let scale = joint.norm_fro();

    let via_y = crate::matrix::herm_psd_check_scaled(y, tol, scale) == PsdStatus::PositiveDefinite
        && {
            let y_inv = y.inverse(tol)?;
            let schur = x.matsub(&z.adjoint().matmul(&y_inv.matmul(z)?)?)?;
            crate::matrix::herm_psd_check_scaled(&schur, tol, scale).is_psd()
        };
    let via_x = crate::matrix::herm_psd_check_scaled(x, tol, scale) == PsdStatus::PositiveDefinite
        && {
            let x_inv = x.inverse(tol)?;
            let schur = y.matsub(&z.matmul(&x_inv.matmul(&z.adjoint())?)?)?;
            crate::matrix::herm_psd_check_scaled(&schur, tol, scale).is_psd()
        };

    let mut violations = Vec::new();
    if via_y && !joint_psd {
        violations.push("(ii) holds but the joint block matrix is not PSD".to_string());
    }
    if via_x && !joint_psd {
        violations.push("(iii) holds but the joint block matrix is not PSD".to_string());
    }
    let converse_via_y_applies = z_full_rank && n >= p;
    let converse_via_x_applies = z_full_rank && p >= n;
    if joint_psd && converse_via_y_applies && !via_y {
        violations.push("joint block PSD with full-rank Z and n >= p, but (ii) fails".to_string());
    }
    if joint_psd && converse_via_x_applies && !via_x {
        violations.push("joint block PSD with full-rank Z and p >= n, but (iii) fails".to_string());
    }
    Ok(SchurReport {
        joint_psd,
        via_y,
        via_x,
        z_full_rank,
        converse_via_y_applies,
        converse_via_x_applies,
        violations,
    })
}

/// Seeded random parameters for a `p x p`-valued canonical Stieltjes
/// realization of degree `n`, with `delta` positive definite (which keeps
/// the feedthrough full rank even when `p > n`).
pub fn random_params(p: usize, n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> StieltjesParams {
    let c_map = crate::random::matrix(p, n, rng);
    let alpha = crate::random::hpd(n, rng);
    let delta = crate::random::hpd(p, rng);
    StieltjesParams::new(c_map, alpha, delta).expect("construction satisfies the invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::sampling::rhp_grid;

    fn reciprocal_shifted() -> Realization {
        // f(z) = 1/(z+1)
        Realization::first_order(c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
    }

    #[test]
    fn hermitian_part_of_constant_identity() {
        let r = Realization::constant(ComplexMatrix::identity(2));
        let h = hermitian_part_at(&r, c(3.0, 1.0)).unwrap();
        assert!(h.max_abs_diff(&ComplexMatrix::identity(2).scale(c(2.0, 0.0))) < 1e-15);
    }

    #[test]
    fn hermitian_part_value() {
        let r = reciprocal_shifted();
        let h = hermitian_part_at(&r, c(1.0, 0.0)).unwrap();
        assert!((h[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        // exactly Hermitian by construction, not merely up to rounding
        let mut rng = crate::random::rng(3);
        let wide = crate::random::realization(3, 2, 2, &mut rng);
        let h2 = hermitian_part_at(&wide, c(0.7, -1.3)).unwrap();
        assert_eq!(h2.matsub(&h2.adjoint()).unwrap().norm_max(), 0.0);
    }

    #[test]
    fn classical_rc_function_is_positive() {
        let r = reciprocal_shifted();
        let grid = rhp_grid(50, 4242);
        assert!(is_positive_sampled(&r, &grid, 1e-9).unwrap());
    }

    #[test]
    fn negative_constant_is_not_positive() {
        let r = Realization::constant(ComplexMatrix::scalar(c(-1.0, 0.0)));
        let grid = rhp_grid(50, 4242);
        assert!(!is_positive_sampled(&r, &grid, 1e-9).unwrap());
    }

    #[test]
    fn right_half_plane_pole_fails_positivity() {
        // f(z) = 1/(z-1): F(0.5) = -2
        let r = Realization::first_order(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let samples = vec![c(0.5, 0.0), c(2.0, 0.0)];
        assert!(!is_positive_sampled(&r, &samples, 1e-9).unwrap());
    }

    #[test]
    fn empty_sample_set_is_rejected() {
        let r = reciprocal_shifted();
        assert!(matches!(
            is_positive_sampled(&r, &[], 1e-9),
            Err(Error::EmptySampleSet)
        ));
    }

    #[test]
    fn degree_one_stieltjes_function() {
        // i (delta + beta/alpha) + beta / (z + i alpha), alpha = beta = 1, delta = 0
        let params = StieltjesParams::new(
            ComplexMatrix::scalar(c(1.0, 0.0)),
            ComplexMatrix::scalar(c(1.0, 0.0)),
            ComplexMatrix::scalar(c(0.0, 0.0)),
        )
        .unwrap();
        let r = canonical_realization(&params);
        let grid = rhp_grid(50, 4242);
        assert!(is_stieltjes_sampled(&r, &grid, 1e-9).unwrap());
    }

    #[test]
    fn positive_but_not_stieltjes() {
        // 1/(z+1) is positive but fails the Stieltjes branch; at z = 1 + i
        // the Hermitian part of F(z)/(iz) is negative.
        let r = reciprocal_shifted();
        let z = c(1.0, 1.0);
        let value = r.eval(z).unwrap().scale(c(1.0, 0.0) / (c(0.0, 1.0) * z));
        let herm = value.matadd(&value.adjoint()).unwrap();
        assert!(herm[(0, 0)].re < 0.0);
        let grid = rhp_grid(50, 4242);
        assert!(!is_stieltjes_sampled(&r, &grid, 1e-9).unwrap());
    }

    #[test]
    fn inverse_of_stieltjes_is_not_stieltjes() {
        let mut rng = random::rng(77);
        let params = random_params(2, 3, &mut rng);
        let r = canonical_realization(&params);
        let inv = r.inverse(1e-9).unwrap();
        let grid = rhp_grid(50, 4242);
        assert!(is_stieltjes_sampled(&r, &grid, 1e-9).unwrap());
        assert!(!is_stieltjes_sampled(&inv, &grid, 1e-9).unwrap());
        // limit signs: -i D is PSD for the canonical form, +i D_inv for its inverse
        let limit = r.d().scale(c(0.0, -1.0));
        assert!(herm_psd_check(&limit, 1e-9).is_psd());
        let limit_inv = inv.d().scale(c(0.0, 1.0));
        assert!(herm_psd_check(&limit_inv, 1e-9).is_psd());
    }

    #[test]
    fn canonical_realization_passes_certificate() {
        let mut rng = random::rng(79);
        for _ in 0..10 {
            let params = random_params(2, 4, &mut rng);
            let r = canonical_realization(&params);
            assert!(is_canonical(&r, 1e-9));
            // zero defect in the sign-flipped Lyapunov identity
            let n = r.state_dim();
            let p = r.output_dim();
            let mut signs = ComplexMatrix::identity(n + p);
            for i in 0..n {
                signs[(i, i)] = c(-1.0, 0.0);
            }
            let arr = r.array();
            let defect = signs
                .matmul(&arr)
                .unwrap()
                .matadd(&arr.adjoint().matmul(&signs).unwrap())
                .unwrap();
            assert!(defect.norm_max() < 1e-12);
        }
    }

    #[test]
    fn degree_one_closed_form() {
        let (alpha, beta, delta) = (0.8f64, 1.7f64, 0.3f64);
        let params = StieltjesParams::new(
            ComplexMatrix::scalar(c(beta.sqrt(), 0.0)),
            ComplexMatrix::scalar(c(alpha, 0.0)),
            ComplexMatrix::scalar(c(delta, 0.0)),
        )
        .unwrap();
        let r = canonical_realization(&params);
        for z in rhp_grid(10, 99) {
            let direct =
                c(0.0, 1.0) * c(delta + beta / alpha, 0.0) + c(beta, 0.0) / (z + c(0.0, alpha));
            let got = r.eval(z).unwrap()[(0, 0)];
            assert!((got - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn plain_pole_is_not_canonical() {
        let r = reciprocal_shifted();
        assert!(!is_canonical(&r, 1e-9));
    }

    #[test]
    fn unitary_similarity_preserves_canonical_verdict() {
        let mut rng = random::rng(83);
        let params = random_params(2, 3, &mut rng);
        let r = canonical_realization(&params);
        let u = random::unitary(3, &mut rng);
        let t = r.similarity(&u, 1e-12).unwrap();
        assert!(is_canonical(&t, 1e-8));
    }

    #[test]
    fn compress_identity_is_noop() {
        let mut rng = random::rng(89);
        let params = random_params(2, 3, &mut rng);
        let r = canonical_realization(&params);
        let u = ComplexMatrix::identity(3);
        let v = ComplexMatrix::identity(2);
        let out = compress(&r, &u, &v, 1e-9).unwrap();
        assert!(out.array().max_abs_diff(&r.array()) < 1e-12);
    }

    #[test]
    fn slices_of_canonical_system_stay_canonical() {
        let mut rng = random::rng(97);
        let params = random_params(2, 3, &mut rng);
        let r = canonical_realization(&params);
        let u = random::matrix(1, 3, &mut rng);
        let v = random::matrix(1, 2, &mut rng);
        let out = compress(&r, &u, &v, 1e-9).unwrap();
        assert_eq!(out.state_dim(), 1);
        assert_eq!(out.output_dim(), 1);
        assert!(is_canonical(&out, 1e-9));
    }

    #[test]
    fn compress_rejects_non_canonical_input() {
        let r = reciprocal_shifted();
        let u = ComplexMatrix::identity(1);
        let v = ComplexMatrix::identity(1);
        assert!(matches!(
            compress(&r, &u, &v, 1e-9),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn degree_one_composition_closure() {
        let mut rng = random::rng(101);
        let left = canonical_realization(&random_params(1, 1, &mut rng));
        let right = canonical_realization(&random_params(1, 1, &mut rng));
        let out = compose(&left, &right, 1e-9).unwrap();
        assert_eq!(out.realization.state_dim(), 1);
        assert!(is_canonical(&out.realization, 1e-9));
        assert!(out.m_status.is_psd());
        assert!(out.w_status.is_psd());
        // pointwise agreement with direct evaluation
        let pts = rhp_grid(20, 103);
        for z in pts {
            let fr = right.eval(z).unwrap();
            let gap = fr.matsub(left.a()).unwrap();
            let direct = left
                .d()
                .matadd(
                    &left
                        .c()
                        .matmul(&gap.inverse(1e-12).unwrap().matmul(left.b()).unwrap())
                        .unwrap(),
                )
                .unwrap();
            let got = out.realization.eval(z).unwrap();
            assert!(got.max_abs_diff(&direct) < 1e-9);
        }
    }

    #[test]
    fn composition_certificate_matches_composed_array() {
        let mut rng = random::rng(107);
        let left = canonical_realization(&random_params(2, 3, &mut rng));
        let right = canonical_realization(&random_params(3, 2, &mut rng));
        let out = compose(&left, &right, 1e-9).unwrap();
        assert!(is_canonical(&out.realization, 1e-8));
        assert_eq!(out.m_status, PsdStatus::PositiveDefinite);
        assert!(out.w_status.is_psd());
        let cert = canonical_certificate(&out.realization);
        assert!(cert.max_abs_diff(&out.w) < 1e-10);
    }

    #[test]
    fn schur_trivial_cases() {
        let x = ComplexMatrix::identity(2);
        let y = ComplexMatrix::identity(2);
        let z = ComplexMatrix::zeros(2, 2);
        // zero coupling: all three statements hold; the converse regime is
        // flagged off because Z is rank-deficient
        let report = schur_psd_report(&x, &z, &y, 1e-9).unwrap();
        assert!(report.joint_psd && report.via_y && report.via_x);
        assert!(!report.z_full_rank);
        assert!(!report.converse_via_y_applies && !report.converse_via_x_applies);
        assert!(report.violations.is_empty());

        let z = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        let report = schur_psd_report(&x, &z, &y, 1e-9).unwrap();
        assert!(report.joint_psd && report.via_y && report.via_x);
        assert!(report.z_full_rank);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn schur_gram_constructed_blocks() {
        let mut rng = random::rng(109);
        for _ in 0..10 {
            let g = random::matrix(5, 7, &mut rng);
            let gram = &g * &g.adjoint();
            let n = 3;
            let x = gram.submatrix(0, n, 0, n);
            let z = gram.submatrix(n, 5, 0, n);
            let y = gram.submatrix(n, 5, n, 5);
            let report = schur_psd_report(&x, &z, &y, 1e-9).unwrap();
            assert!(report.joint_psd);
            assert!(report.violations.is_empty(), "{:?}", report.violations);
        }
    }

    #[test]
    fn schur_counterexample_blocks() {
        // X = 0, Z = 1, Y = 1: joint determinant is -1
        let x = ComplexMatrix::scalar(c(0.0, 0.0));
        let z = ComplexMatrix::scalar(c(1.0, 0.0));
        let y = ComplexMatrix::scalar(c(1.0, 0.0));
        let report = schur_psd_report(&x, &z, &y, 1e-9).unwrap();
        assert!(!report.joint_psd);
        assert!(!report.via_y);
        assert!(report.violations.is_empty());
    }
}

//! Composition `F_L(F_R)` of matrix-valued rational functions, with explicit
//! realization formulas.
//!
//! Two substitution schemes are implemented.
//!
//! **Scheme 1** replaces the scalar variable of `F_L` by `F_R(z)`:
//!
//! * [`scalar_inner`] — `F_R` is scalar-valued; the composed state dimension
//!   is the product of the two state dimensions and the array is assembled
//!   from Kronecker blocks around the shifted pencil `d_R I - A_L`.
//! * [`diagonalizable`] — `A_L` is diagonalizable; the left function is
//!   expanded into simple-pole terms and each term contributes one diagonal
//!   block `A_R - B_R Delta_j^{-1} C_R` with `Delta_j = D_R - a_j I`. Four
//!   published variants of the input/output blocks are selected by
//!   [`DiagCase`].
//! * [`scalar_outer`] — `F_L` is scalar-valued with arbitrary (possibly
//!   non-diagonalizable) state matrix; built in stages from the Kronecker
//!   lift, a constant shift and one realization inversion.
//!
//! **Scheme 2** ([`pencil`]) substitutes the matrix value `F_R(z)` for the
//! pencil argument: `F_L(F_R) = D_L + C_L (F_R(z) - A_L)^{-1} B_L`, which
//! keeps the state dimension of the right factor.

use crate::error::{Error, Result};
use crate::matrix::{c, ComplexMatrix};
use crate::realization::Realization;
use crate::spectral::partial_fractions;

/// Variant of the diagonalizable composition, fixing how the simple-pole
/// residue blocks of the left function enter the composed input/output maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagCase {
    /// Right factor sized like the left state space (`q = n`); the blocks
    /// `B_j`, `C_j` are used directly.
    StateMatched,
    /// Both functions `p x p`-valued (`q = p`); residues `C_j B_j` folded
    /// into the input map.
    SquareInput,
    /// Both functions `p x p`-valued (`q = p`); residues folded into the
    /// output map.
    SquareOutput,
    /// Scalar-valued left function (`p = 1`), any `q`; scalar residues
    /// `eta_j = C_j B_j`.
    ScalarResidues,
}

impl DiagCase {
    pub const ALL: [DiagCase; 4] = [
        DiagCase::StateMatched,
        DiagCase::SquareInput,
        DiagCase::SquareOutput,
        DiagCase::ScalarResidues,
    ];
}

impl std::fmt::Display for DiagCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DiagCase::StateMatched => "state-matched",
            DiagCase::SquareInput => "square-input",
            DiagCase::SquareOutput => "square-output",
            DiagCase::ScalarResidues => "scalar-residues",
        };
        f.write_str(s)
    }
}

/// Composition with a scalar-valued right factor.
///
/// `left` is `p x m`-valued with state dimension `n`; `right` must be
/// `1 x 1`-valued with state dimension `k`. The result realizes
/// `D_L + C_L (f_R(z) I_n - A_L)^{-1} B_L` with state dimension `n * k`.
///
/// Fails when `right` is not scalar or when the shifted pencil
/// `d_R I_n - A_L` is singular at `tol`.
pub fn scalar_inner(left: &Realization, right: &Realization, tol: f64) -> Result<Realization> {
    if !right.is_scalar_valued() {
        return Err(Error::NotScalar {
            p: right.output_dim(),
            m: right.input_dim(),
        });
    }
    let n = left.state_dim();
    let d_r = right.d()[(0, 0)];
    let shifted = ComplexMatrix::identity(n).scale(d_r).matsub(left.a())?;
    let shifted_inv = shifted.inverse(tol).map_err(|_| {
        Error::Singular("shifted pencil d_R I - A_L is singular at tolerance".into())
    })?;

    let id_n = ComplexMatrix::identity(n);
    let a_hat = id_n.kron(right.a());
    let b_hat = id_n.kron(right.b());
    let c_hat = id_n.kron(right.c());

    let a = a_hat.matsub(&b_hat.matmul(&shifted_inv.matmul(&c_hat)?)?)?;
    let b = b_hat
        .matmul(&shifted_inv.matmul(left.b())?)?
        .scale(c(-1.0, 0.0));
    let cc = left.c().matmul(&shifted_inv.matmul(&c_hat)?)?;
    let d = left
        .d()
        .matadd(&left.c().matmul(&shifted_inv.matmul(left.b())?)?)?;
    Realization::new(a, b, cc, d)
}

/// Composition for diagonalizable `A_L`, in the variant chosen by `case`.
///
/// The left function is expanded as `D_L + sum C_j (z - a_j)^{-1} B_j` (one
/// rank-one term per eigenvalue, multiplicity included). Every shifted
/// feedthrough `Delta_j = D_R - a_j I_q` must be nonsingular at `tol`. The
/// composed state matrix is block-diagonal with blocks
/// `A_R - B_R Delta_j^{-1} C_R` and the feedthrough is
/// `D_L + sum gamma_j Delta_j^{-1} beta_j`.
pub fn diagonalizable(
    left: &Realization,
    right: &Realization,
    case: DiagCase,
    tol: f64,
) -> Result<Realization> {
    if !left.is_square_valued() {
        return Err(Error::DimensionMismatch(format!(
            "left function must be square-valued, got {}x{}",
            left.output_dim(),
            left.input_dim()
        )));
    }
    if !right.is_square_valued() {
        return Err(Error::DimensionMismatch(format!(
            "right function must be square-valued, got {}x{}",
            right.output_dim(),
            right.input_dim()
        )));
    }
    let n = left.state_dim();
    let p = left.output_dim();
    let q = right.output_dim();
    match case {
        DiagCase::StateMatched if q != n => {
            return Err(Error::DimensionMismatch(format!(
                "case {case}: right factor must be {n}x{n}-valued (left state dimension), got {q}x{q}"
            )));
        }
        DiagCase::SquareInput | DiagCase::SquareOutput if q != p => {
            return Err(Error::DimensionMismatch(format!(
                "case {case}: both functions must be {p}x{p}-valued, got {q}x{q}"
            )));
        }
        DiagCase::ScalarResidues if p != 1 => {
            return Err(Error::DimensionMismatch(format!(
                "case {case}: left function must be scalar-valued, got {p}x{p}"
            )));
        }
        _ => {}
    }

    let pf = partial_fractions(left, false, tol)?;
    let id_q = ComplexMatrix::identity(q);

    let mut a_blocks: Vec<ComplexMatrix> = Vec::with_capacity(n);
    let mut b_blocks: Vec<ComplexMatrix> = Vec::with_capacity(n);
    let mut c_blocks: Vec<ComplexMatrix> = Vec::with_capacity(n);
    let mut d_sum = match case {
        DiagCase::ScalarResidues => id_q.scale(left.d()[(0, 0)]),
        _ => left.d().clone(),
    };

    for (j, term) in pf.terms.iter().enumerate() {
        let delta = right.d().matsub(&id_q.scale(term.pole))?;
        let delta_inv = delta.inverse(tol).map_err(|_| Error::SingularDelta {
            index: j,
            eigenvalue: term.pole,
        })?;
        let (beta, gamma) = match case {
            DiagCase::StateMatched => (term.input.clone(), term.output.clone()),
            DiagCase::SquareInput => (term.output.matmul(&term.input)?, id_q.clone()),
            DiagCase::SquareOutput => (id_q.clone(), term.output.matmul(&term.input)?),
            DiagCase::ScalarResidues => {
                let eta = term.output.matmul(&term.input)?[(0, 0)];
                (id_q.clone(), id_q.scale(eta))
            }
        };
        a_blocks.push(
            right
                .a()
                .matsub(&right.b().matmul(&delta_inv.matmul(right.c())?)?)?,
        );
        b_blocks.push(
            right
                .b()
                .matmul(&delta_inv.matmul(&beta)?)?
                .scale(c(-1.0, 0.0)),
        );
        c_blocks.push(gamma.matmul(&delta_inv.matmul(right.c())?)?);
        d_sum = d_sum.matadd(&gamma.matmul(&delta_inv.matmul(&beta)?)?)?;
    }

    let a_refs: Vec<&ComplexMatrix> = a_blocks.iter().collect();
    let b_refs: Vec<&ComplexMatrix> = b_blocks.iter().collect();
    let c_refs: Vec<&ComplexMatrix> = c_blocks.iter().collect();
    Realization::new(
        ComplexMatrix::block_diag(&a_refs),
        ComplexMatrix::vstack(&b_refs)?,
        ComplexMatrix::hstack(&c_refs)?,
        d_sum,
    )
}

/// Variable-substitution composition with automatic construction choice.
///
/// Routes to [`scalar_inner`] when the right factor is scalar-valued, to the
/// eigenvalue expansion when the left state matrix is diagonalizable at
/// `tol`, and to the staged [`scalar_outer`] construction when the left
/// factor is scalar-valued with a defective state matrix. A matrix-valued
/// left function with a non-diagonalizable state matrix has no published
/// construction and is rejected.
pub fn auto(left: &Realization, right: &Realization, tol: f64) -> Result<Realization> {
    if right.is_scalar_valued() {
        return scalar_inner(left, right, tol);
    }
    match diagonalizable_auto(left, right, tol) {
        Ok((_, composed)) => Ok(composed),
        Err(Error::NotDiagonalizable) if left.is_scalar_valued() => scalar_outer(left, right, tol),
        Err(Error::NotDiagonalizable) => Err(Error::UnsupportedCase(
            "matrix-valued left function with a non-diagonalizable state matrix".into(),
        )),
        Err(other) => Err(other),
    }
}

/// First applicable variant, tried in the order state-matched, square-input,
/// scalar-residues.
pub fn diagonalizable_auto(
    left: &Realization,
    right: &Realization,
    tol: f64,
) -> Result<(DiagCase, Realization)> {
    let n = left.state_dim();
    let p = left.output_dim();
    let q = right.output_dim();
    let case = if q == n {
        DiagCase::StateMatched
    } else if q == p {
        DiagCase::SquareInput
    } else if p == 1 {
        DiagCase::ScalarResidues
    } else {
        return Err(Error::UnsupportedCase(format!(
            "no diagonalizable-composition variant applies: left {p}x{p} with state dimension {n}, right {q}x{q}"
        )));
    };
    Ok((case, diagonalizable(left, right, case, tol)?))
}

/// Composition with a scalar-valued left factor and arbitrary `A_L`.
///
/// Realizes `f_L(F_R) = d_L I_q + (C_L (x) I_q) (I_n (x) F_R(z) - A_L (x) I_q)^{-1} (B_L (x) I_q)`
/// in stages: Kronecker lift of the right factor, constant shift by
/// `-A_L (x) I_q`, one realization inversion, then constant factors folded
/// into the maps. State dimension `n * m`. Works for non-diagonalizable
/// `A_L`, where the eigenvalue expansion is unavailable.
pub fn scalar_outer(left: &Realization, right: &Realization, tol: f64) -> Result<Realization> {
    if !left.is_scalar_valued() {
        return Err(Error::NotScalar {
            p: left.output_dim(),
            m: left.input_dim(),
        });
    }
    if !right.is_square_valued() {
        return Err(Error::DimensionMismatch(format!(
            "right function must be square-valued, got {}x{}",
            right.output_dim(),
            right.input_dim()
        )));
    }
    let n = left.state_dim();
    let q = right.output_dim();
    let d_l = left.d()[(0, 0)];
    if n == 0 {
        return Ok(Realization::constant(ComplexMatrix::identity(q).scale(d_l)));
    }
    let id_q = ComplexMatrix::identity(q);
    let lifted = right.kron_lift(n);
    let shifted = lifted.shift(&left.a().kron(&id_q).scale(c(-1.0, 0.0)))?;
    let inverted = shifted.inverse(tol).map_err(|_| {
        Error::Singular("shifted feedthrough I (x) D_R - A_L (x) I is singular at tolerance".into())
    })?;
    let folded = inverted.sandwich(&left.c().kron(&id_q), &left.b().kron(&id_q))?;
    folded.shift(&id_q.scale(d_l))
}

/// Pencil-argument composition `F_L(F_R) = D_L + C_L (F_R(z) - A_L)^{-1} B_L`.
///
/// Requires the right factor to be `n x n`-valued where `n` is the state
/// dimension of the left factor, and `D_R - A_L` nonsingular at `tol`. The
/// composed state dimension equals the state dimension of the right factor.
pub fn pencil(left: &Realization, right: &Realization, tol: f64) -> Result<Realization> {
    let n = left.state_dim();
    if right.output_dim() != n || right.input_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "right factor must be {n}x{n}-valued (left state dimension), got {}x{}",
            right.output_dim(),
            right.input_dim()
        )));
    }
    let gap = right.d().matsub(left.a())?;
    let gap_inv = gap.inverse(tol).map_err(|_| {
        Error::Singular("pencil-argument feedthrough D_R - A_L is singular at tolerance".into())
    })?;
    let a = right
        .a()
        .matsub(&right.b().matmul(&gap_inv.matmul(right.c())?)?)?;
    let b = right.b().matmul(&gap_inv.matmul(left.b())?)?;
    let cc = left
        .c()
        .matmul(&gap_inv.matmul(right.c())?)?
        .scale(c(-1.0, 0.0));
    let d = left
        .d()
        .matadd(&left.c().matmul(&gap_inv.matmul(left.b())?)?)?;
    Realization::new(a, b, cc, d)
}

/// Residual of the push-through identity
/// `(I + XY)^{-1} = I - X (I + YX)^{-1} Y` in the Frobenius norm.
///
/// Fails when `-1` is in the spectrum of `XY` at tolerance (either shifted
/// identity singular).
pub fn push_through_residual(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<f64> {
    if x.cols() != y.rows() || y.cols() != x.rows() {
        return Err(Error::DimensionMismatch(format!(
            "push-through needs X n x m and Y m x n, got {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let n = x.rows();
    let m = x.cols();
    let lhs = ComplexMatrix::identity(n)
        .matadd(&x.matmul(y)?)?
        .inverse(tol)
        .map_err(|_| Error::Singular("I + XY is singular at tolerance".into()))?;
    let inner = ComplexMatrix::identity(m)
        .matadd(&y.matmul(x)?)?
        .inverse(tol)
        .map_err(|_| Error::Singular("I + YX is singular at tolerance".into()))?;
    let rhs = ComplexMatrix::identity(n).matsub(&x.matmul(&inner.matmul(y)?)?)?;
    Ok(lhs.matsub(&rhs)?.norm_fro())
}

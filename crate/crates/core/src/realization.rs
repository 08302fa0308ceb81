//! State-space realizations of matrix-valued rational functions analytic at
//! infinity.
//!
//! A [`Realization`] is a quadruple `(A, B, C, D)` representing
//!
//! ```text
//! F(z) = D + C (zI - A)^{-1} B
//! ```
//!
//! with `A` of order `n` (the state dimension), `B` an `n x m` input map,
//! `C` a `p x n` output map and `D = F(infinity)` the `p x m` feedthrough.
//! The empty state `n = 0` is legal and denotes the constant function
//! `F(z) = D`, so resistors and other feedthrough-only blocks need no
//! special cases.
//!
//! This module carries the basic calculus on realizations: pointwise
//! evaluation, change of coordinates, inversion, products, affine
//! combinations and Kronecker lifting. Every constructor here is pinned down
//! by its pointwise semantics; the integration tests check each one against
//! evaluation at sample points away from the poles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c, eigenvalues, ComplexMatrix, DEFAULT_TOL};

/// Realization `(A, B, C, D)` of `F(z) = D + C (zI - A)^{-1} B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
    d: ComplexMatrix,
}

impl Realization {
    /// Build a realization, validating block dimensions and finiteness.
    pub fn new(
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
    ) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        if b.rows() != n || c.cols() != n || d.rows() != c.rows() || d.cols() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "realization blocks disagree: A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        for (label, m) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            m.check_finite()
                .map_err(|_| Error::NonFinite(format!("block {label}")))?;
        }
        Ok(Self { a, b, c, d })
    }

    /// Constant function `F(z) = D` with empty state.
    pub fn constant(d: ComplexMatrix) -> Self {
        let (p, m) = (d.rows(), d.cols());
        Self {
            a: ComplexMatrix::zeros(0, 0),
            b: ComplexMatrix::zeros(0, m),
            c: ComplexMatrix::zeros(p, 0),
            d,
        }
    }

    /// Degree-one scalar function `d + gamma / (z - pole)`.
    pub fn first_order(pole: Complex64, gamma: Complex64, d: Complex64) -> Self {
        Self {
            a: ComplexMatrix::scalar(pole),
            b: ComplexMatrix::scalar(c(1.0, 0.0)),
            c: ComplexMatrix::scalar(gamma),
            d: ComplexMatrix::scalar(d),
        }
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix {
        &self.d
    }

    /// State dimension `n`.
    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    /// Output dimension `p`.
    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }

    /// Input dimension `m`.
    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    /// True when the function is 1x1-valued.
    pub fn is_scalar_valued(&self) -> bool {
        self.output_dim() == 1 && self.input_dim() == 1
    }

    /// True when the function is square (`p = m`).
    pub fn is_square_valued(&self) -> bool {
        self.output_dim() == self.input_dim()
    }

    /// The realization array `[[A, B], [C, D]]` of shape `(n+p) x (n+m)`.
    pub fn array(&self) -> ComplexMatrix {
        ComplexMatrix::block2x2(&self.a, &self.b, &self.c, &self.d).expect("consistent blocks")
    }

    /// Split a realization array back into blocks, given the state dimension.
    pub fn from_array(array: &ComplexMatrix, n: usize) -> Result<Self> {
        if array.rows() < n || array.cols() < n {
            return Err(Error::DimensionMismatch(format!(
                "array {}x{} too small for state dimension {n}",
                array.rows(),
                array.cols()
            )));
        }
        Self::new(
            array.submatrix(0, n, 0, n),
            array.submatrix(0, n, n, array.cols()),
            array.submatrix(n, array.rows(), 0, n),
            array.submatrix(n, array.rows(), n, array.cols()),
        )
    }

    /// Eigenvalues of the state matrix (the pole candidates).
    pub fn state_eigenvalues(&self) -> Result<Vec<Complex64>> {
        eigenvalues(&self.a)
    }

    /// Evaluate `F(z) = D + C (zI - A)^{-1} B` at a point.
    ///
    /// Fails with [`Error::Pole`] when `zI - A` is singular at the default
    /// tolerance.
    pub fn eval(&self, z: Complex64) -> Result<ComplexMatrix> {
        self.eval_with_tol(z, DEFAULT_TOL)
    }

    pub fn eval_with_tol(&self, z: Complex64, tol: f64) -> Result<ComplexMatrix> {
        let n = self.state_dim();
        if n == 0 {
            return Ok(self.d.clone());
        }
        let pencil = ComplexMatrix::identity(n).scale(z).matsub(&self.a)?;
        let x = pencil.solve(&self.b, tol).map_err(|e| match e {
            Error::Singular(_) => Error::Pole { z },
            other => other,
        })?;
        self.d.matadd(&self.c.matmul(&x)?)
    }

    /// Change of coordinates by a nonsingular `S`: `(S^{-1} A S, S^{-1} B, C S, D)`.
    /// The transfer function is unchanged; the spectrum of `A` is preserved.
    pub fn similarity(&self, s: &ComplexMatrix, tol: f64) -> Result<Self> {
        let n = self.state_dim();
        if !s.is_square() || s.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "similarity transform must be {n}x{n}, got {}x{}",
                s.rows(),
                s.cols()
            )));
        }
        let s_inv = s.inverse(tol)?;
        Self::new(
            s_inv.matmul(&self.a.matmul(s)?)?,
            s_inv.matmul(&self.b)?,
            self.c.matmul(s)?,
            self.d.clone(),
        )
    }

    /// Realization of the functional inverse `F(z)^{-1}`:
    /// `(A - B D^{-1} C, -B D^{-1}, D^{-1} C, D^{-1})`, same state dimension.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if !self.is_square_valued() {
            return Err(Error::NotSquare {
                rows: self.output_dim(),
                cols: self.input_dim(),
            });
        }
        let d_inv = self
            .d
            .inverse(tol)
            .map_err(|_| Error::Singular("feedthrough D is singular at tolerance".into()))?;
        let bd = self.b.matmul(&d_inv)?;
        Self::new(
            self.a.matsub(&bd.matmul(&self.c)?)?,
            bd.scale(c(-1.0, 0.0)),
            d_inv.matmul(&self.c)?,
            d_inv,
        )
    }

    /// Realization of the product `F1(z) F2(z)` with state dimension `n1 + n2`.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        if self.input_dim() != rhs.output_dim() {
            return Err(Error::DimensionMismatch(format!(
                "product inner dimensions disagree: {} vs {}",
                self.input_dim(),
                rhs.output_dim()
            )));
        }
        let (n1, n2) = (self.state_dim(), rhs.state_dim());
        let a = ComplexMatrix::block2x2(
            &self.a,
            &self.b.matmul(&rhs.c)?,
            &ComplexMatrix::zeros(n2, n1),
            &rhs.a,
        )?;
        let b = ComplexMatrix::vstack(&[&self.b.matmul(&rhs.d)?, &rhs.b])?;
        let cc = ComplexMatrix::hstack(&[&self.c, &self.d.matmul(&rhs.c)?])?;
        let d = self.d.matmul(&rhs.d)?;
        Self::new(a, b, cc, d)
    }

    /// Realization of the sum `F1(z) + F2(z)` by block-diagonal state stacking.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.output_dim() != rhs.output_dim() || self.input_dim() != rhs.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "sum value dimensions disagree: {}x{} vs {}x{}",
                self.output_dim(),
                self.input_dim(),
                rhs.output_dim(),
                rhs.input_dim()
            )));
        }
        Self::new(
            ComplexMatrix::block_diag(&[&self.a, &rhs.a]),
            ComplexMatrix::vstack(&[&self.b, &rhs.b])?,
            ComplexMatrix::hstack(&[&self.c, &rhs.c])?,
            self.d.matadd(&rhs.d)?,
        )
    }

    /// Realization of `c F(z)`.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.scale(factor),
            d: self.d.scale(factor),
        }
    }

    /// Realization of `F(z) + K` for a constant `K`.
    pub fn shift(&self, k: &ComplexMatrix) -> Result<Self> {
        Self::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.matadd(k).map_err(|_| {
                Error::DimensionMismatch(format!(
                    "shift constant must be {}x{}, got {}x{}",
                    self.output_dim(),
                    self.input_dim(),
                    k.rows(),
                    k.cols()
                ))
            })?,
        )
    }

    /// Realization of `I_k (x) F(z)` (Kronecker lift):
    /// `(I_k (x) A, I_k (x) B, I_k (x) C, I_k (x) D)` with state dimension `k n`.
    pub fn kron_lift(&self, k: usize) -> Self {
        let id = ComplexMatrix::identity(k);
        Self {
            a: id.kron(&self.a),
            b: id.kron(&self.b),
            c: id.kron(&self.c),
            d: id.kron(&self.d),
        }
    }

    /// Fold constant left/right factors into the output and input maps:
    /// realizes `L F(z) R` for constants `L` (p' x p) and `R` (m x m').
    pub fn sandwich(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Result<Self> {
        Self::new(
            self.a.clone(),
            self.b.matmul(right)?,
            left.matmul(&self.c)?,
            left.matmul(&self.d.matmul(right)?)?,
        )
    }
}

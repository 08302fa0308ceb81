//! Electrical one-port elements and feedback-loop combinators as
//! realizations.
//!
//! The leaves are proper, analytic-at-infinity blocks: RC shunt branches,
//! LC tank circuits, constants and arbitrary realizations. Improper elements
//! (a bare `zL` or `zC`) are rejected at the type level; the tank is exposed
//! as its already-proper closed form. Series connection adds driving-point
//! impedances, and [`phi`] is the basic feedback / parallel-impedance
//! operation `(F + G^{-1})^{-1}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c, ComplexMatrix};
use crate::realization::Realization;

fn require_positive(label: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::NonPositiveElement(format!("{label} = {value}")));
    }
    Ok(())
}

/// Shunt RC branch: impedance `(R^{-1} + zC)^{-1} = gamma / (z + a)` with
/// `gamma = 1/C` and `a = 1/(RC)`. Degree-one realization.
pub fn rc_shunt(resistance: f64, capacitance: f64) -> Result<Realization> {
    require_positive("R", resistance)?;
    require_positive("C", capacitance)?;
    Ok(Realization::first_order(
        c(-1.0 / (resistance * capacitance), 0.0),
        c(1.0 / capacitance, 0.0),
        c(0.0, 0.0),
    ))
}

/// Parallel LC tank: impedance `((zL)^{-1} + zC)^{-1} = (1/C) z / (z^2 + 1/(LC))`.
/// Degree-two lossless realization with poles on the imaginary axis.
pub fn lc_tank(inductance: f64, capacitance: f64) -> Result<Realization> {
    require_positive("L", inductance)?;
    require_positive("C", capacitance)?;
    let a = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(-1.0 / (inductance * capacitance), 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])?;
    let b = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(0.0, 0.0)]])?;
    let cc = ComplexMatrix::from_rows(&[vec![c(1.0 / capacitance, 0.0), c(0.0, 0.0)]])?;
    Realization::new(a, b, cc, ComplexMatrix::zeros(1, 1))
}

/// Series resistor plus shunt RC branches:
/// `d + sum gamma_j / (z + a_j)` with all `gamma_j, a_j > 0` and `d >= 0`.
/// The state matrix is `diag(-a_j)`, strictly Hurwitz.
pub fn ladder(d: f64, branches: &[(f64, f64)]) -> Result<Realization> {
    if !(d >= 0.0 && d.is_finite()) {
        return Err(Error::NonPositiveElement(format!(
            "series resistance d = {d} must be nonnegative"
        )));
    }
    let n = branches.len();
    for (gamma, a) in branches {
        require_positive("gamma", *gamma)?;
        require_positive("a", *a)?;
    }
    let poles: Vec<Complex64> = branches.iter().map(|(_, a)| c(-a, 0.0)).collect();
    Realization::new(
        ComplexMatrix::diagonal(&poles),
        ComplexMatrix::from_fn(n, 1, |_, _| c(1.0, 0.0)),
        ComplexMatrix::from_fn(1, n, |_, j| c(branches[j].0, 0.0)),
        ComplexMatrix::scalar(c(d, 0.0)),
    )
}

/// Feedback / parallel-impedance combinator `phi(F, G) = (F + G^{-1})^{-1}`.
///
/// Both operands must be square-valued of the same size; `D_G` and
/// `D_F + D_G^{-1}` must be nonsingular at `tol` (sufficient, checkable
/// conditions for the two inversions).
pub fn phi(f: &Realization, g: &Realization, tol: f64) -> Result<Realization> {
    if !f.is_square_valued() || !g.is_square_valued() || f.output_dim() != g.output_dim() {
        return Err(Error::DimensionMismatch(format!(
            "phi needs square operands of equal size, got {}x{} and {}x{}",
            f.output_dim(),
            f.input_dim(),
            g.output_dim(),
            g.input_dim()
        )));
    }
    let g_inv = g.inverse(tol)?;
    f.add(&g_inv)?.inverse(tol)
}

/// Expression tree of circuit / feedback building blocks.
#[derive(Debug, Clone)]
pub enum NetworkExpr {
    /// Constant block `F(z) = D`.
    Const(ComplexMatrix),
    /// Arbitrary realization leaf.
    Leaf(Realization),
    /// Shunt RC branch with strictly positive element values.
    RcShunt { resistance: f64, capacitance: f64 },
    /// Parallel LC tank with strictly positive element values.
    LcTank { inductance: f64, capacitance: f64 },
    /// Series connection: impedances add.
    Series(Vec<NetworkExpr>),
    /// Feedback loop `(F + G^{-1})^{-1}`.
    Phi {
        f: Box<NetworkExpr>,
        g: Box<NetworkExpr>,
    },
}

/// Reduce an expression tree to a single realization. Errors are annotated
/// with the path of the offending node (for example `series[2]/phi.g`).
pub fn flatten(expr: &NetworkExpr, tol: f64) -> Result<Realization> {
    flatten_at(expr, tol, "root")
}

fn flatten_at(expr: &NetworkExpr, tol: f64, path: &str) -> Result<Realization> {
    match expr {
        NetworkExpr::Const(d) => Ok(Realization::constant(d.clone())),
        NetworkExpr::Leaf(r) => Ok(r.clone()),
        NetworkExpr::RcShunt {
            resistance,
            capacitance,
        } => rc_shunt(*resistance, *capacitance).map_err(|e| e.at_network_path(path)),
        NetworkExpr::LcTank {
            inductance,
            capacitance,
        } => lc_tank(*inductance, *capacitance).map_err(|e| e.at_network_path(path)),
        NetworkExpr::Series(items) => {
            if items.is_empty() {
                return Err(
                    Error::InvalidParams("series node needs at least one element".into())
                        .at_network_path(path),
                );
            }
            let mut acc: Option<Realization> = None;
            for (i, item) in items.iter().enumerate() {
                let child = flatten_at(item, tol, &format!("{path}/series[{i}]"))?;
                acc = Some(match acc {
                    None => child,
                    Some(sum) => sum
                        .add(&child)
                        .map_err(|e| e.at_network_path(format!("{path}/series[{i}]")))?,
                });
            }
            Ok(acc.expect("nonempty series"))
        }
        NetworkExpr::Phi { f, g } => {
            let f_r = flatten_at(f, tol, &format!("{path}/phi.f"))?;
            let g_r = flatten_at(g, tol, &format!("{path}/phi.g"))?;
            phi(&f_r, &g_r, tol).map_err(|e| e.at_network_path(path))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rhp_grid;
    use crate::stieltjes::is_positive_sampled;

    #[test]
    fn rc_shunt_closed_form() {
        // R = C = 1: f(z) = 1/(z+1), f(1) = 1/2
        let r = rc_shunt(1.0, 1.0).unwrap();
        let v = r.eval(c(1.0, 0.0)).unwrap();
        assert!((v[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);
        // a = 1/(RC), gamma = 1/C recovered from the realization
        let (rv, cv) = (2.0, 0.25);
        let r2 = rc_shunt(rv, cv).unwrap();
        assert!((r2.a()[(0, 0)] - c(-1.0 / (rv * cv), 0.0)).norm() < 1e-15);
        assert!((r2.c()[(0, 0)] - c(1.0 / cv, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rc_shunt_is_positive_real() {
        let r = rc_shunt(1.0, 1.0).unwrap();
        assert!(is_positive_sampled(&r, &rhp_grid(50, 4242), 1e-9).unwrap());
    }

    #[test]
    fn lc_tank_value_and_resonance() {
        let r = lc_tank(1.0, 1.0).unwrap();
        let v = r.eval(c(1.0, 0.0)).unwrap();
        assert!((v[(0, 0)] - c(0.5, 0.0)).norm() < 1e-12);
        // resonance at z = i / sqrt(LC)
        assert!(matches!(r.eval(c(0.0, 1.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn lc_tank_is_lossless_on_the_imaginary_axis() {
        let r = lc_tank(0.5, 2.0).unwrap();
        for omega in [0.3, 0.7, 2.5, -1.4] {
            let h = crate::stieltjes::hermitian_part_at(&r, c(0.0, omega)).unwrap();
            assert!(h.norm_max() < 1e-12, "Hermitian part {h:?} at i*{omega}");
        }
    }

    #[test]
    fn negative_element_rejected() {
        assert!(matches!(
            rc_shunt(-1.0, 1.0),
            Err(Error::NonPositiveElement(_))
        ));
        assert!(matches!(
            lc_tank(1.0, 0.0),
            Err(Error::NonPositiveElement(_))
        ));
        assert!(matches!(
            ladder(1.0, &[(0.0, 1.0)]),
            Err(Error::NonPositiveElement(_))
        ));
    }

    #[test]
    fn empty_ladder_is_constant() {
        let r = ladder(0.75, &[]).unwrap();
        assert_eq!(r.state_dim(), 0);
        assert!((r.eval(c(5.0, 3.0)).unwrap()[(0, 0)] - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ladder_hand_computed_fixture() {
        // d = 1, branches (1,1), (2,3): f(1) = 1 + 1/2 + 2/4 = 2
        let r = ladder(1.0, &[(1.0, 1.0), (2.0, 3.0)]).unwrap();
        let v = r.eval(c(1.0, 0.0)).unwrap();
        assert!((v[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn ladder_state_matrix_is_hurwitz_and_diagonal() {
        let r = ladder(0.5, &[(1.0, 2.0), (0.5, 0.25), (2.0, 1.0)]).unwrap();
        let eigs = r.state_eigenvalues().unwrap();
        assert!(eigs.iter().all(|l| l.re < 0.0 && l.im.abs() < 1e-14));
        // diagonal state matrix feeds the diagonalizable composition directly
        let right = crate::random::realization_invertible_d(2, 3, &mut crate::random::rng(7));
        let composed = crate::compose::diagonalizable(
            &r,
            &right,
            crate::compose::DiagCase::ScalarResidues,
            1e-9,
        );
        assert!(composed.is_ok());
    }

    #[test]
    fn phi_of_constants() {
        // F = 0, G = D_G: (0 + D_G^{-1})^{-1} = D_G
        let dg = ComplexMatrix::from_real_rows(&[&[2.0, 0.5], &[0.0, 1.0]]).unwrap();
        let f = Realization::constant(ComplexMatrix::zeros(2, 2));
        let g = Realization::constant(dg.clone());
        let out = phi(&f, &g, 1e-9).unwrap();
        assert!(out.d().max_abs_diff(&dg) < 1e-12);
    }

    #[test]
    fn phi_symmetry() {
        // phi(G^{-1}, F^{-1}) = phi(F, G)
        let mut rng = crate::random::rng(211);
        let f = crate::random::realization_invertible_d(2, 2, &mut rng);
        let g = crate::random::realization_invertible_d(3, 2, &mut rng);
        let lhs = phi(&f, &g, 1e-9).unwrap();
        let rhs = phi(&g.inverse(1e-9).unwrap(), &f.inverse(1e-9).unwrap(), 1e-9).unwrap();
        let pts = crate::sampling::oracle_points(&[&lhs, &rhs], 20, 213).unwrap();
        for z in pts {
            let a = lhs.eval(z).unwrap();
            let b = rhs.eval(z).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-9);
        }
    }

    #[test]
    fn phi_of_positive_reals_is_positive_real() {
        let f = rc_shunt(1.0, 2.0)
            .unwrap()
            .shift(&ComplexMatrix::scalar(c(0.5, 0.0)))
            .unwrap();
        let g = ladder(1.0, &[(1.0, 1.0)]).unwrap();
        let out = phi(&f, &g, 1e-9).unwrap();
        assert!(is_positive_sampled(&out, &rhp_grid(50, 4242), 1e-9).unwrap());
    }

    #[test]
    fn flatten_single_leaf() {
        let expr = NetworkExpr::RcShunt {
            resistance: 1.0,
            capacitance: 1.0,
        };
        let direct = rc_shunt(1.0, 1.0).unwrap();
        let flat = flatten(&expr, 1e-9).unwrap();
        assert!(flat.array().max_abs_diff(&direct.array()) < 1e-15);
    }

    #[test]
    fn series_of_const_and_shunts_matches_ladder() {
        let branches = [(1.0, 1.0), (2.0, 3.0)];
        let expr = NetworkExpr::Series(vec![
            NetworkExpr::Const(ComplexMatrix::scalar(c(1.0, 0.0))),
            NetworkExpr::RcShunt {
                resistance: 1.0, // gamma/a = 1, 1/gamma = 1
                capacitance: 1.0,
            },
            NetworkExpr::RcShunt {
                resistance: 2.0 / 3.0, // gamma = 2, a = 3
                capacitance: 0.5,
            },
        ]);
        let flat = flatten(&expr, 1e-9).unwrap();
        let lad = ladder(1.0, &branches).unwrap();
        let pts = crate::sampling::oracle_points(&[&flat, &lad], 20, 219).unwrap();
        for z in pts {
            let a = flat.eval(z).unwrap();
            let b = lad.eval(z).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn flatten_phi_matches_direct_formula() {
        // impedance (Y_F + Z_G^{-1})^{-1} with rational leaves
        let y_f = rc_shunt(1.0, 1.0)
            .unwrap()
            .shift(&ComplexMatrix::scalar(c(0.3, 0.0)))
            .unwrap();
        let z_g = ladder(0.5, &[(1.0, 2.0)]).unwrap();
        let expr = NetworkExpr::Phi {
            f: Box::new(NetworkExpr::Leaf(y_f.clone())),
            g: Box::new(NetworkExpr::Leaf(z_g.clone())),
        };
        let flat = flatten(&expr, 1e-9).unwrap();
        let pts = crate::sampling::oracle_points(&[&flat], 20, 223).unwrap();
        for z in pts {
            let yf = y_f.eval(z).unwrap();
            let zg = z_g.eval(z).unwrap();
            let want = yf
                .matadd(&zg.inverse(1e-12).unwrap())
                .unwrap()
                .inverse(1e-12)
                .unwrap();
            let got = flat.eval(z).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-10);
        }
    }

    #[test]
    fn flatten_error_paths_are_annotated() {
        let expr = NetworkExpr::Series(vec![
            NetworkExpr::Const(ComplexMatrix::scalar(c(1.0, 0.0))),
            NetworkExpr::RcShunt {
                resistance: -1.0,
                capacitance: 1.0,
            },
        ]);
        let err = flatten(&expr, 1e-9).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("series[1]"), "message was: {msg}");
    }
}

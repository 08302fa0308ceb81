//! Positivity closure under variable-substitution composition: composing
//! positive-real building blocks from the networks module stays
//! sampled-positive-real on the standard grid. Sampling evidence, not proof.

use realize_core::compose::{self, DiagCase};
use realize_core::matrix::ComplexMatrix;
use realize_core::networks::{ladder, lc_tank, rc_shunt};
use realize_core::sampling::rhp_grid;
use realize_core::stieltjes::is_positive_sampled;
use realize_core::{Complex64, Realization};

fn grid() -> Vec<Complex64> {
    rhp_grid(50, 4242)
}

#[test]
fn scalar_inner_composition_of_positive_reals_stays_positive() {
    let left = ladder(1.0, &[(1.0, 1.0), (2.0, 3.0)]).unwrap();
    for right in [
        rc_shunt(1.0, 1.0).unwrap(),
        ladder(0.5, &[(1.0, 2.0)]).unwrap(),
        lc_tank(1.0, 1.0).unwrap(),
    ] {
        let composed = compose::scalar_inner(&left, &right, 1e-9).unwrap();
        assert!(
            is_positive_sampled(&composed, &grid(), 1e-9).unwrap(),
            "composition with {right:?} lost positivity"
        );
    }
}

#[test]
fn diagonalizable_composition_of_positive_reals_stays_positive() {
    let left = ladder(0.5, &[(1.0, 1.0), (0.5, 2.0)]).unwrap();
    let right = ladder(1.0, &[(2.0, 1.0)]).unwrap();
    for case in [
        DiagCase::StateMatched, // q = n is not met here, expect the error path
        DiagCase::SquareInput,
        DiagCase::SquareOutput,
        DiagCase::ScalarResidues,
    ] {
        match compose::diagonalizable(&left, &right, case, 1e-9) {
            Ok(composed) => {
                assert!(
                    is_positive_sampled(&composed, &grid(), 1e-9).unwrap(),
                    "case {case} lost positivity"
                );
            }
            Err(realize_core::Error::DimensionMismatch(_)) => {
                assert_eq!(case, DiagCase::StateMatched);
            }
            Err(other) => panic!("unexpected error for case {case}: {other}"),
        }
    }
}

#[test]
fn staged_composition_of_positive_reals_stays_positive() {
    // d + 1/(z+a)^2 is positive real when d >= 1/(8 a^2); here d = 0.5, a = 1
    let left = Realization::new(
        ComplexMatrix::from_real_rows(&[&[-1.0, 1.0], &[0.0, -1.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.0], &[1.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.5]]).unwrap(),
    )
    .unwrap();
    assert!(is_positive_sampled(&left, &grid(), 1e-9).unwrap());
    for right in [
        rc_shunt(1.0, 1.0).unwrap(),
        ladder(0.25, &[(1.0, 1.0), (1.0, 4.0)]).unwrap(),
    ] {
        let composed = compose::scalar_outer(&left, &right, 1e-9).unwrap();
        assert!(
            is_positive_sampled(&composed, &grid(), 1e-9).unwrap(),
            "staged composition lost positivity"
        );
    }
}

#[test]
fn below_threshold_double_pole_is_not_positive() {
    // the same function with d below 1/(8 a^2) fails positivity, so the
    // closure tests above are not vacuous
    let left = Realization::new(
        ComplexMatrix::from_real_rows(&[&[-1.0, 1.0], &[0.0, -1.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.0], &[1.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.05]]).unwrap(),
    )
    .unwrap();
    assert!(!is_positive_sampled(&left, &grid(), 1e-9).unwrap());
}

//! Sample grids for pointwise oracles and positivity checks.

use num_complex::Complex64;
use rand::Rng;

use crate::matrix::c;
use crate::realization::Realization;
use crate::Result;

/// Margin kept between oracle sample points and any pole candidate.
pub const POLE_MARGIN: f64 = 1e-3;

/// Right-half-plane grid: `count` points with log-spaced moduli in
/// [1e-2, 1e2] and arguments uniform in (-pi/2, pi/2), deterministic for a
/// given seed.
pub fn rhp_grid(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = crate::random::rng(seed);
    (0..count)
        .map(|k| {
            let t = if count > 1 {
                k as f64 / (count - 1) as f64
            } else {
                0.5
            };
            let modulus = 10f64.powf(-2.0 + 4.0 * t);
            let arg = rng.gen_range(
                -std::f64::consts::FRAC_PI_2 * 0.999..std::f64::consts::FRAC_PI_2 * 0.999,
            );
            c(modulus * arg.cos(), modulus * arg.sin())
        })
        .collect()
}

/// Random points alternating between the circles |z| = 1 and |z| = 10,
/// rejecting any point within `margin` of the `avoid` set.
pub fn circle_points_avoiding(
    count: usize,
    seed: u64,
    avoid: &[Complex64],
    margin: f64,
) -> Vec<Complex64> {
    let mut rng = crate::random::rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts < 200_000,
            "could not place sample points away from {} excluded points",
            avoid.len()
        );
        let radius = if out.len() % 2 == 0 { 1.0 } else { 10.0 };
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = c(radius * theta.cos(), radius * theta.sin());
        if avoid.iter().all(|p| (p - z).norm() > margin) {
            out.push(z);
        }
    }
    out
}

/// Sample points for comparing transfer functions: avoids the state
/// eigenvalues of every listed realization by [`POLE_MARGIN`].
pub fn oracle_points(systems: &[&Realization], count: usize, seed: u64) -> Result<Vec<Complex64>> {
    let mut avoid = Vec::new();
    for r in systems {
        avoid.extend(r.state_eigenvalues()?);
    }
    Ok(circle_points_avoiding(count, seed, &avoid, POLE_MARGIN))
}

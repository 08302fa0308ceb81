//! Build a driving-point impedance, substitute a sub-network for its
//! frequency variable, and verify the result numerically.
//!
//! Run with `cargo run -p realize-core --example network_composition`.

use realize_core::compose;
use realize_core::networks::{ladder, rc_shunt};
use realize_core::sampling::rhp_grid;
use realize_core::spectral::{is_minimal, mcmillan_degree};
use realize_core::stieltjes::is_positive_sampled;
use realize_core::Complex64;

fn main() {
    // series resistor plus two shunt RC branches:
    // f(z) = 1 + 1/(z+1) + 2/(z+3)
    let outer = ladder(1.0, &[(1.0, 1.0), (2.0, 3.0)]).unwrap();
    println!(
        "outer ladder: degree {} (minimal: {})",
        mcmillan_degree(&outer, 1e-9),
        is_minimal(&outer, 1e-9)
    );

    // replace every occurrence of the variable by the impedance of an RC
    // shunt branch g(z) = 2/(z+4)
    let inner = rc_shunt(0.5, 0.5).unwrap();
    let composed = compose::scalar_inner(&outer, &inner, 1e-9).unwrap();
    println!(
        "composed f(g(z)): state dimension {}, degree {}",
        composed.state_dim(),
        mcmillan_degree(&composed, 1e-9)
    );

    // both building blocks are positive real, and so is the composition
    let grid = rhp_grid(50, 4242);
    println!(
        "sampled positive real: outer={} inner={} composed={}",
        is_positive_sampled(&outer, &grid, 1e-9).unwrap(),
        is_positive_sampled(&inner, &grid, 1e-9).unwrap(),
        is_positive_sampled(&composed, &grid, 1e-9).unwrap(),
    );

    // spot value against direct evaluation
    let z = Complex64::new(1.0, 0.5);
    let g = inner.eval(z).unwrap()[(0, 0)];
    let direct = outer.eval(g).unwrap()[(0, 0)];
    let via_array = composed.eval(z).unwrap()[(0, 0)];
    println!("f(g({z})) = {via_array} (direct evaluation: {direct})");
}

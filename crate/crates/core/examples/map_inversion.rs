//! Inverting a formal coordinate change and checking the round trip.
//!
//! cargo run --example map_inversion

use lie_normal_form::formal::{compose_maps, invert_map, FormalMap, MultiIndex, Series};
use lie_normal_form::GaussianRational as Gr;

fn main() -> lie_normal_form::Result<()> {
    // z ↦ z + z^2: the inverse has the signed Catalan numbers as coefficients.
    let phi = FormalMap::from_components(vec![Series::from_terms(
        1,
        8,
        [(MultiIndex::new(vec![1]), Gr::frac(1, 1)), (MultiIndex::new(vec![2]), Gr::frac(1, 1))],
    )])?;
    let inv = invert_map(&phi)?;
    println!("phi:\n{}", phi.render());
    println!("phi^-1:\n{}", inv.render());
    println!("phi o phi^-1 is the identity: {}", compose_maps(&phi, &inv)?.is_identity());

    // (x, y) ↦ (x + y^2, y - x y) on C^2.
    let phi = FormalMap::from_components(vec![
        Series::from_terms(
            2,
            5,
            [(MultiIndex::new(vec![1, 0]), Gr::frac(1, 1)), (MultiIndex::new(vec![0, 2]), Gr::frac(1, 1))],
        ),
        Series::from_terms(
            2,
            5,
            [(MultiIndex::new(vec![0, 1]), Gr::frac(1, 1)), (MultiIndex::new(vec![1, 1]), Gr::frac(-1, 1))],
        ),
    ])?;
    let inv = invert_map(&phi)?;
    println!("psi^-1:\n{}", inv.render());
    println!("psi^-1 o psi is the identity: {}", compose_maps(&inv, &phi)?.is_identity());
    Ok(())
}

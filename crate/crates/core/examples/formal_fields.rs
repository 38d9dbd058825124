//! Truncated vector fields: the star product and the Lie bracket.
//!
//! cargo run --example formal_fields

use lie_normal_form::formal::{bracket, star, FormalVectorField, MultiIndex};
use lie_normal_form::GaussianRational as Gr;

fn main() -> lie_normal_form::Result<()> {
    // V = x d/dx + y^2 d/dy, W = d/dx + x y d/dy on C^2, trusted to degree 4.
    let v = FormalVectorField::from_terms(
        2,
        4,
        [(MultiIndex::new(vec![1, 0]), 0, Gr::frac(1, 1)), (MultiIndex::new(vec![0, 2]), 1, Gr::frac(1, 1))],
    );
    let w = FormalVectorField::from_terms(
        2,
        4,
        [(MultiIndex::new(vec![0, 0]), 0, Gr::frac(1, 1)), (MultiIndex::new(vec![1, 1]), 1, Gr::frac(1, 1))],
    );
    println!("V:\n{}", v.render());
    println!("W:\n{}", w.render());
    let s = star(&v, &w)?;
    println!("V * W (trusted to {}):\n{}", s.trusted(), s.render());
    let b = bracket(&v, &w)?;
    println!("[V, W] (trusted to {}):\n{}", b.trusted(), b.render());
    Ok(())
}

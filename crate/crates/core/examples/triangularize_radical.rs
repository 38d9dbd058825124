//! Roots of the radical and the triangularizing coordinates of the linear parts.
//!
//! cargo run --example triangularize_radical [PROBLEM]

use lie_normal_form::document::load_problem;
use lie_normal_form::lie::{adjoint_matrices, roots_of_radical, simultaneous_triangularize, spectral_data};
use lie_normal_form::straighten::straighten;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/jordan.json").to_string());
    let (p, _) = load_problem(&std::fs::read_to_string(&path)?, None)?;
    let (g, d) = (&p.algebra, &p.decomposition);

    let ad = adjoint_matrices(g, &d.r)?;
    let tri = simultaneous_triangularize(&ad)?;
    for (a, m) in d.r.iter().zip(&ad) {
        let t = tri.basis_inverse.mul(m).mul(&tri.basis);
        println!("ad {} in the triangular basis: {:?}", g.name(*a), t);
    }
    let roots: Vec<String> = roots_of_radical(g, d)?.iter().map(ToString::to_string).collect();
    println!("roots: {}", roots.join(", "));

    let st = straighten(&p.rep, d)?;
    let s = spectral_data(g, d, &st.rep, st.p)?;
    println!("coordinate change: {:?}", s.change);
    println!("mu: {}", s.mu.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    println!("nu: {}", s.nu.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    Ok(())
}

//! Resonance sets and the search for a resonance vector X0.
//!
//! cargo run --example resonance_vector [PROBLEM] [DEGREE]

use lie_normal_form::document::load_problem;
use lie_normal_form::lie::spectral_data;
use lie_normal_form::resonance::{find_resonance_vector, resonance_sets, resonance_vector_violation};
use lie_normal_form::straighten::straighten;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/abelian2.json").to_string());
    let degree = args.next().map(|s| s.parse()).transpose()?;
    let (p, _) = load_problem(&std::fs::read_to_string(&path)?, degree)?;
    let k = p.degree();
    let st = straighten(&p.rep, &p.decomposition)?;
    let s = spectral_data(&p.algebra, &p.decomposition, &st.rep, st.p)?;

    let sets = resonance_sets(&s, k);
    for (name, v) in [("R", &sets.r), ("R'", &sets.r_prime), ("R0", &sets.r0), ("R0'", &sets.r0_prime)] {
        println!("{name}: {}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    let x0 = find_resonance_vector(&p.algebra, &p.decomposition, &s, k, 16)?;
    let shown: Vec<String> = x0.iter().map(ToString::to_string).collect();
    println!("X0 = [{}]", shown.join(", "));
    println!("certified: {}", resonance_vector_violation(&s, &x0, k).is_none());
    // The candidate (0, 1, 2, ...) and the coincidence that rules it out, if any.
    let bad: Vec<_> = (0..x0.len()).map(lie_normal_form::GaussianRational::from_usize).collect();
    if let Some(w) = resonance_vector_violation(&s, &bad, k) {
        println!("{:?} is rejected: {w}", bad.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    Ok(())
}

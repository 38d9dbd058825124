//! Straightening the abelian ideal to constant fields.
//!
//! cargo run --example straighten_ideal [PROBLEM]

use lie_normal_form::document::load_problem;
use lie_normal_form::formal::pushforward;
use lie_normal_form::straighten::straighten;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/log_line.json").to_string());
    let (p, _) = load_problem(&std::fs::read_to_string(&path)?, None)?;
    let st = straighten(&p.rep, &p.decomposition)?;
    println!("p = {}, q = {}", st.p, st.q);
    println!("a matrix: {:?}", st.a_matrix);
    println!("phi:\n{}", st.phi.render());
    for &a in &p.decomposition.m {
        let pushed = pushforward(p.rep.field(a), &st.phi)?;
        println!("T_{} becomes:\n{}", p.algebra.name(a), pushed.render());
    }
    Ok(())
}

//! Checking the hypotheses on a problem and reading the report.
//!
//! cargo run --example validate_problem [PROBLEM]

use lie_normal_form::document::load_problem;
use lie_normal_form::lie::validate_input;
use lie_normal_form::GaussianRational as Gr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path =
        std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/aff1.json").to_string());
    let (mut p, _) = load_problem(&std::fs::read_to_string(&path)?, None)?;
    let report = validate_input(&p.algebra, &p.decomposition, &p.rep);
    print!("{}", report.render());

    // One perturbed structure constant breaks the representation property.
    let c = p.algebra.structure_constant(0, 1, 1) + &Gr::frac(1, 2);
    p.algebra.set_structure_constant(0, 1, 1, c.clone());
    p.algebra.set_structure_constant(1, 0, 1, -c);
    let report = validate_input(&p.algebra, &p.decomposition, &p.rep);
    println!("after perturbing [{}, {}]:", p.algebra.name(0), p.algebra.name(1));
    for f in report.failures() {
        println!("  {f}");
    }
    Ok(())
}

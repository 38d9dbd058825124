//! Linearizing a semisimple action: sl(2) ⋉ C^2 in curved coordinates.
//!
//! cargo run --example semisimple_linearization

use lie_normal_form::document::load_problem;
use lie_normal_form::normal_form::{normalize_full, NormalizeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/sl2_c2.json"))?;
    let (p, _) = load_problem(&text, None)?;
    let r = normalize_full(&p, &NormalizeOptions::default())?;
    for (a, (before, after)) in p.rep.fields().iter().zip(r.normalized.fields()).enumerate() {
        println!("T_{}: {} terms -> {} terms", p.algebra.name(a), before.terms().len(), after.terms().len());
        println!("{}", after.render());
    }
    for f in r.factors.iter().filter(|f| f.stage == "linearize_semisimple") {
        println!("factor of degree {}:\n{}", f.degree, f.field.render());
    }
    println!("phi_total:\n{}", r.phi_total.render());
    Ok(())
}

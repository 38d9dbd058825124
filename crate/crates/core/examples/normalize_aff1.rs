//! Full normalization of the affine group of the line acting on C^2.
//!
//! cargo run --example normalize_aff1

use lie_normal_form::document::{load_problem, render_result};
use lie_normal_form::normal_form::{normalize_full, NormalizeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/aff1.json"))?;
    let (p, _) = load_problem(&text, None)?;
    println!("input T_X0:\n{}", p.rep.field(0).render());
    let r = normalize_full(&p, &NormalizeOptions::default())?;
    print!("{}", render_result(&p.algebra, &r));
    Ok(())
}

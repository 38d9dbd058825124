//! Re-certifying a result document, and catching a tampered one.
//!
//! cargo run --example verify_result

use lie_normal_form::document::{load_problem, ResultDoc};
use lie_normal_form::normal_form::{normalize_full, NormalizeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/jordan.json"))?;
    let (p, doc) = load_problem(&text, None)?;
    let r = normalize_full(&p, &NormalizeOptions::default())?;
    let result = ResultDoc::new(&doc, &p.algebra, &r);
    print!("{}", result.verify()?.render());

    let mut v = serde_json::to_value(&result)?;
    v["normalized"]["D"]["terms"][4]["coeff"] = "5".into();
    let tampered: ResultDoc = serde_json::from_value(v)?;
    println!("tampered document:");
    for f in tampered.verify()?.failures() {
        println!("  {f}");
    }
    Ok(())
}

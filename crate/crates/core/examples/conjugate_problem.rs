//! Pushes a problem forward by a formal map, producing an equivalent problem
//! in new coordinates. This is how the non-trivial corpus entries are built.
//!
//! cargo run --example conjugate_problem -- corpus/sources/sl2_c2_linear.json corpus/sources/sl2_c2_map.json out.json

use std::error::Error;

use lie_normal_form::document::{load_problem, to_json, MapDoc, ProblemDoc};
use lie_normal_form::lie::LieProblem;
use lie_normal_form::normal_form::conjugate_rep;

fn main() -> Result<(), Box<dyn Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [problem, map, out] = args.as_slice() else {
        return Err("usage: conjugate_problem PROBLEM MAP OUTPUT".into());
    };
    let (p, _) = load_problem(&std::fs::read_to_string(problem)?, None)?;
    let map: MapDoc = serde_json::from_str(&std::fs::read_to_string(map)?)?;
    let chi = map.to_map(p.n(), "map")?;
    let rep = conjugate_rep(&p.algebra, &p.rep, &chi)?;
    // Fields of the ideal lose one trusted degree; the problem is stated at K - 1.
    let k = p.degree() - 1;
    let fields = rep.fields().iter().map(|f| f.truncate(k).with_trusted(k)).collect();
    let rep = lie_normal_form::lie::NonlinearRep::new(p.n(), k, fields)?;
    let doc = ProblemDoc::from_problem(&LieProblem { rep, ..p });
    std::fs::write(out, to_json(&doc)?)?;
    println!("wrote {out} at degree {k}");
    Ok(())
}

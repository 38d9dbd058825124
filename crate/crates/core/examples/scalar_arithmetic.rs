//! Exact arithmetic in ℚ(i) and the canonical scalar strings.
//!
//! cargo run --example scalar_arithmetic

use lie_normal_form::GaussianRational as Gr;

fn main() -> lie_normal_form::Result<()> {
    let a: Gr = "3/4+1/2i".parse()?;
    let b = Gr::frac(-2, 3);
    println!("a = {a}, b = {b}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("a / b = {}", a.checked_div(&b)?);
    println!("1 / a = {}", a.inv()?);
    println!("conj(a) = {}, |a|^2 = {}", a.conj(), a.norm_sqr());
    println!("i^3 = {}", Gr::i().pow(3));
    match Gr::frac(1, 1).checked_div(&Gr::frac(0, 1)) {
        Ok(v) => println!("unexpected {v}"),
        Err(e) => println!("1 / 0: {e}"),
    }
    Ok(())
}

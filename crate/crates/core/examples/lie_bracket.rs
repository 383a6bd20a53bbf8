//! The basis of the ring, a few brackets, and the text and JSON forms.

use partlie::liering::{bracket, bracket_basis, enumerate_basis};
use partlie::{BasisElement, LieElement, MultiplicityBound};

fn main() -> partlie::Result<()> {
    let bound = MultiplicityBound::new(2, 4)?;
    let basis = enumerate_basis(&bound);
    let names: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    println!(
        "basis for m=2 n=4 ({} elements): {}",
        basis.len(),
        names.join(", ")
    );

    let m3 = MultiplicityBound::new(3, 5)?;
    let pairs = [
        ("x3 d5", "x1 d3"),
        ("x1*x3 d5", "x1 d3"),
        ("x2^2 d4", "d2"),
        ("d2", "x1 d4"),
    ];
    for (a, b) in pairs {
        let u: BasisElement = a.parse()?;
        let v: BasisElement = b.parse()?;
        match bracket_basis(&u, &v, &m3) {
            Some((c, w)) => println!("[{u}, {v}] = {c} {w}"),
            None => println!("[{u}, {v}] = 0"),
        }
    }

    let a = LieElement::from_terms([(1, "x3 d5".parse()?), (1, "d1".parse()?)], 3);
    let b = LieElement::basis("x1 d3".parse()?);
    let c = bracket(&a, &b, &m3);
    println!("[{a}, {b}] = {c}");
    println!("as JSON: {}", c.to_json());
    println!(
        "x1*x3 d5 as JSON: {}",
        serde_json::to_string(&"x1*x3 d5".parse::<BasisElement>()?).unwrap()
    );
    Ok(())
}

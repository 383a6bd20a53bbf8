//! Rigid commutators at m = 2: the bijection with the basis, bracket
//! preservation, and the rigid chain built from {t_1, ..., t_n}.

use std::collections::BTreeSet;

use partlie::rigid::{
    check_bracket_preservation, rigid_bracket, rigid_set_normalizer, to_rigid,
    verify_chain_correspondence, RigidCommutator,
};
use partlie::{BasisElement, MultiplicityBound};

fn main() -> partlie::Result<()> {
    let bound = MultiplicityBound::new(2, 5)?;
    let u: BasisElement = "x1*x3 d5".parse()?;
    println!("f({u}) = {}", to_rigid(&u, &bound)?);
    let a = RigidCommutator::new(5, &[3])?;
    let b = RigidCommutator::new(3, &[1])?;
    println!("[{a}, {b}] = {}", rigid_bracket(a, b));

    let n = 4;
    let mut set: BTreeSet<_> = (1..=n).map(RigidCommutator::t).collect();
    for i in 0..=n {
        set = rigid_set_normalizer(&set, n)?;
        let items: Vec<String> = set.iter().map(|r| r.to_string()).collect();
        println!("rigid step {i}: {} elements {}", set.len(), items.join(" "));
    }

    for n in 4..=8 {
        let pres = check_bracket_preservation(n)?;
        let corr = verify_chain_correspondence(n, n + 1)?;
        println!(
            "n={n}: preservation {} over {} pairs, chain correspondence {}",
            if pres.passed() { "ok" } else { "FAILED" },
            pres.hypothesis_pairs,
            if corr.passed { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}

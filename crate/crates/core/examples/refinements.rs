//! Refinements, refinability and excludants of a few partitions.
//!
//! Usage: `cargo run --example refinements -- [m] [n]`

use partlie::partitions::{
    bounded_partitions, excludant_condition, excludant_profile, is_unrefinable, refinements,
    shape_predicates, MultiplicityBound, Partition, RefinementDag,
};

fn main() -> partlie::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer"));
    let m = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(6);
    let bound = MultiplicityBound::new(m, n)?;

    for parts in [&[4, 1][..], &[4, 4], &[10, 2], &[3, 2, 1]] {
        let lambda = Partition::from_parts(parts);
        if !lambda.fits(m, usize::MAX) {
            continue;
        }
        let all: Vec<String> = refinements(&lambda, m, None)
            .iter()
            .map(|t| t.to_string())
            .collect();
        println!("{lambda}: refinements [{}]", all.join(", "));
    }

    println!("\nunrefinable partitions in Part_{m}({})", n - 1);
    let mut dag = RefinementDag::new(m);
    for lambda in bounded_partitions(m, n - 1) {
        if lambda.len() < 2 || !is_unrefinable(&lambda, m) {
            continue;
        }
        let shape = shape_predicates(&lambda);
        let profile = excludant_profile(&lambda, &bound)?;
        let ex: Vec<String> = profile
            .excludants
            .iter()
            .map(|(e, mu)| format!("{e}^{mu}"))
            .collect();
        print!("{:<16} excludants [{}]", lambda.to_string(), ex.join(" "));
        if shape.is_triangular {
            print!(" triangular");
        }
        if shape.is_weak_triangular {
            print!(" weak-triangular");
        }
        println!(" steps={}", dag.steps(&lambda));
    }

    let lambda = Partition::from_parts(&[3, 2, 1]);
    for k in [3, 5] {
        let idx = excludant_condition(&lambda, k, &bound)?;
        println!(
            "\n{lambda} with k={k}: strong {:?}, weak {:?}",
            idx.strong, idx.weak
        );
    }
    Ok(())
}

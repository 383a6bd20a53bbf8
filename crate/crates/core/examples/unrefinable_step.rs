//! The chain step made of unrefinable partitions with the first excludant
//! condition, compared with the computed chain.

use partlie::chain::{unrefinable_step_prediction, verify_unrefinable_step};
use partlie::MultiplicityBound;

fn main() -> partlie::Result<()> {
    for (m, n) in [(2, 7), (2, 8), (2, 9), (3, 5), (3, 6)] {
        let bound = MultiplicityBound::new(m, n)?;
        let predicted: Vec<String> = unrefinable_step_prediction(&bound)
            .iter()
            .map(|b| b.to_string())
            .collect();
        let verdict = verify_unrefinable_step(&bound)?;
        println!(
            "m={m} n={n} step {}: {} [{}]",
            n - bound.delta(),
            if verdict.passed { "ok" } else { "MISMATCH" },
            predicted.join(", ")
        );
    }
    Ok(())
}

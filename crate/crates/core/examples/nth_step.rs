//! Step n of the chain for m = 2 against the 1-step excludant prediction.
//! Prints every element on which the two disagree.

use partlie::chain::{nth_step_exceptions, verify_nth_step};

fn main() -> partlie::Result<()> {
    let listed: Vec<String> = nth_step_exceptions()
        .iter()
        .map(|b| b.to_string())
        .collect();
    println!("listed exceptions at n=8: {}", listed.join(", "));
    for n in 5..=10 {
        let report = verify_nth_step(n)?;
        println!(
            "n={n:<2} computed {:>3}, predicted {:>3}",
            report.computed.len(),
            report.predicted.len()
        );
        for b in &report.computed_only {
            println!("      in chain only: {b}");
        }
        for b in &report.predicted_only {
            println!("      predicted only: {b}");
        }
    }
    Ok(())
}

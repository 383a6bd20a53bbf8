//! Computes the idealizer chain and checks ranks and layers against the
//! partition counts.
//!
//! Usage: `cargo run --release --example idealizer_chain -- [m] [n] [depth]`

use partlie::chain::{closed_form_range, default_depth, idealizer_chain, verify_growth};
use partlie::report::write_chain_text;
use partlie::MultiplicityBound;

fn main() -> partlie::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer"));
    let m = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(8);
    let bound = MultiplicityBound::new(m, n)?;
    let depth = args.next().unwrap_or_else(|| default_depth(&bound));

    let report = idealizer_chain(&bound, depth);
    write_chain_text(&report, std::io::stdout().lock()).expect("stdout");

    let verdict = verify_growth(&bound, &report);
    println!(
        "closed forms over i in {:?}: {} ({} comparisons)",
        closed_form_range(&bound),
        if verdict.passed {
            "all match"
        } else {
            "MISMATCH"
        },
        verdict.checked
    );
    if let Some(f) = verdict.failure {
        println!("  {f}");
    }
    Ok(())
}

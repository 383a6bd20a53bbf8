//! Runs the structural property suite at a small bound.
//!
//! Usage: `cargo run --release --example property_checks -- [m] [n]`

use partlie::properties::{property_suite, SuiteConfig};
use partlie::MultiplicityBound;

fn main() -> partlie::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer"));
    let m = args.next().unwrap_or(3);
    let n = args.next().unwrap_or(4);
    let bound = MultiplicityBound::new(m, n)?;
    let config = SuiteConfig {
        refinement_weight: 12,
        ..SuiteConfig::default()
    };
    for v in property_suite(&bound, &config) {
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("{status} {} ({} checks)", v.name, v.checked);
        if let Some(f) = v.failure {
            println!("  {f}");
        }
    }
    Ok(())
}

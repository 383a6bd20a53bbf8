//! Writes a chain report as JSON and CSV, then reads the JSON back.
//!
//! Usage: `cargo run --example export_reports -- [dir]`

use std::fs::{self, File};
use std::path::PathBuf;

use partlie::chain::idealizer_chain;
use partlie::report::{write_chain_csv, ChainReportJson};
use partlie::MultiplicityBound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("partlie-reports"));
    fs::create_dir_all(&dir)?;

    let bound = MultiplicityBound::new(3, 5)?;
    let report = idealizer_chain(&bound, 4);
    let json_path = dir.join("chain_m3_n5.json");
    let csv_path = dir.join("chain_m3_n5.csv");
    serde_json::to_writer_pretty(File::create(&json_path)?, &ChainReportJson::from(&report))?;
    write_chain_csv(&report, File::create(&csv_path)?)?;

    let back: ChainReportJson = serde_json::from_reader(File::open(&json_path)?)?;
    let ranks: Vec<usize> = back
        .steps
        .iter()
        .filter(|s| s.i >= 1)
        .map(|s| s.rank)
        .collect();
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    println!(
        "ranks read back: {ranks:?}, growth check passed: {}",
        back.growth_check.passed
    );
    Ok(())
}

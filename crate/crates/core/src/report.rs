//! Verification verdicts and machine-readable chain exports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::chain::ChainReport;
use crate::liering::BasisElement;

/// Outcome of one verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            passed: true,
            checked: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    /// Records one comparison; the first failing one becomes the counterexample.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(describe());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Verdict) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.failure = other.failure.map(|f| format!("{}: {}", other.name, f));
        }
        self.notes.extend(other.notes);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub i: i64,
    pub rank: usize,
    pub per_layer: BTreeMap<usize, usize>,
    pub new_elements: Vec<BasisElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthJson {
    pub passed: bool,
    pub rows: Vec<GrowthRowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRowJson {
    pub i: i64,
    pub rank: usize,
    pub predicted: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

/// The documented JSON shape of a chain report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReportJson {
    pub m: usize,
    pub n: usize,
    pub steps: Vec<StepJson>,
    pub growth_check: GrowthJson,
}

impl From<&ChainReport> for ChainReportJson {
    fn from(report: &ChainReport) -> Self {
        let steps = report
            .steps
            .iter()
            .map(|s| StepJson {
                i: s.index,
                rank: s.rank,
                per_layer: s.per_layer_counts.clone(),
                new_elements: s.new_elements.clone(),
            })
            .collect();
        let rows: Vec<GrowthRowJson> = report
            .growth_check
            .iter()
            .map(|g| GrowthRowJson {
                i: g.i,
                rank: g.rank,
                predicted: g.predicted,
                matches: g.matches,
            })
            .collect();
        ChainReportJson {
            m: report.bound.m(),
            n: report.bound.n(),
            steps,
            growth_check: GrowthJson {
                passed: rows.iter().all(|r| r.matches != Some(false)),
                rows,
            },
        }
    }
}

/// One CSV row per `(i, k)`: `i,k,count,predicted,match`. Predictions are
/// blank outside the closed-form range.
pub fn write_chain_csv<W: Write>(report: &ChainReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "k", "count", "predicted", "match"])?;
    for row in &report.layer_check {
        w.write_record([
            row.i.to_string(),
            row.k.to_string(),
            row.count.to_string(),
            row.predicted.map(|p| p.to_string()).unwrap_or_default(),
            row.matches.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Plain text summary: one line per step.
pub fn write_chain_text<W: Write>(report: &ChainReport, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "idealizer chain m={} n={}",
        report.bound.m(),
        report.bound.n()
    )?;
    for s in &report.steps {
        let layers: Vec<String> = s
            .per_layer_counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(k, c)| format!("k{k}:{c}"))
            .collect();
        writeln!(
            out,
            "i={:<3} size={:<6} rank={:<5} layers=[{}]",
            s.index,
            s.basis_set.len(),
            s.rank,
            layers.join(" ")
        )?;
    }
    for g in &report.growth_check {
        if let (Some(p), Some(ok)) = (g.predicted, g.matches) {
            writeln!(
                out,
                "growth i={} rank={} predicted={} {}",
                g.i,
                g.rank,
                p,
                if ok { "ok" } else { "MISMATCH" }
            )?;
        }
    }
    Ok(())
}

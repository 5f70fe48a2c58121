use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_records, Status, SweepConfig, VerificationRecord, VerifyError};
use crate::families::{Family, Gamma2Mode};
use crate::tree::parse_graph6_graph;

const EXAMPLES: usize = 20;

/// `m = p - 2` bookkeeping for one reading of `Gamma2_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSummary {
    pub mode: Gamma2Mode,
    /// `"discrepancies"` for the strict reading, `"violations"` otherwise.
    pub kind: String,
    /// Pairs with `m >= 1`.
    pub applicable: usize,
    /// Members of `Gamma2_gamma` with `m != p - 2`.
    pub if_direction: usize,
    /// Pairs with `m = p - 2` outside `Gamma2_gamma`.
    pub only_if_direction: usize,
    pub total: usize,
    /// First few failing pairs as `graph6 i/M`.
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub trees: usize,
    pub pairs: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub m_max: u64,
    /// Pairs whose multiplicity both engines agreed on.
    pub engine_checks: usize,
    pub bound_violations: usize,
    pub p_minus_one_violations: usize,
    pub p_minus_two: Vec<ModeSummary>,
    pub failing_examples: Vec<String>,
    pub workers: usize,
    pub runtime_seconds: f64,
}

impl SweepSummary {
    pub fn mode(&self, mode: Gamma2Mode) -> Option<&ModeSummary> {
        self.p_minus_two.iter().find(|s| s.mode == mode)
    }

    /// Failures that count against the sweep: the bound, `m = p - 1`, and
    /// `m = p - 2` under every reading except the strict one, whose
    /// mismatches are findings rather than failures.
    pub fn violations(&self) -> usize {
        self.bound_violations
            + self.p_minus_one_violations
            + self
                .p_minus_two
                .iter()
                .filter(|s| s.mode != Gamma2Mode::Strict)
                .map(|s| s.total)
                .sum::<usize>()
    }
}

fn label(r: &VerificationRecord) -> String {
    format!("{} {}/{}", r.tree, r.lambda[0], r.lambda[1])
}

fn push_example(list: &mut Vec<String>, r: &VerificationRecord) {
    if list.len() < EXAMPLES {
        list.push(label(r));
    }
}

/// Aggregates records. Without a config, the ranges are read off the records.
pub fn summarize(
    records: &[VerificationRecord],
    config: Option<&SweepConfig>,
    trees: usize,
    runtime_seconds: f64,
) -> SweepSummary {
    let modes: BTreeSet<Gamma2Mode> = match config {
        Some(c) => c.modes.iter().copied().collect(),
        None => records
            .iter()
            .flat_map(|r| r.classification.keys().copied())
            .collect(),
    };
    let mut per_mode: BTreeMap<Gamma2Mode, ModeSummary> = modes
        .iter()
        .map(|&mode| {
            let kind = if mode == Gamma2Mode::Strict { "discrepancies" } else { "violations" };
            (
                mode,
                ModeSummary {
                    mode,
                    kind: kind.to_string(),
                    applicable: 0,
                    if_direction: 0,
                    only_if_direction: 0,
                    total: 0,
                    examples: Vec::new(),
                },
            )
        })
        .collect();
    let mut bound_violations = 0;
    let mut p_minus_one_violations = 0;
    let mut failing_examples = Vec::new();
    for r in records {
        if !r.bound_ok {
            bound_violations += 1;
            push_example(&mut failing_examples, r);
        }
        if r.p_minus_one_status == Status::Violation {
            p_minus_one_violations += 1;
            push_example(&mut failing_examples, r);
        }
        for (mode, status) in &r.p_minus_two_status {
            let Some(s) = per_mode.get_mut(mode) else { continue };
            if *status == Status::NotApplicable {
                continue;
            }
            s.applicable += 1;
            if *status == Status::Violation {
                s.total += 1;
                let member = r
                    .classification
                    .get(mode)
                    .and_then(|c| c.parse::<Family>().ok())
                    == Some(Family::Gamma2(r.gamma));
                if member {
                    s.if_direction += 1;
                } else {
                    s.only_if_direction += 1;
                }
                push_example(&mut s.examples, r);
            }
        }
    }
    let sizes = || records.iter().filter_map(|r| parse_graph6_graph(&r.tree).ok().map(|(n, _)| n));
    SweepSummary {
        trees,
        pairs: records.len(),
        n_min: config.map_or_else(|| sizes().min().unwrap_or(0), |c| c.n_min),
        n_max: config.map_or_else(|| sizes().max().unwrap_or(0), |c| c.n_max),
        m_max: config.map_or_else(|| records.iter().map(|r| r.lambda[1]).max().unwrap_or(0), |c| c.m_max),
        engine_checks: records.len(),
        bound_violations,
        p_minus_one_violations,
        p_minus_two: per_mode.into_values().collect(),
        failing_examples,
        workers: config.map_or(0, |c| c.workers),
        runtime_seconds,
    }
}

/// Re-aggregates a record file written by [`super::sweep`].
pub fn summarize_file(path: &Path) -> Result<SweepSummary, VerifyError> {
    let records = read_records(path)?;
    let trees = records.iter().map(|r| r.tree.as_str()).collect::<BTreeSet<_>>().len();
    Ok(summarize(&records, None, trees, 0.0))
}

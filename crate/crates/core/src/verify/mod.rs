//! Exhaustive verification sweeps over `(tree, lambda)` pairs.
//!
//! Each pair gets one [`VerificationRecord`]: the multiplicity from both
//! engines (which must agree), the pendant and major counts, the bound
//! `m <= p - 1`, and whether `m = p - 1` and `m = p - 2` line up with family
//! membership under each requested reading of `Gamma2_0`.

mod audit;
mod lemmas;
mod summary;

pub use audit::{chebyshev_completeness_audit, AuditEntry, AuditReport};
pub use lemmas::{lemma_suite, LemmaChecks, LemmaOutcome, LemmaReport};
pub use summary::{summarize, summarize_file, ModeSummary, SweepSummary};

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{Classifier, Family, FamilyKind, Gamma2Mode};
use crate::poly::{all_lambda_specs, LambdaSpec, Polynomial};
use crate::spectrum::{char_poly, multiplicity_via_rank};
use crate::tree::{enumerate_trees_with_cap, Tree, TreeError, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record on line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("engines disagree on {tree} at {lambda}: division gives {by_division}, rank gives {by_rank}")]
    EngineMismatch {
        tree: String,
        lambda: String,
        by_division: usize,
        by_rank: usize,
    },
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Consistent,
    Violation,
    NotApplicable,
}

/// One audited `(tree, lambda)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// Canonical graph6.
    pub tree: String,
    /// `[i, M]` for `lambda = 2cos(i*pi/M)`.
    pub lambda: [u64; 2],
    pub p: usize,
    pub gamma: usize,
    pub m: usize,
    /// `m <= 1` for paths, `m <= p - 1` otherwise.
    pub bound_ok: bool,
    /// `m = p - 1` exactly when the tree is in `Gamma_gamma`.
    pub p_minus_one_status: Status,
    /// `m = p - 2` exactly when the tree is in `Gamma2_gamma`, for `m >= 1`.
    pub p_minus_two_status: BTreeMap<Gamma2Mode, Status>,
    pub classification: BTreeMap<Gamma2Mode, String>,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub m_max: u64,
    pub modes: Vec<Gamma2Mode>,
    pub lemma_checks: LemmaChecks,
    /// Worker threads; `0` uses the rayon default.
    pub workers: usize,
    /// Record file (JSON lines). The summary goes next to it as
    /// `<stem>.summary.json`. `None` keeps everything in memory.
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 1,
            n_max: 10,
            m_max: 11,
            modes: vec![Gamma2Mode::Broad, Gamma2Mode::Strict],
            lemma_checks: LemmaChecks::default(),
            workers: 0,
            output: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(VerifyError::Config(format!(
                "need 1 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > DEFAULT_ENUMERATION_CAP {
            return Err(TreeError::LimitExceeded {
                n: self.n_max,
                max: DEFAULT_ENUMERATION_CAP,
            }
            .into());
        }
        if self.m_max < 2 {
            return Err(VerifyError::Config(format!("m_max must be at least 2, got {}", self.m_max)));
        }
        if self.modes.is_empty() {
            return Err(VerifyError::Config("no Gamma2 modes selected".into()));
        }
        Ok(())
    }

    pub fn summary_path(&self) -> Option<PathBuf> {
        self.output.as_ref().map(|p| summary_path_for(p))
    }

    fn pool(&self) -> Result<rayon::ThreadPool, VerifyError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| VerifyError::Config(e.to_string()))
    }
}

pub fn summary_path_for(records: &std::path::Path) -> PathBuf {
    let stem = records.file_stem().and_then(|s| s.to_str()).unwrap_or("records");
    records.with_file_name(format!("{stem}.summary.json"))
}

/// Records plus their aggregate.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub records: Vec<VerificationRecord>,
}

/// Runs the sweep, writes the record and summary files if configured, and
/// returns everything. Aborts on the first engine disagreement.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, VerifyError> {
    config.validate()?;
    let started = Instant::now();
    let specs = all_lambda_specs(config.m_max);
    let classifier = Classifier::new();
    let pool = config.pool()?;
    let mut records = Vec::new();
    let mut trees = 0;
    for n in config.n_min..=config.n_max {
        let batch: Vec<Tree> = enumerate_trees_with_cap(n, DEFAULT_ENUMERATION_CAP)?.collect();
        trees += batch.len();
        let rows: Vec<Vec<VerificationRecord>> = pool.install(|| {
            batch
                .par_iter()
                .map(|t| tree_records(t, &specs, &config.modes, &classifier))
                .collect::<Result<_, _>>()
        })?;
        records.extend(rows.into_iter().flatten());
    }
    let summary = summarize(&records, Some(config), trees, started.elapsed().as_secs_f64());
    if let Some(path) = &config.output {
        write_records(path, &records)?;
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        std::fs::write(summary_path_for(path), text + "\n")?;
    }
    Ok(SweepReport { summary, records })
}

/// Truncates `path` and writes one JSON object per line.
pub fn write_records(path: &std::path::Path, records: &[VerificationRecord]) -> Result<(), VerifyError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut out = BufWriter::new(File::create(path)?);
    for r in records {
        serde_json::to_writer(&mut out, r).expect("records serialize");
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_records(path: &std::path::Path) -> Result<Vec<VerificationRecord>, VerifyError> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| VerifyError::Record {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// All records for one tree, in `(M, i)` order.
pub fn tree_records(
    t: &Tree,
    specs: &[LambdaSpec],
    modes: &[Gamma2Mode],
    classifier: &Classifier,
) -> Result<Vec<VerificationRecord>, VerifyError> {
    let g6 = t.to_graph6();
    let f = char_poly(t);
    let p = t.pendant_count();
    let gamma = t.major_count();
    // Conjugates share a minimal polynomial and therefore a multiplicity.
    let mut by_mu: HashMap<&Polynomial, usize> = HashMap::new();
    let mut out = Vec::with_capacity(specs.len());
    for s in specs {
        let key = s.minimal_poly();
        let m = match by_mu.get(key) {
            Some(&m) => m,
            None => {
                let by_division = f.multiplicity_of(s.minimal_poly());
                let by_rank = multiplicity_via_rank(t, s);
                if by_division != by_rank {
                    return Err(VerifyError::EngineMismatch {
                        tree: g6,
                        lambda: s.to_string(),
                        by_division,
                        by_rank,
                    });
                }
                by_mu.insert(key, by_division);
                by_division
            }
        };
        out.push(evaluate(t, &g6, s, m, p, gamma, modes, classifier));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn evaluate(
    t: &Tree,
    g6: &str,
    s: &LambdaSpec,
    m: usize,
    p: usize,
    gamma: usize,
    modes: &[Gamma2Mode],
    classifier: &Classifier,
) -> VerificationRecord {
    let mut notes = Vec::new();
    let bound_ok = if t.is_path() { m <= 1 } else { m < p };
    if !bound_ok {
        notes.push("bound exceeded".to_string());
    }
    let in_gamma = classifier.is_member(t, s, FamilyKind::Gamma, Gamma2Mode::Broad);
    let p_minus_one_status = if (m + 1 == p) == in_gamma {
        Status::Consistent
    } else {
        notes.push(if in_gamma { "p-1: member without m = p-1" } else { "p-1: m = p-1 without membership" }.into());
        Status::Violation
    };
    let mut p_minus_two_status = BTreeMap::new();
    let mut classification = BTreeMap::new();
    for &mode in modes {
        let family = classifier.family(t, s, mode);
        classification.insert(mode, family.to_string());
        let status = if m == 0 {
            Status::NotApplicable
        } else {
            let member = family == Family::Gamma2(gamma);
            if (m + 2 == p) == member {
                Status::Consistent
            } else {
                let kind = if mode == Gamma2Mode::Strict { "discrepancy" } else { "violation" };
                let dir = if member { "member without m = p-2" } else { "m = p-2 without membership" };
                notes.push(format!("p-2 {kind} ({mode}): {dir}"));
                Status::Violation
            }
        };
        p_minus_two_status.insert(mode, status);
    }
    VerificationRecord {
        tree: g6.to_string(),
        lambda: [s.numerator(), s.denominator()],
        p,
        gamma,
        m,
        bound_ok,
        p_minus_one_status,
        p_minus_two_status,
        classification,
        notes: notes.join("; "),
    }
}

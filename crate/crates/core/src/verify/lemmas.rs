//! Executable checks of the classical lemmas the characterizations rest on.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SweepConfig, VerifyError};
use crate::families::{generate, FamilyKind, Gamma2Mode};
use crate::poly::{all_lambda_specs, LambdaSpec};
use crate::spectrum::{char_poly, forest_multiplicity, multiplicity};
use crate::tree::{enumerate_trees, ForestDecomposition, Tree};

/// Which suites to run, plus the ranges that differ from the sweep's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaChecks {
    /// Parter vertices exist whenever `T` and some `T - v` share `lambda`.
    pub parter_wiener: bool,
    /// `m(T - w) = m(T) + 1` iff some branch `H` has `m(H - v) = m(H) - 1`.
    pub branch: bool,
    /// `Gamma_k` members carry `lambda` and lose one per deleted pendant vertex.
    pub pendant_deletion: bool,
    /// `m(P_n) <= 1`, with equality iff `M | n + 1`.
    pub paths: bool,
    pub path_n_max: usize,
    pub path_m_max: u64,
    pub family_k_max: usize,
}

impl Default for LemmaChecks {
    fn default() -> Self {
        LemmaChecks {
            parter_wiener: true,
            branch: true,
            pendant_deletion: true,
            paths: true,
            path_n_max: 200,
            path_m_max: 40,
            family_k_max: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub name: String,
    /// Instances where the hypothesis held and the conclusion was tested.
    pub checked: usize,
    pub violations: Vec<String>,
}

impl LemmaOutcome {
    fn new(name: &str) -> Self {
        LemmaOutcome {
            name: name.to_string(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn merge(&mut self, other: LemmaOutcome) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub outcomes: Vec<LemmaOutcome>,
}

impl LemmaReport {
    pub fn outcome(&self, name: &str) -> Option<&LemmaOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn total_violations(&self) -> usize {
        self.outcomes.iter().map(|o| o.violations.len()).sum()
    }
}

pub fn lemma_suite(config: &SweepConfig) -> Result<LemmaReport, VerifyError> {
    config.validate()?;
    let checks = &config.lemma_checks;
    let specs = all_lambda_specs(config.m_max);
    let pool = config.pool()?;
    let mut outcomes = Vec::new();
    if checks.parter_wiener || checks.branch {
        let mut trees = Vec::new();
        for n in config.n_min..=config.n_max {
            trees.extend(enumerate_trees(n)?);
        }
        let per_tree: Vec<[LemmaOutcome; 4]> =
            pool.install(|| trees.par_iter().map(|t| neighborhood_lemmas(t, &specs)).collect());
        let mut merged = [
            LemmaOutcome::new("parter_wiener_i"),
            LemmaOutcome::new("parter_wiener_ii"),
            LemmaOutcome::new("parter_wiener_iii"),
            LemmaOutcome::new("branch_equivalence"),
        ];
        for row in per_tree {
            for (acc, o) in merged.iter_mut().zip(row) {
                acc.merge(o);
            }
        }
        let [pw1, pw2, pw3, branch] = merged;
        if checks.parter_wiener {
            outcomes.extend([pw1, pw2, pw3]);
        }
        if checks.branch {
            outcomes.push(branch);
        }
    }
    if checks.pendant_deletion {
        let (has, deletion) = pendant_lemmas(config, &specs)?;
        outcomes.extend([has, deletion]);
    }
    if checks.paths {
        outcomes.push(path_lemma(checks.path_n_max, checks.path_m_max));
    }
    Ok(LemmaReport { outcomes })
}

/// Parter-Wiener (i)-(iii) and the branch equivalence for one tree.
fn neighborhood_lemmas(t: &Tree, specs: &[LambdaSpec]) -> [LemmaOutcome; 4] {
    let mut pw1 = LemmaOutcome::new("parter_wiener_i");
    let mut pw2 = LemmaOutcome::new("parter_wiener_ii");
    let mut pw3 = LemmaOutcome::new("parter_wiener_iii");
    let mut branch = LemmaOutcome::new("branch_equivalence");
    let n = t.n();
    let forests: Vec<ForestDecomposition> = (0..n).map(|v| t.delete_vertex(v).expect("in range")).collect();
    let g6 = t.to_graph6();
    for s in specs {
        let m = multiplicity(t, s);
        let comp_m: Vec<Vec<usize>> = forests
            .iter()
            .map(|f| f.components.iter().map(|c| multiplicity(&c.tree, s)).collect())
            .collect();
        let mv: Vec<usize> = comp_m.iter().map(|c| c.iter().sum()).collect();
        let parter = |w: usize| mv[w] == m + 1;
        let carrying = |w: usize, at_least: usize| comp_m[w].iter().filter(|&&k| k >= at_least).count();
        let at = |w: Option<usize>| match w {
            Some(w) => format!("{g6} at {s} (w = {w})"),
            None => format!("{g6} at {s}"),
        };

        if m >= 1 && mv.iter().any(|&k| k >= 1) {
            pw1.check((0..n).any(parter), || at(None));
            if m >= 2 {
                pw2.check(
                    (0..n).any(|w| parter(w) && t.degree(w) >= 3 && carrying(w, 1) >= 3),
                    || at(None),
                );
            } else {
                pw3.check(
                    (0..n).any(|w| parter(w) && t.degree(w) >= 2 && comp_m[w].iter().filter(|&&k| k == 1).count() >= 2),
                    || at(None),
                );
            }
        }

        for (w, forest) in forests.iter().enumerate() {
            if mv[w] == 0 {
                continue;
            }
            let downer_branch = forest.components.iter().zip(&comp_m[w]).any(|(c, &mh)| {
                let without = c.tree.delete_vertex(c.attach).expect("attach in range");
                mh >= 1 && forest_multiplicity(&without, s) + 1 == mh
            });
            branch.check(parter(w) == downer_branch, || at(Some(w)));
        }
    }
    [pw1, pw2, pw3, branch]
}

/// Both pendant lemmas over generated `Gamma_k` members.
fn pendant_lemmas(config: &SweepConfig, specs: &[LambdaSpec]) -> Result<(LemmaOutcome, LemmaOutcome), VerifyError> {
    let mut has = LemmaOutcome::new("gamma_has_eigenvalue");
    let mut deletion = LemmaOutcome::new("gamma_pendant_deletion");
    for s in specs {
        for k in 0..=config.lemma_checks.family_k_max {
            for t in generate(FamilyKind::Gamma, k, s, config.n_max, Gamma2Mode::Broad)? {
                if t.n() < config.n_min {
                    continue;
                }
                let m = multiplicity(&t, s);
                let g6 = t.to_graph6();
                has.check(m >= 1, || format!("{g6} at {s}"));
                if t.n() < 2 {
                    continue;
                }
                for v in t.pendant_vertices().collect::<Vec<_>>() {
                    let mv = multiplicity(&t.delete_pendant(v), s);
                    deletion.check(mv + 1 == m, || format!("{g6} at {s} (v = {v})"));
                }
            }
        }
    }
    Ok((has, deletion))
}

fn path_lemma(n_max: usize, m_max: u64) -> LemmaOutcome {
    let mut out = LemmaOutcome::new("path_multiplicity");
    let specs = all_lambda_specs(m_max);
    for n in 1..=n_max {
        let f = char_poly(&Tree::path(n));
        for s in &specs {
            let m = f.multiplicity_of(s.minimal_poly());
            let divides = (n as u64 + 1).is_multiple_of(s.denominator());
            out.check(m <= 1 && (m == 1) == divides, || format!("P_{n} at {s}: m = {m}"));
        }
    }
    out
}

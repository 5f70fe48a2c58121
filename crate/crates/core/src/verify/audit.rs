use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::poly::lambda_specs_up_to_degree;
use crate::spectrum::audit_against;
use crate::tree::enumerate_trees;

/// A non-Chebyshev factor of the characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub tree: String,
    pub p: usize,
    pub multiplicity: usize,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: usize,
    pub trees: usize,
    /// Non-Chebyshev eigenvalues with multiplicity at least `max(2, p - 2)`:
    /// high multiplicities that the family machinery cannot describe.
    pub flags: Vec<AuditEntry>,
    /// Simple non-Chebyshev eigenvalues on trees with `p = 3`, where
    /// `m = 1 = p - 2` holds outside the families' parameterization.
    pub scope_notes: Vec<AuditEntry>,
}

/// Audits every tree on at most `n_max` vertices against every Chebyshev
/// number whose minimal polynomial could divide its characteristic
/// polynomial, so that each residue is genuinely non-Chebyshev.
pub fn chebyshev_completeness_audit(n_max: usize) -> Result<AuditReport, VerifyError> {
    let specs = lambda_specs_up_to_degree(n_max);
    let mut report = AuditReport {
        n_max,
        trees: 0,
        flags: Vec::new(),
        scope_notes: Vec::new(),
    };
    for n in 1..=n_max {
        // Only the specs whose minimal polynomial fits in degree n matter.
        let fit: Vec<_> = specs
            .iter()
            .filter(|s| s.minimal_poly().degree().unwrap_or(0) <= n)
            .cloned()
            .collect();
        for t in enumerate_trees(n)? {
            report.trees += 1;
            let p = t.pendant_count();
            let profile = audit_against(&t, &fit);
            for level in profile.levels.iter().filter(|l| l.has_non_chebyshev()) {
                let entry = || AuditEntry {
                    tree: t.to_graph6(),
                    p,
                    multiplicity: level.multiplicity,
                    residue: level.residue.to_string(),
                };
                if level.multiplicity >= 2.max(p.saturating_sub(2)) {
                    report.flags.push(entry());
                } else if level.multiplicity == 1 && p == 3 {
                    report.scope_notes.push(entry());
                }
            }
        }
    }
    Ok(report)
}

use std::collections::HashSet;

use serde::Serialize;

use super::char_poly;
use crate::poly::{
    all_lambda_specs, lambda_specs_up_to_degree, squarefree_decompose, LambdaSpec, Polynomial,
};
use crate::tree::Tree;

/// One multiplicity level of the characteristic polynomial.
#[derive(Debug, Clone)]
pub struct SupportLevel {
    pub multiplicity: usize,
    /// Squarefree part whose roots all have exactly this multiplicity.
    pub part: Polynomial,
    /// Chebyshev eigenvalues among those roots.
    pub chebyshev: Vec<LambdaSpec>,
    /// `part` with every Chebyshev minimal polynomial divided out. Nonconstant
    /// means a non-Chebyshev eigenvalue of exactly this multiplicity.
    pub residue: Polynomial,
}

impl SupportLevel {
    pub fn has_non_chebyshev(&self) -> bool {
        !self.residue.is_constant()
    }
}

#[derive(Debug, Clone)]
pub struct EigenSupportProfile {
    pub char_poly: Polynomial,
    pub max_denominator: u64,
    pub levels: Vec<SupportLevel>,
}

impl EigenSupportProfile {
    pub fn level(&self, multiplicity: usize) -> Option<&SupportLevel> {
        self.levels.iter().find(|l| l.multiplicity == multiplicity)
    }

    /// `prod part^k`, which must equal the characteristic polynomial.
    pub fn reassemble(&self) -> Polynomial {
        self.levels.iter().fold(Polynomial::one(), |acc, l| {
            &acc * &l.part.pow(l.multiplicity as u32)
        })
    }
}

#[derive(Serialize)]
struct LevelJson {
    multiplicity: usize,
    part: String,
    chebyshev: Vec<String>,
    residue: String,
}

impl EigenSupportProfile {
    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<LevelJson> = self
            .levels
            .iter()
            .map(|l| LevelJson {
                multiplicity: l.multiplicity,
                part: l.part.to_string(),
                chebyshev: l.chebyshev.iter().map(ToString::to_string).collect(),
                residue: l.residue.to_string(),
            })
            .collect();
        serde_json::json!({
            "char_poly": self.char_poly.to_string(),
            "max_denominator": self.max_denominator,
            "levels": levels,
        })
    }
}

/// Squarefree-decomposes `char_poly(t)` and, at each multiplicity level,
/// separates the Chebyshev eigenvalues `2cos(i*pi/M)` with `M <= max_denominator`
/// from whatever remains. Every path eigenvalue inside `t` has `M <= n + 1`,
/// so `max_denominator` should be at least that.
pub fn eigen_support_audit(t: &Tree, max_denominator: u64) -> EigenSupportProfile {
    audit_against(t, &all_lambda_specs(max_denominator))
}

/// Like [`eigen_support_audit`], but against every Chebyshev number whose
/// minimal polynomial has degree at most `n`, so a nonconstant residue is a
/// genuinely non-Chebyshev eigenvalue. `n + 1` alone is not enough: `K_{1,3}`
/// has `sqrt(3) = 2cos(pi/6)`.
pub fn eigen_support_audit_complete(t: &Tree) -> EigenSupportProfile {
    audit_against(t, &lambda_specs_up_to_degree(t.n()))
}

/// Audit against an explicit spec list (ordered by `(M, i)`).
pub fn audit_against(t: &Tree, specs: &[LambdaSpec]) -> EigenSupportProfile {
    let f = char_poly(t);
    let max_denominator = specs.iter().map(LambdaSpec::denominator).max().unwrap_or(0);
    let parts = squarefree_decompose(&f).expect("characteristic polynomials are nonzero");
    let levels = parts
        .into_iter()
        .map(|(part, k)| {
            let mut residue = part.clone();
            let mut chebyshev = Vec::new();
            let mut removed: HashSet<&Polynomial> = HashSet::new();
            let part_degree = part.degree().unwrap_or(0);
            for s in specs {
                let mu = s.minimal_poly();
                if mu.degree().unwrap_or(0) > part_degree {
                    continue;
                }
                if removed.contains(mu) {
                    chebyshev.push(s.clone());
                    continue;
                }
                if let Ok(q) = residue.exact_div(mu) {
                    residue = q;
                    removed.insert(mu);
                    chebyshev.push(s.clone());
                }
            }
            SupportLevel {
                multiplicity: k,
                part,
                chebyshev,
                residue,
            }
        })
        .collect();
    EigenSupportProfile {
        char_poly: f,
        max_denominator,
        levels,
    }
}

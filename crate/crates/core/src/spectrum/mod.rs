//! Characteristic polynomials of trees and exact eigenvalue multiplicities.
//!
//! Two engines compute `m(T, lambda)` independently: repeated exact division
//! of the characteristic polynomial by the minimal polynomial of `lambda`, and
//! the nullity of `A - lambda I` over `Z[x]/(mu)`. The verification harness
//! requires them to agree on every input.

mod audit;
mod rank;

pub use audit::{
    audit_against, eigen_support_audit, eigen_support_audit_complete, EigenSupportProfile,
    SupportLevel,
};
pub use rank::multiplicity_via_rank;

use crate::poly::{LambdaSpec, Polynomial};
use crate::tree::{ForestDecomposition, Tree};

/// Characteristic polynomial `p` of a rooted subtree together with `q`, the
/// characteristic polynomial of that subtree with its root removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyPair {
    pub p: Polynomial,
    pub q: Polynomial,
}

impl CharPolyPair {
    fn leaf() -> Self {
        CharPolyPair {
            p: Polynomial::x(),
            q: Polynomial::one(),
        }
    }
}

/// `(p, q)` for every vertex when the tree hangs from `root`.
pub fn rooted_charpolys(t: &Tree, root: usize) -> Vec<CharPolyPair> {
    let (order, parent) = t.rooted_order(root);
    let mut pairs: Vec<Option<CharPolyPair>> = vec![None; t.n()];
    let x = Polynomial::x();
    for &v in order.iter().rev() {
        // prod = prod p_c, cross = sum_i q_i prod_{j != i} p_j
        let mut prod = Polynomial::one();
        let mut cross = Polynomial::zero();
        let mut leaf = true;
        for &c in t.neighbors(v).iter().filter(|&&c| c != parent[v]) {
            let child = pairs[c].as_ref().expect("children first");
            cross = &(&cross * &child.p) + &(&child.q * &prod);
            prod = &prod * &child.p;
            leaf = false;
        }
        pairs[v] = Some(if leaf {
            CharPolyPair::leaf()
        } else {
            CharPolyPair {
                p: &(&x * &prod) - &cross,
                q: prod,
            }
        });
    }
    pairs.into_iter().map(|p| p.expect("every vertex visited")).collect()
}

/// `det(xI - A(T))`, via the rooted recurrence from vertex 0.
pub fn char_poly(t: &Tree) -> Polynomial {
    char_poly_rooted(t, 0)
}

pub fn char_poly_rooted(t: &Tree, root: usize) -> Polynomial {
    rooted_charpolys(t, root).swap_remove(root).p
}

/// `m(T, lambda)`: the largest `k` with `mu^k | det(xI - A(T))`.
pub fn multiplicity(t: &Tree, lambda: &LambdaSpec) -> usize {
    char_poly(t).multiplicity_of(lambda.minimal_poly())
}

/// Multiplicity of `lambda` in the forest `T - v`: the sum over its components.
pub fn forest_multiplicity(forest: &ForestDecomposition, lambda: &LambdaSpec) -> usize {
    forest
        .components
        .iter()
        .map(|c| multiplicity(&c.tree, lambda))
        .sum()
}

/// `m(T - v, lambda)`.
pub fn multiplicity_without(t: &Tree, v: usize, lambda: &LambdaSpec) -> usize {
    let forest = t.delete_vertex(v).expect("vertex in range");
    forest_multiplicity(&forest, lambda)
}

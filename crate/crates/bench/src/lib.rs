//! Benchmark fixtures.

use treemult_core::poly::all_lambda_specs;
use treemult_core::tree::enumerate_trees;
use treemult_core::{LambdaSpec, Tree};

/// Every tree on `n` vertices.
pub fn trees(n: usize) -> Vec<Tree> {
    enumerate_trees(n).expect("n within cap").collect()
}

/// Every admissible eigenvalue with denominator at most `m_max`.
pub fn lambdas(m_max: u64) -> Vec<LambdaSpec> {
    all_lambda_specs(m_max)
}

/// A caterpillar with `spine` spine vertices and two legs per spine vertex.
pub fn caterpillar(spine: usize) -> Tree {
    let n = 3 * spine;
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..spine {
        edges.push((i - 1, i));
    }
    for i in 0..spine {
        edges.push((i, spine + 2 * i));
        edges.push((i, spine + 2 * i + 1));
    }
    Tree::from_edges(n, &edges).expect("caterpillar is a tree")
}

//! Exhaustive generation of non-isomorphic free trees.
//!
//! A free tree with a single centroid is generated rooted there: its branches
//! are rooted trees of size at most `(n-1)/2`, listed in non-increasing code
//! order. A bicentroidal tree (even `n`) is an unordered pair of rooted trees
//! of size `n/2` joined at their roots. Each class therefore appears once.

use super::{Tree, TreeError};

/// Largest `n` accepted by [`enumerate_trees`] (823,065 trees at `n = 20`).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Canonical codes of all rooted trees with `1..=max_size` vertices, in one
/// list sorted by code, descending.
fn rooted_trees(max_size: usize) -> Vec<Vec<u16>> {
    let mut all: Vec<Vec<u16>> = Vec::new();
    for size in 1..=max_size {
        let mut fresh = Vec::new();
        let mut children = Vec::new();
        extend_multisets(&all, 0, size - 1, usize::MAX, &mut children, &mut |kids| {
            fresh.push(join_under_root(kids));
        });
        all.extend(fresh);
        all.sort_unstable_by(|a, b| b.cmp(a));
    }
    all
}

fn join_under_root(kids: &[&Vec<u16>]) -> Vec<u16> {
    let mut code = vec![0u16];
    for kid in kids {
        code.extend(kid.iter().map(|d| d + 1));
    }
    code
}

/// Calls `emit` with every multiset drawn from `pool[start..]` (as a
/// non-decreasing index sequence) whose sizes sum to `remaining`, each part
/// of size at most `max_part`.
fn extend_multisets<'a>(
    pool: &'a [Vec<u16>],
    start: usize,
    remaining: usize,
    max_part: usize,
    chosen: &mut Vec<&'a Vec<u16>>,
    emit: &mut dyn FnMut(&[&'a Vec<u16>]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for idx in start..pool.len() {
        let size = pool[idx].len();
        if size > remaining || size > max_part {
            continue;
        }
        chosen.push(&pool[idx]);
        extend_multisets(pool, idx, remaining - size, max_part, chosen, emit);
        chosen.pop();
    }
}

/// Canonical codes of every free tree on `n` vertices, ascending.
pub(crate) fn free_tree_codes(n: usize) -> Vec<Vec<u16>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let half = (n - 1) / 2;
    let pool = rooted_trees(n / 2);
    let mut codes = Vec::new();
    let mut chosen = Vec::new();
    extend_multisets(&pool, 0, n - 1, half, &mut chosen, &mut |kids| {
        codes.push(join_under_root(kids));
    });
    if n.is_multiple_of(2) {
        let halves: Vec<&Vec<u16>> = pool.iter().filter(|c| c.len() == n / 2).collect();
        for (i, a) in halves.iter().enumerate() {
            for b in &halves[i..] {
                let mut seq: Vec<u16> = a.to_vec();
                seq.extend(b.iter().map(|d| d + 1));
                codes.push(Tree::from_level_sequence(&seq).canonical_code());
            }
        }
    }
    codes.sort_unstable();
    codes
}

/// Streams one canonically labeled representative per isomorphism class of
/// trees on `n` vertices, in ascending canonical-code order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Tree>, TreeError> {
    enumerate_trees_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_with_cap(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = Tree>, TreeError> {
    if n > cap {
        return Err(TreeError::LimitExceeded { n, max: cap });
    }
    if n == 0 {
        return Err(TreeError::NotATree("a tree needs at least one vertex".into()));
    }
    Ok(free_tree_codes(n)
        .into_iter()
        .map(|code| Tree::from_level_sequence(&code)))
}

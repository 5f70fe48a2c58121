//! Bottom-up construction of family members straight from the definitions.

use std::collections::BTreeMap;

use super::{FamilyKind, Gamma2Mode};
use crate::poly::LambdaSpec;
use crate::spectrum::multiplicity;
use crate::tree::{Tree, TreeError, DEFAULT_ENUMERATION_CAP};

/// Every member of `Gamma_k(lambda)` or `Gamma2_k(lambda)` with at most `n_max`
/// vertices, one per isomorphism class, in canonical labeling, ordered by
/// `(n, canonical code)`.
pub fn generate(
    family: FamilyKind,
    k: usize,
    lambda: &LambdaSpec,
    n_max: usize,
    mode: Gamma2Mode,
) -> Result<Vec<Tree>, TreeError> {
    generate_with_cap(family, k, lambda, n_max, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn generate_with_cap(
    family: FamilyKind,
    k: usize,
    lambda: &LambdaSpec,
    n_max: usize,
    mode: Gamma2Mode,
    cap: usize,
) -> Result<Vec<Tree>, TreeError> {
    if n_max > cap {
        return Err(TreeError::LimitExceeded { n: n_max, max: cap });
    }
    let g = Builder::new(lambda, mode, n_max);
    let mut gamma = vec![g.gamma0()];
    for j in 1..=k {
        let next = g.gamma_next(j, &gamma[j - 1]);
        gamma.push(next);
    }
    let members = match family {
        FamilyKind::Gamma => gamma.swap_remove(k),
        FamilyKind::Gamma2 => {
            let mut gamma2 = g.gamma2_0();
            for j in 1..=k {
                gamma2 = g.gamma2_next(j, &gamma2, &gamma[..j]);
            }
            gamma2
        }
    };
    let mut out: Vec<(usize, Vec<u16>, Tree)> = members
        .into_iter()
        .map(|(code, t)| (t.n(), code, t))
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, t)| t).collect())
}

type Level = BTreeMap<Vec<u16>, Tree>;

struct Builder {
    n_max: usize,
    gamma0_lengths: Vec<usize>,
    gamma2_0_lengths: Vec<usize>,
    lambda: LambdaSpec,
    mode: Gamma2Mode,
}

impl Builder {
    fn new(lambda: &LambdaSpec, mode: Gamma2Mode, n_max: usize) -> Self {
        let m = lambda.denominator() as usize;
        let gamma0_lengths = (1..=n_max).filter(|n| (n + 1) % m == 0).collect();
        let gamma2_0_lengths = (1..=n_max)
            .filter(|n| match mode {
                Gamma2Mode::Strict => (n + 2) % m == 0,
                Gamma2Mode::Broad | Gamma2Mode::Corrected => (n + 1) % m != 0,
            })
            .collect();
        Builder {
            n_max,
            gamma0_lengths,
            gamma2_0_lengths,
            lambda: lambda.clone(),
            mode,
        }
    }

    fn paths(lengths: &[usize]) -> Level {
        let mut level = Level::new();
        for &n in lengths {
            insert(&mut level, Tree::path(n));
        }
        level
    }

    fn gamma0(&self) -> Level {
        Self::paths(&self.gamma0_lengths)
    }

    fn gamma2_0(&self) -> Level {
        Self::paths(&self.gamma2_0_lengths)
    }

    fn gamma_next(&self, j: usize, prev: &Level) -> Level {
        let mut level = Level::new();
        if j == 1 {
            for legs in multisets(&self.gamma0_lengths, 3, usize::MAX, self.n_max - 1) {
                insert(&mut level, join(None, &legs));
            }
            return level;
        }
        for t1 in prev.values() {
            self.hang_pendant(t1, 2, &[], &mut level);
        }
        level
    }

    /// `lower` holds `Gamma_0 .. Gamma_{j-1}`.
    fn gamma2_next(&self, j: usize, prev2: &Level, lower: &[Level]) -> Level {
        let prev = &lower[j - 1];
        let mut level = Level::new();
        if j == 1 {
            // (1) three Gamma2_0 paths.
            for legs in multisets(&self.gamma2_0_lengths, 3, 3, self.n_max - 1) {
                let t = join(None, &legs);
                if self.mode != Gamma2Mode::Corrected || multiplicity(&t, &self.lambda) > 0 {
                    insert(&mut level, t);
                }
            }
            // (2) one Gamma2_0 path and at least two Gamma_0 paths.
            for &a in &self.gamma2_0_lengths {
                let Some(budget) = self.n_max.checked_sub(1 + a) else { continue };
                for mut legs in multisets(&self.gamma0_lengths, 2, usize::MAX, budget) {
                    legs.push(a);
                    insert(&mut level, join(None, &legs));
                }
            }
            return level;
        }
        // (1) a Gamma2_{j-1} member hung by a pendant vertex.
        for t1 in prev2.values() {
            self.hang_pendant(t1, 2, &[], &mut level);
        }
        // (2) a Gamma_{j-1} member hung by a non-pendant vertex; the new tree
        // must still have exactly j major vertices. The corrected reading also
        // takes Gamma_{j-2} members hung by a degree-2 vertex.
        let inner_sources = match self.mode {
            Gamma2Mode::Corrected => &lower[j.saturating_sub(2)..j],
            _ => &lower[j - 1..j],
        };
        for t1 in inner_sources.iter().flat_map(Level::values) {
            for v in (0..t1.n()).filter(|&v| !t1.is_pendant(v)) {
                let Some(budget) = self.n_max.checked_sub(1 + t1.n()) else { continue };
                for legs in multisets(&self.gamma0_lengths, 2, usize::MAX, budget) {
                    let t = join(Some((t1, v)), &legs);
                    if t.major_count() == j {
                        insert(&mut level, t);
                    }
                }
            }
        }
        for t1 in prev.values() {
            // (3) a Gamma_{j-1} member, one Gamma2_0 path, at least one Gamma_0 path.
            for &a in &self.gamma2_0_lengths {
                self.hang_pendant(t1, 1, &[a], &mut level);
            }
        }
        level
    }

    /// Joins `t1` at each of its pendant vertices to a new vertex carrying
    /// `extra` paths plus at least `min_legs` `Gamma_0` paths.
    fn hang_pendant(&self, t1: &Tree, min_legs: usize, extra: &[usize], level: &mut Level) {
        let used = 1 + t1.n() + extra.iter().sum::<usize>();
        let Some(budget) = self.n_max.checked_sub(used) else { return };
        let legsets = multisets(&self.gamma0_lengths, min_legs, usize::MAX, budget);
        if legsets.is_empty() {
            return;
        }
        for v in t1.pendant_vertices() {
            for legs in &legsets {
                let mut all = legs.clone();
                all.extend_from_slice(extra);
                insert(level, join(Some((t1, v)), &all));
            }
        }
    }
}

fn insert(level: &mut Level, t: Tree) {
    let form = t.canonical_form();
    level.entry(form.code).or_insert_with(|| t.relabel(&form.order));
}

/// Non-decreasing sequences from `lengths` with between `min_count` and
/// `max_count` entries and sum at most `budget`.
fn multisets(lengths: &[usize], min_count: usize, max_count: usize, budget: usize) -> Vec<Vec<usize>> {
    fn extend(
        lengths: &[usize],
        from: usize,
        min_count: usize,
        max_count: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() >= min_count {
            out.push(cur.clone());
        }
        if cur.len() == max_count {
            return;
        }
        for (idx, &len) in lengths.iter().enumerate().skip(from) {
            if len > budget {
                break;
            }
            cur.push(len);
            extend(lengths, idx, min_count, max_count, budget - len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(lengths, 0, min_count, max_count, budget, &mut Vec::new(), &mut out);
    out
}

/// New vertex 0 adjacent to `core` at the given vertex and to one endpoint of
/// a fresh path for each entry of `legs`.
fn join(core: Option<(&Tree, usize)>, legs: &[usize]) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1;
    if let Some((t, v)) = core {
        edges.extend(t.edges().map(|(a, b)| (a + 1, b + 1)));
        edges.push((0, v + 1));
        next += t.n();
    }
    for &len in legs {
        edges.push((0, next));
        for k in 1..len {
            edges.push((next + k - 1, next + k));
        }
        next += len;
    }
    Tree::from_edges(next, &edges).expect("joining trees at a new vertex gives a tree")
}

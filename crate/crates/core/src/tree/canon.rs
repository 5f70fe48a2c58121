//! Centroid-rooted canonical level sequences.
//!
//! A rooted tree's canonical level sequence is the preorder depth sequence
//! obtained when every vertex lists its child subtrees in lexicographically
//! non-increasing order of their own sequences. A free tree is rooted at its
//! centroid; with two centroids, the smaller of the two rooted sequences wins.

use super::Tree;

/// Canonical code plus the labeling that realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Preorder depths; equal codes iff isomorphic trees.
    pub code: Vec<u16>,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

/// The one or two vertices minimizing the largest component of `T - v`.
pub fn centroids(t: &Tree) -> Vec<usize> {
    let n = t.n();
    let (order, parent) = t.rooted_order(0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let heaviest: Vec<usize> = (0..n)
        .map(|v| {
            t.neighbors(v)
                .iter()
                .map(|&w| if w == parent[v] { n - size[v] } else { size[w] })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let best = heaviest.iter().copied().min().unwrap_or(0);
    (0..n).filter(|&v| heaviest[v] == best).collect()
}

fn rooted_canonical(t: &Tree, root: usize) -> CanonicalForm {
    let (order, parent) = t.rooted_order(root);
    let mut forms: Vec<Option<CanonicalForm>> = vec![None; t.n()];
    for &v in order.iter().rev() {
        let mut kids: Vec<CanonicalForm> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent[v])
            .map(|&w| forms[w].take().expect("children are finished first"))
            .collect();
        kids.sort_by(|a, b| b.code.cmp(&a.code));
        let size = 1 + kids.iter().map(|k| k.code.len()).sum::<usize>();
        let mut code = Vec::with_capacity(size);
        let mut verts = Vec::with_capacity(size);
        code.push(0);
        verts.push(v);
        for kid in kids {
            code.extend(kid.code.iter().map(|d| d + 1));
            verts.extend(kid.order);
        }
        forms[v] = Some(CanonicalForm { code, order: verts });
    }
    forms[root].take().expect("root finished")
}

impl Tree {
    pub fn canonical_form(&self) -> CanonicalForm {
        centroids(self)
            .into_iter()
            .map(|c| rooted_canonical(self, c))
            .min_by(|a, b| a.code.cmp(&b.code))
            .expect("trees have a centroid")
    }

    pub fn canonical_code(&self) -> Vec<u16> {
        self.canonical_form().code
    }

    /// The isomorphic tree in canonical labeling: vertex 0 is a centroid and
    /// vertices are numbered in canonical preorder.
    pub fn canonical_tree(&self) -> Tree {
        self.relabel(&self.canonical_form().order)
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n() == other.n() && self.canonical_code() == other.canonical_code()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroid_of_paths_and_stars() {
        assert_eq!(centroids(&Tree::path(5)), vec![2]);
        assert_eq!(centroids(&Tree::path(4)), vec![1, 2]);
        assert_eq!(centroids(&Tree::star(5)), vec![0]);
        assert_eq!(centroids(&Tree::single()), vec![0]);
    }

    #[test]
    fn path_code() {
        assert_eq!(Tree::path(5).canonical_code(), vec![0, 1, 2, 1, 2]);
        assert_eq!(Tree::path(4).canonical_code(), vec![0, 1, 2, 1]);
    }

    #[test]
    fn relabelings_share_code() {
        let a = Tree::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let b = Tree::from_edges(6, &[(5, 4), (4, 3), (4, 2), (2, 1), (1, 0)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert_eq!(a.canonical_tree(), b.canonical_tree());
        assert!(a.is_isomorphic(&Tree::spider(&[1, 1, 3])));
        assert!(!a.is_isomorphic(&Tree::spider(&[1, 2, 2])));
    }

    #[test]
    fn canonical_tree_matches_level_sequence() {
        let t = Tree::spider(&[3, 1, 2, 2]);
        let form = t.canonical_form();
        assert_eq!(t.canonical_tree(), Tree::from_level_sequence(&form.code));
        assert_eq!(t.canonical_tree().canonical_code(), form.code);
    }
}

//! Trees, their structural queries, and the canonical machinery used to
//! deduplicate them.

mod canon;
mod enumerate;
mod graph6;

pub use canon::{centroids, CanonicalForm};
pub use enumerate::{enumerate_trees, enumerate_trees_with_cap, DEFAULT_ENUMERATION_CAP};
pub use graph6::{encode_graph6, parse_graph6_graph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("tree size {n} exceeds the configured maximum {max}")]
    LimitExceeded { n: usize, max: usize },
    #[error("malformed edge list: {0}")]
    EdgeList(String),
}

/// A tree on vertices `0..n` with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// JSON edge-list form: `{"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Tree {
    /// Validates that the edges form a tree on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::NotATree("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges on {n} vertices (need {})",
                edges.len(),
                n - 1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(TreeError::NotATree("repeated edge".into()));
            }
        }
        let tree = Tree { adj };
        if tree.bfs_order(0).len() != n {
            return Err(TreeError::NotATree("disconnected (contains a cycle)".into()));
        }
        Ok(tree)
    }

    pub fn from_edge_list(list: &EdgeList) -> Result<Tree, TreeError> {
        let edges: Vec<_> = list.edges.iter().map(|&[u, v]| (u, v)).collect();
        Tree::from_edges(list.n, &edges)
    }

    /// Parses inline `u-v,u-v,...` with 0-based ids. The vertex count is one
    /// more than the edge count; an empty string is the single vertex.
    pub fn from_inline_edges(s: &str) -> Result<Tree, TreeError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Tree::single());
        }
        let mut edges = Vec::new();
        for part in s.split(',') {
            let (u, v) = part
                .split_once('-')
                .ok_or_else(|| TreeError::EdgeList(format!("expected u-v, got {part:?}")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| TreeError::EdgeList(format!("bad vertex id {x:?}")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        Tree::from_edges(edges.len() + 1, &edges)
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn single() -> Tree {
        Tree { adj: vec![Vec::new()] }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1, "path needs at least one vertex");
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges).expect("paths are trees")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Tree {
        Tree::spider(&vec![1; leaves])
    }

    /// Center 0 with pendant paths of the given lengths.
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::from_edges(next, &edges).expect("spiders are trees")
    }

    /// Rebuilds a rooted tree from its preorder depth sequence; vertex `i` is
    /// the `i`-th entry.
    pub fn from_level_sequence(levels: &[u16]) -> Tree {
        assert!(!levels.is_empty() && levels[0] == 0, "level sequence must start at the root");
        let mut adj = vec![Vec::new(); levels.len()];
        let mut stack: Vec<usize> = vec![0];
        for (v, &lv) in levels.iter().enumerate().skip(1) {
            stack.truncate(lv as usize);
            let parent = *stack.last().expect("depth jumps by at most one");
            adj[parent].push(v);
            adj[v].push(parent);
            stack.push(v);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Tree { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// A single vertex counts as pendant.
    pub fn is_pendant(&self, v: usize) -> bool {
        self.n() == 1 || self.degree(v) == 1
    }

    pub fn pendant_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.is_pendant(v))
    }

    /// `p(T)`: number of degree-1 vertices, and 2 for the single vertex.
    pub fn pendant_count(&self) -> usize {
        if self.n() == 1 {
            2
        } else {
            self.pendant_vertices().count()
        }
    }

    pub fn major_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.degree(v) >= 3)
    }

    /// `gamma(T)`: number of vertices of degree at least 3.
    pub fn major_count(&self) -> usize {
        self.major_vertices().count()
    }

    pub fn is_path(&self) -> bool {
        self.adj.iter().all(|nbrs| nbrs.len() <= 2)
    }

    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// `(order, parent)` for a traversal from `root` where every vertex
    /// precedes its descendants. `parent[root] == usize::MAX`.
    pub fn rooted_order(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![usize::MAX; self.n()];
        for &v in &order {
            for &w in &self.adj[v] {
                if w != parent[v] {
                    parent[w] = v;
                }
            }
        }
        (order, parent)
    }

    /// Subgraph induced on `keep` (which must be connected), with vertices
    /// renumbered in the order given.
    fn induced(&self, keep: &[usize]) -> Tree {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        Tree { adj }
    }

    /// Components of `T - v`, one per neighbor of `v` in ascending order.
    pub fn delete_vertex(&self, v: usize) -> Result<ForestDecomposition, TreeError> {
        if v >= self.n() {
            return Err(TreeError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let mut components = Vec::with_capacity(self.degree(v));
        for &u in &self.adj[v] {
            let mut seen = vec![false; self.n()];
            seen[v] = true;
            seen[u] = true;
            let mut verts = vec![u];
            let mut head = 0;
            while head < verts.len() {
                let x = verts[head];
                head += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        verts.push(y);
                    }
                }
            }
            verts.sort_unstable();
            let tree = self.induced(&verts);
            let attach = verts.binary_search(&u).expect("attach vertex is in its component");
            components.push(Component {
                tree,
                attach,
                vertex_map: verts,
            });
        }
        Ok(ForestDecomposition {
            removed_vertex: v,
            components,
        })
    }

    /// Deletes a pendant vertex; the result is still a tree. Requires `n >= 2`.
    pub fn delete_pendant(&self, v: usize) -> Tree {
        assert!(self.n() >= 2 && self.degree(v) == 1, "vertex {v} is not a deletable leaf");
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    /// The same tree relabeled so that old vertex `order[i]` becomes `i`.
    pub fn relabel(&self, order: &[usize]) -> Tree {
        debug_assert_eq!(order.len(), self.n());
        self.induced(order)
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tree(n={}, edges=[", self.n())?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// A connected component of `T - v`.
#[derive(Debug, Clone)]
pub struct Component {
    pub tree: Tree,
    /// Component-local id of the unique neighbor of the removed vertex.
    pub attach: usize,
    /// `vertex_map[local] = id in the parent tree`.
    pub vertex_map: Vec<usize>,
}

impl Component {
    pub fn attach_in_parent(&self) -> usize {
        self.vertex_map[self.attach]
    }

    pub fn attach_is_pendant(&self) -> bool {
        self.tree.is_pendant(self.attach)
    }
}

#[derive(Debug, Clone)]
pub struct ForestDecomposition {
    pub removed_vertex: usize,
    pub components: Vec<Component>,
}

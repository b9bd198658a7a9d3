//! Tree data model, edge-list I/O, vertex classification and rooting.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("vertex id {id} out of range for n = {n}")]
    IdOutOfRange { id: usize, n: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid clean path: {0}")]
    InvalidPath(String),
}

/// An undirected simple tree on vertices `0..n`.
///
/// Construction validates the edge count, loops, duplicates and
/// connectivity, so every `Tree` value is a tree.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::NotATree("a tree needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(TreeError::IdOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            list.push(e);
            adj[u].push(v);
            adj[v].push(u);
        }
        if list.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "expected {} edges for n = {n}, found {}",
                n - 1,
                list.len()
            )));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::NotATree(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let tree = Tree { edges: list, adj };
        let reached = tree.bfs_order(0).len();
        if reached != n {
            return Err(TreeError::NotATree(format!(
                "disconnected: only {reached} of {n} vertices reachable from 0"
            )));
        }
        Ok(tree)
    }

    /// Parses the edge-list text format: `#` comment lines, a vertex count,
    /// then `n - 1` lines `u v`.
    pub fn parse(text: &str) -> Result<Tree, TreeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, first) = lines.next().ok_or_else(|| TreeError::Syntax {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| TreeError::Syntax {
            line,
            message: format!("expected vertex count, found `{first}`"),
        })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(TreeError::Syntax {
                    line,
                    message: format!("expected `u v`, found `{l}`"),
                });
            }
            let parse_id = |s: &str| {
                s.parse::<usize>().map_err(|_| TreeError::Syntax {
                    line,
                    message: format!("bad vertex id `{s}`"),
                })
            };
            edges.push((parse_id(parts[0])?, parse_id(parts[1])?));
        }
        Tree::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0);
        let mut hist = vec![0; max + 1];
        for v in 0..self.n() {
            hist[self.degree(v)] += 1;
        }
        hist
    }

    /// All pairs `(u, v)`, `u < v`, of adjacent degree-2 vertices.
    pub fn adjacent_degree_two_pairs(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| self.degree(u) == 2 && self.degree(v) == 2)
            .collect()
    }

    /// True when no two degree-2 vertices are adjacent.
    pub fn is_reduced(&self) -> bool {
        self.adjacent_degree_two_pairs().is_empty()
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    Leaf,
    Penultimate,
    Deep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<VertexClass>,
    pub penultimate_count: usize,
}

impl Classification {
    pub fn of(&self, v: usize) -> VertexClass {
        self.classes[v]
    }

    pub fn vertices(&self, class: VertexClass) -> impl Iterator<Item = usize> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == class)
            .map(|(v, _)| v)
    }
}

/// Leaves have degree one; penultimates are non-leaves adjacent to a leaf;
/// everything else is deep. Both vertices of `P_2` are leaves.
pub fn classify(t: &Tree) -> Classification {
    let classes: Vec<VertexClass> = (0..t.n())
        .map(|v| {
            if t.is_leaf(v) {
                VertexClass::Leaf
            } else if t.neighbors(v).iter().any(|&w| t.is_leaf(w)) {
                VertexClass::Penultimate
            } else {
                VertexClass::Deep
            }
        })
        .collect();
    let penultimate_count = classes.iter().filter(|c| **c == VertexClass::Penultimate).count();
    Classification {
        classes,
        penultimate_count,
    }
}

pub fn penultimate_count(t: &Tree) -> usize {
    classify(t).penultimate_count
}

/// Minimum degree over deep vertices, `None` when there are none.
pub fn min_deep_degree(t: &Tree) -> Option<usize> {
    classify(t).vertices(VertexClass::Deep).map(|v| t.degree(v)).min()
}

/// A tree with a chosen root, parent links, ordered children and a
/// bottom-up processing order (every vertex after all of its descendants).
#[derive(Clone, Debug)]
pub struct RootedTree<'a> {
    tree: &'a Tree,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl<'a> RootedTree<'a> {
    pub fn new(tree: &'a Tree, root: usize) -> RootedTree<'a> {
        assert!(root < tree.n(), "root {root} out of range");
        let bfs = tree.bfs_order(root);
        let mut parent = vec![None; tree.n()];
        let mut children = vec![Vec::new(); tree.n()];
        let mut placed = vec![false; tree.n()];
        for &v in &bfs {
            placed[v] = true;
            for &w in tree.neighbors(v) {
                if !placed[w] {
                    parent[w] = Some(v);
                    children[v].push(w);
                }
            }
        }
        let order = bfs.into_iter().rev().collect();
        RootedTree {
            tree,
            root,
            parent,
            children,
            order,
        }
    }

    pub fn tree(&self) -> &'a Tree {
        self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children of `v` in ascending id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Reverse BFS order: deepest level first, root last.
    pub fn bottom_up(&self) -> &[usize] {
        &self.order
    }
}

pub fn root_at(t: &Tree, r: usize) -> RootedTree<'_> {
    RootedTree::new(t, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> Tree {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn parse_single_edge_and_path() {
        let t = Tree::parse("2\n0 1").unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.edges(), &[(0, 1)]);
        let p3 = Tree::parse("# a path\n3\n0 1\n\n1 2\n").unwrap();
        assert_eq!(p3, path(3));
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(Tree::parse("4\n0 1\n0 2\n3 3"), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::parse("3\n0 1\n1 5"), Err(TreeError::IdOutOfRange { id: 5, n: 3 })));
        assert!(matches!(Tree::parse("3\n0 1\n1"), Err(TreeError::Syntax { line: 3, .. })));
        assert!(matches!(Tree::parse("x\n"), Err(TreeError::Syntax { line: 1, .. })));
        assert!(matches!(Tree::parse(""), Err(TreeError::Syntax { .. })));
        // wrong edge count, cycle plus isolated vertex, duplicate
        assert!(matches!(Tree::parse("3\n0 1"), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::parse("4\n0 1\n1 2\n2 0"), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::parse("3\n0 1\n1 0"), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::parse("0\n"), Err(TreeError::NotATree(_))));
    }

    #[test]
    fn single_vertex_is_a_tree() {
        let t = Tree::parse("1\n").unwrap();
        assert_eq!(t.n(), 1);
        assert!(t.edges().is_empty());
    }

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::new(5, [(3, 1), (0, 1), (1, 2), (4, 2)]).unwrap();
        assert_eq!(Tree::parse(&t.to_edge_list()).unwrap(), t);
    }

    #[test]
    fn classify_star_and_p2() {
        let c = classify(&star(5));
        assert_eq!(c.of(0), VertexClass::Penultimate);
        assert_eq!(c.vertices(VertexClass::Leaf).count(), 5);
        assert_eq!(c.penultimate_count, 1);

        let c = classify(&path(2));
        assert_eq!(c.classes, vec![VertexClass::Leaf, VertexClass::Leaf]);
        assert_eq!(c.penultimate_count, 0);
    }

    #[test]
    fn classify_single_vertex_is_deep() {
        let c = classify(&path(1));
        assert_eq!(c.classes, vec![VertexClass::Deep]);
        assert_eq!(min_deep_degree(&path(1)), Some(0));
    }

    #[test]
    fn min_deep_degree_examples() {
        assert_eq!(min_deep_degree(&star(5)), None);
        // spider with three legs of length two
        let spider = Tree::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(min_deep_degree(&spider), Some(3));
    }

    #[test]
    fn rooting_p3() {
        let t = path(3);
        let end = root_at(&t, 0);
        assert_eq!(end.parent(1), Some(0));
        assert_eq!(end.parent(2), Some(1));
        assert_eq!(end.children(0), &[1]);
        assert_eq!(end.bottom_up(), &[2, 1, 0]);

        let mid = root_at(&t, 1);
        assert_eq!(mid.children(1), &[0, 2]);
        assert_eq!(mid.parent(1), None);
        assert_eq!(*mid.bottom_up().last().unwrap(), 1);
    }

    #[test]
    fn reduced_detection() {
        assert!(!path(4).is_reduced());
        assert!(path(3).is_reduced());
        assert_eq!(path(5).adjacent_degree_two_pairs(), vec![(1, 2), (2, 3)]);
        assert!(star(4).is_reduced());
    }

    #[test]
    fn histogram() {
        assert_eq!(star(3).degree_histogram(), vec![0, 3, 0, 1]);
    }
}

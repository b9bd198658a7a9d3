//! Contraction of clean paths of length three.
//!
//! A clean path `a - b - c - d` has `deg(b) = deg(c) = 2`. Contracting it
//! replaces the four vertices with one vertex adjacent to the remaining
//! neighbors of `a` and `d`. Repeating until no such path exists yields a
//! tree with no two adjacent degree-2 vertices.

use crate::tree::{Tree, TreeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CleanPath3 {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl CleanPath3 {
    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn validate(&self, t: &Tree) -> Result<(), TreeError> {
        let vs = self.vertices();
        if let Some(&v) = vs.iter().find(|&&v| v >= t.n()) {
            return Err(TreeError::IdOutOfRange { id: v, n: t.n() });
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i] == vs[j] {
                    return Err(TreeError::InvalidPath(format!("vertex {} repeated", vs[i])));
                }
            }
        }
        for w in vs.windows(2) {
            if !t.has_edge(w[0], w[1]) {
                return Err(TreeError::InvalidPath(format!("no edge {} {}", w[0], w[1])));
            }
        }
        for v in [self.b, self.c] {
            if t.degree(v) != 2 {
                return Err(TreeError::InvalidPath(format!(
                    "internal vertex {v} has degree {}",
                    t.degree(v)
                )));
            }
        }
        Ok(())
    }
}

/// Smallest adjacent degree-2 pair `(b, c)` with `b < c`, extended by the
/// other neighbor of `b` and the other neighbor of `c`.
pub fn find_clean_path3(t: &Tree) -> Option<CleanPath3> {
    let &(b, c) = t.adjacent_degree_two_pairs().first()?;
    let other = |v: usize, not: usize| t.neighbors(v).iter().copied().find(|&w| w != not);
    Some(CleanPath3 {
        a: other(b, c)?,
        b,
        c,
        d: other(c, b)?,
    })
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub tree: Tree,
    /// `mapping[old]` is the new id; the four path vertices all map to the
    /// contracted vertex.
    pub mapping: Vec<usize>,
    pub contracted: usize,
}

/// Contracts `p` into one vertex. The new vertex takes the smallest of the
/// four freed ids; the surviving ids are then compacted preserving order.
pub fn contract_clean_path3(t: &Tree, p: CleanPath3) -> Result<Contraction, TreeError> {
    p.validate(t)?;
    let merged = p.vertices();
    let keep_id = *merged.iter().min().unwrap();
    let mut mapping = vec![usize::MAX; t.n()];
    let mut next = 0;
    for (v, slot) in mapping.iter_mut().enumerate() {
        if v == keep_id || !merged.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    let contracted = mapping[keep_id];
    for v in merged {
        mapping[v] = contracted;
    }
    let edges = t.edges().iter().filter_map(|&(u, v)| {
        let (mu, mv) = (mapping[u], mapping[v]);
        (mu != mv).then_some((mu, mv))
    });
    let tree = Tree::new(next, edges.collect::<Vec<_>>())?;
    Ok(Contraction {
        tree,
        mapping,
        contracted,
    })
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// `stages[0]` is the input; each later stage is one contraction away.
    pub stages: Vec<Tree>,
    pub paths: Vec<CleanPath3>,
}

impl ReductionTrace {
    pub fn steps(&self) -> usize {
        self.paths.len()
    }

    pub fn result(&self) -> &Tree {
        self.stages.last().expect("trace always holds the input")
    }
}

pub fn reduction_trace(t: &Tree) -> ReductionTrace {
    let mut stages = vec![t.clone()];
    let mut paths = Vec::new();
    while let Some(p) = find_clean_path3(stages.last().unwrap()) {
        let next = contract_clean_path3(stages.last().unwrap(), p)
            .expect("found paths are valid")
            .tree;
        paths.push(p);
        stages.push(next);
    }
    ReductionTrace { stages, paths }
}

/// Contracts clean length-3 paths until none remain. Returns the reduced
/// tree and the number of contractions.
pub fn reduce_clean_paths(t: &Tree) -> (Tree, usize) {
    let mut current = t.clone();
    let mut steps = 0;
    while let Some(p) = find_clean_path3(&current) {
        current = contract_clean_path3(&current, p).expect("found paths are valid").tree;
        steps += 1;
    }
    (current, steps)
}

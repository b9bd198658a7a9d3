//! Tree families and seeded random samplers.
//!
//! Random trees come from a ChaCha8 stream seeded with a `u64`
//! (`ChaCha8Rng::seed_from_u64`), so a `(family, parameters, seed)` triple
//! always produces the same tree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::contract::reduce_clean_paths;
use crate::tree::{classify, Tree, VertexClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad parameter for {family}: {message}")]
pub struct BadParameter {
    pub family: &'static str,
    pub message: String,
}

fn bad(family: &'static str, message: impl Into<String>) -> BadParameter {
    BadParameter {
        family,
        message: message.into(),
    }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Tree {
    Tree::new(n, edges).expect("generator produced a tree")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path(n: usize) -> Result<Tree, BadParameter> {
    if n == 0 {
        return Err(bad("path", "n must be positive"));
    }
    Ok(build(n, (1..n).map(|i| (i - 1, i)).collect()))
}

/// Centre 0 with `leaves` leaves.
pub fn star(leaves: usize) -> Result<Tree, BadParameter> {
    if leaves == 0 {
        return Err(bad("star", "need at least one leaf"));
    }
    Ok(build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()))
}

/// Centre 0 with one path per entry of `legs`, each of that many edges.
pub fn spider(legs: &[usize]) -> Result<Tree, BadParameter> {
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
    Ok(build(next, edges))
}

/// The 11-vertex tree with two levels of branching: root 0, children 1 and
/// 2, penultimates 3, 4 (under 1) and 5, 6 (under 2), leaves 7..=10 on 3..=6.
pub fn two_level() -> Tree {
    build(
        11,
        vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (4, 8), (5, 9), (6, 10)],
    )
}

/// Ids inside one hanging subtree of [`tight43`], relative to its base.
pub mod tight43_layout {
    pub const U: usize = 0;
    pub const A: usize = 1;
    pub const B: usize = 2;
    pub const PEN_U: usize = 3;
    pub const LEAF_U: usize = 4;
    pub const PEN_B1: usize = 5;
    pub const LEAF_B1: usize = 6;
    pub const PEN_B2: usize = 7;
    pub const LEAF_B2: usize = 8;
    pub const SIZE: usize = 9;

    /// Base id of copy `i` (the root is vertex 0).
    pub fn base(i: usize) -> usize {
        1 + SIZE * i
    }
}

/// Root 0 with `k` copies of the nine-vertex subtree: `u` on the root, `u`
/// carries a penultimate-leaf pair and a degree-2 vertex `a`, whose child
/// `b` carries two penultimate-leaf pairs. `n = 9k + 1`.
pub fn tight43(k: usize) -> Result<Tree, BadParameter> {
    use tight43_layout::*;
    if k < 2 {
        return Err(bad("tight43", format!("k must be at least 2, got {k}")));
    }
    let mut edges = Vec::with_capacity(SIZE * k);
    for i in 0..k {
        let o = base(i);
        edges.extend([
            (0, o + U),
            (o + U, o + A),
            (o + U, o + PEN_U),
            (o + PEN_U, o + LEAF_U),
            (o + A, o + B),
            (o + B, o + PEN_B1),
            (o + PEN_B1, o + LEAF_B1),
            (o + B, o + PEN_B2),
            (o + PEN_B2, o + LEAF_B2),
        ]);
    }
    Ok(build(SIZE * k + 1, edges))
}

/// Path `v_1 .. v_{3n}` (ids `0 .. 3n-1`) with an extra leaf on every
/// `v_{3i-1}`, `2 <= i <= n`; the leaf of `v_{3i-1}` has id `3n + i - 2`.
pub fn caterpillar(n: usize) -> Result<Tree, BadParameter> {
    if n < 2 {
        return Err(bad("caterpillar", format!("n must be at least 2, got {n}")));
    }
    let spine = 3 * n;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    for i in 2..=n {
        edges.push((3 * i - 2, spine + i - 2));
    }
    Ok(build(spine + n - 1, edges))
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
pub fn from_prufer(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        assert!(s < n, "Prüfer entry {s} out of range");
        degree[s] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let std::cmp::Reverse(leaf) = heap.pop().expect("a leaf is always available");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            heap.push(std::cmp::Reverse(s));
        }
    }
    let std::cmp::Reverse(u) = heap.pop().unwrap();
    let std::cmp::Reverse(v) = heap.pop().unwrap();
    edges.push((u, v));
    build(n, edges)
}

/// Uniform random labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, BadParameter> {
    random_tree_with(n, &mut rng(seed))
}

pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Result<Tree, BadParameter> {
    match n {
        0 => Err(bad("random", "n must be positive")),
        1 => Ok(build(1, Vec::new())),
        2 => Ok(build(2, vec![(0, 1)])),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Ok(from_prufer(&seq))
        }
    }
}

/// Random tree with no two adjacent degree-2 vertices: a uniform tree with
/// its clean length-3 paths contracted, padded with leaves on vertex 0 when
/// fewer than three vertices remain.
pub fn random_reduced(n: usize, seed: u64) -> Result<Tree, BadParameter> {
    if n < 3 {
        return Err(bad("random-reduced", format!("n must be at least 3, got {n}")));
    }
    let (t, _) = reduce_clean_paths(&random_tree(n, seed)?);
    let t = if t.n() < 3 {
        let mut edges = t.edges().to_vec();
        for v in t.n()..3 {
            edges.push((0, v));
        }
        build(3, edges)
    } else {
        t
    };
    debug_assert!(t.is_reduced());
    Ok(t)
}

/// Random tree whose deep vertices all have degree at least `k`: a uniform
/// backbone on `n` vertices where each deep vertex of low degree receives
/// extra children, each a penultimate carrying one leaf.
pub fn random_high_degree(n: usize, k: usize, seed: u64) -> Result<Tree, BadParameter> {
    if k < 3 {
        return Err(bad("random-tk", format!("k must be at least 3, got {k}")));
    }
    if n < k + 1 {
        return Err(bad("random-tk", format!("n must be at least k + 1 = {}, got {n}", k + 1)));
    }
    let backbone = random_tree(n, seed)?;
    let classes = classify(&backbone);
    let mut edges = backbone.edges().to_vec();
    let mut next = backbone.n();
    for v in classes.vertices(VertexClass::Deep) {
        for _ in backbone.degree(v)..k {
            edges.push((v, next));
            edges.push((next, next + 1));
            next += 2;
        }
    }
    Ok(build(next, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{min_deep_degree, penultimate_count};

    #[test]
    fn fixed_families_sizes() {
        assert_eq!(two_level().n(), 11);
        assert_eq!(penultimate_count(&two_level()), 4);
        assert_eq!(tight43(2).unwrap().n(), 19);
        assert_eq!(penultimate_count(&tight43(2).unwrap()), 6);
        assert_eq!(min_deep_degree(&tight43(2).unwrap()), Some(2));
        assert_eq!(caterpillar(2).unwrap().n(), 7);
        assert_eq!(caterpillar(3).unwrap().n(), 11);
        assert!(tight43(1).is_err());
        assert!(caterpillar(1).is_err());
    }

    #[test]
    fn caterpillar_leaves_hang_on_v5_and_v8() {
        let t = caterpillar(3).unwrap();
        // v5 is id 4, v8 is id 7
        assert!(t.has_edge(4, 9));
        assert!(t.has_edge(7, 10));
        assert_eq!(t.degree(8), 1);
    }

    #[test]
    fn prufer_decoding() {
        // classic example: sequence [3, 3, 3, 4] on 6 vertices
        let t = from_prufer(&[3, 3, 3, 4]);
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(from_prufer(&[]).edges(), &[(0, 1)]);
    }

    #[test]
    fn random_small_and_deterministic() {
        assert_eq!(random_tree(1, 5).unwrap().n(), 1);
        assert_eq!(random_tree(2, 5).unwrap().edges(), &[(0, 1)]);
        assert_eq!(random_tree(10, 42).unwrap(), random_tree(10, 42).unwrap());
        assert_ne!(random_tree(30, 1).unwrap(), random_tree(30, 2).unwrap());
    }

    #[test]
    fn reduced_sampler_postconditions() {
        for seed in 0..200 {
            let n = 3 + (seed as usize % 40);
            let t = random_reduced(n, seed).unwrap();
            assert!(t.is_reduced());
            assert!((3..=n).contains(&t.n()));
            assert_eq!(t, random_reduced(n, seed).unwrap());
        }
    }

    #[test]
    fn high_degree_sampler_postconditions() {
        for k in [3, 4, 5, 8] {
            for seed in 0..50 {
                let t = random_high_degree(k + 1 + seed as usize % 30, k, seed).unwrap();
                assert!(min_deep_degree(&t).is_none_or(|d| d >= k));
            }
        }
        assert!(random_high_degree(3, 3, 0).is_err());
        assert!(random_high_degree(10, 2, 0).is_err());
    }

    #[test]
    fn spider_shape() {
        let t = spider(&[2, 2, 2]).unwrap();
        assert_eq!(t.n(), 7);
        assert_eq!(t.degree(0), 3);
    }
}

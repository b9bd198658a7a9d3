//! Hill climbing over trees of a fixed order, maximizing `γ/μ`.

use lapdom_core::domination::gamma_dp;
use lapdom_core::generators::rng;
use lapdom_core::inertia::mu;
use lapdom_core::rational::{ratio, RationalJson};
use lapdom_core::{Rational, Tree};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct Scored {
    pub tree: Tree,
    pub mu: usize,
    pub gamma: usize,
    pub ratio: Rational,
}

pub fn score(tree: Tree) -> Scored {
    let m = mu(&tree);
    let g = gamma_dp(&tree).0;
    Scored {
        tree,
        mu: m,
        gamma: g,
        ratio: ratio(g as i64, m as i64),
    }
}

/// Detaches a random leaf and hangs it on a different random vertex.
pub fn mutate<R: Rng>(t: &Tree, rng: &mut R) -> Option<Tree> {
    let n = t.n();
    if n < 3 {
        return None;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| t.is_leaf(v)).collect();
    let leaf = *leaves.choose(rng)?;
    let old = t.neighbors(leaf)[0];
    let target = loop {
        let x = rng.gen_range(0..n);
        if x != leaf && x != old {
            break x;
        }
    };
    let edges: Vec<_> = t
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| u != leaf && v != leaf)
        .chain([(leaf, target)])
        .collect();
    Some(Tree::new(n, edges).expect("moving a leaf keeps a tree"))
}

#[derive(Clone, Debug, Serialize)]
pub struct Improvement {
    pub iter: usize,
    pub mu: usize,
    pub gamma: usize,
    pub ratio: RationalJson,
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub iters: usize,
    pub seed: u64,
    pub start: String,
    pub best_mu: usize,
    pub best_gamma: usize,
    pub best_ratio: RationalJson,
    pub best_edges: Vec<(usize, usize)>,
    pub trajectory: Vec<Improvement>,
    pub below_four_thirds: bool,
}

/// Accepts sideways moves so the walk can cross plateaus; records every
/// strict improvement of the best ratio.
pub fn hill_climb(start: Tree, label: String, iters: usize, seed: u64) -> SearchReport {
    let mut rng = rng(seed);
    let mut current = score(start);
    let mut best = current.clone();
    let record = |iter: usize, s: &Scored| Improvement {
        iter,
        mu: s.mu,
        gamma: s.gamma,
        ratio: (&s.ratio).into(),
    };
    let mut trajectory = vec![record(0, &best)];
    for iter in 1..=iters {
        let Some(next) = mutate(&current.tree, &mut rng) else {
            break;
        };
        let next = score(next);
        if next.ratio >= current.ratio {
            current = next;
            if current.ratio > best.ratio {
                best = current.clone();
                trajectory.push(record(iter, &best));
            }
        }
    }
    SearchReport {
        n: best.tree.n(),
        iters,
        seed,
        start: label,
        best_mu: best.mu,
        best_gamma: best.gamma,
        below_four_thirds: best.ratio < ratio(4, 3),
        best_ratio: best.ratio.into(),
        best_edges: best.tree.edges().to_vec(),
        trajectory,
    }
}

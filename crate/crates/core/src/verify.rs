//! Invariant suite run per tree, plus aggregation over many trees.
//!
//! Every inequality is evaluated with exact integer or rational arithmetic
//! and compared against the independent dynamic-programming oracle.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::contract::{contract_clean_path3, find_clean_path3};
use crate::domination::{gamma_bruteforce, gamma_dp, greedy_dominating, is_dominating};
use crate::inertia::{count_below, diagonalize_with, mu, nu};
use crate::propagation::{alg2_run, alg3_dominating, epsilon_for};
use crate::rational::{int, ratio, Rational};
use crate::tree::{min_deep_degree, penultimate_count, root_at, Tree};

/// Brute-force cross-check applies up to this many vertices.
pub const BRUTE_CHECK_MAX: usize = 16;
/// Largest `k` for which the high-degree bound is checked.
pub const MAX_CHECKED_K: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub n: usize,
    pub p: usize,
    pub mu: usize,
    pub nu: usize,
    pub gamma: usize,
    pub checks: Vec<Check>,
}

impl TreeReport {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// `a/b < c/d` for positive denominators.
fn ratio_lt(a: usize, b: usize, c: usize, d: usize) -> bool {
    a * d < c * b
}

/// Runs every applicable invariant on `t`. `seed` drives the random roots
/// and zero-child choices of the invariance check.
pub fn verify_tree(t: &Tree, seed: u64) -> TreeReport {
    let n = t.n();
    let p = penultimate_count(t);
    let m = mu(t);
    let v = nu(t);
    let (g, witness) = gamma_dp(t);
    let mut c = Checks(Vec::new());

    c.push("dp_witness_dominating", is_dominating(t, witness.members()) && witness.len() == g, "");
    c.push("mu_le_gamma", m <= g, format!("mu={m} gamma={g}"));
    c.push("p_le_mu", p <= m, format!("p={p} mu={m}"));
    c.push("gamma_mu_lt_4_3", ratio_lt(g, m, 4, 3), format!("gamma/mu={g}/{m}"));
    if n >= 2 {
        c.push("nu_ge_gamma", v >= g, format!("nu={v} gamma={g}"));
        let low = count_below(t, &int(2));
        c.push("below_2_ge_half_n", low >= n.div_ceil(2), format!("m[0,2)={low} n={n}"));
    }
    if n <= BRUTE_CHECK_MAX {
        let b = gamma_bruteforce(t).expect("n within brute-force range");
        c.push("dp_eq_brute", b == g, format!("dp={g} brute={b}"));
    }
    let greedy = greedy_dominating(t);
    c.push(
        "greedy_minimum",
        greedy.size() == g && is_dominating(t, greedy.set.members()),
        format!("greedy={} gamma={g}", greedy.size()),
    );

    if n >= 3 && t.is_reduced() {
        check_alg2(&mut c, t, p, m, g);
        let eps1 = alg3_dominating(t, 3, Some(Rational::one())).expect("reduced tree");
        c.push(
            "eps1_dominating_lt_2p",
            is_dominating(t, eps1.set.members()) && eps1.size() < 2 * p,
            format!("size={} p={p}", eps1.size()),
        );
    }
    if n >= 3 {
        let max_k = min_deep_degree(t).unwrap_or(MAX_CHECKED_K).min(MAX_CHECKED_K);
        for k in 3..=max_k {
            check_alg3(&mut c, t, k, p);
        }
    }

    check_invariance(&mut c, t, seed);
    if let Some(path) = find_clean_path3(t) {
        let reduced = contract_clean_path3(t, path).expect("found path is valid").tree;
        let step = contraction_step(t, &reduced);
        c.push("contraction_mu_drop_one", step.mu_drop_ok(), format!("{step:?}"));
        c.push("contraction_gamma_drop", step.gamma_drop_ok(), format!("{step:?}"));
        c.push("contraction_ratio_monotone", step.ratio_ok(), format!("{step:?}"));
    }

    TreeReport {
        n,
        p,
        mu: m,
        nu: v,
        gamma: g,
        checks: c.0,
    }
}

fn check_alg2(c: &mut Checks, t: &Tree, p: usize, m: usize, g: usize) {
    let run = alg2_run(t).expect("reduced tree with n >= 3");
    let cert = &run.certificate;
    let size = cert.size();
    c.push("alg2_dominating", is_dominating(t, cert.set.members()), format!("{:?}", cert.set));
    c.push("alg2_minimum", size == g, format!("alg2={size} gamma={g}"));
    // |D| <= mu + (p - 1)/3, scaled by 3
    c.push(
        "alg2_size_bound",
        3 * size < 3 * m + p,
        format!("alg2={size} mu={m} p={p}"),
    );
    let negatives = run.inertia.iter().filter(|f| *f < &Rational::zero()).count();
    c.push("alg2_negatives_eq_mu", negatives == m, format!("negatives={negatives} mu={m}"));
    let third = ratio(1, 3);
    let root = cert.root;
    let push_ok = cert.trace.iter().filter(|e| Some(e.vertex) != root).all(|e| {
        let zero_child = e.inertia.as_ref().is_some_and(Zero::is_zero);
        e.pushed >= third || (e.joined && zero_child)
    });
    c.push("alg2_push_at_least_third", push_ok, "");
    c.push("alg2_trace_replays", cert.replay() == cert.set, "");
}

fn check_alg3(c: &mut Checks, t: &Tree, k: usize, p: usize) {
    let cert = alg3_dominating(t, k, None).expect("tree meets the degree condition");
    let eps = epsilon_for(k);
    let bound = (Rational::one() + &eps) * int(p as i64);
    let size = int(cert.size() as i64);
    c.push(
        "high_degree_dominating",
        is_dominating(t, cert.set.members()),
        format!("k={k} set={:?}", cert.set),
    );
    c.push("high_degree_bound", size < bound, format!("k={k} size={size} bound={bound}"));
    let root = cert.root;
    let push_ok = cert
        .trace
        .iter()
        .filter(|e| Some(e.vertex) != root && !t.is_leaf(e.vertex))
        .all(|e| e.pushed >= eps);
    c.push("high_degree_push_at_least_eps", push_ok, format!("k={k}"));
}

/// Scalars used by the invariance check.
pub fn invariance_alphas<R: Rng>(rng: &mut R) -> Vec<Rational> {
    let mut alphas = vec![int(-1), int(-2), ratio(-1, 2)];
    for _ in 0..2 {
        let den = rng.gen_range(1..=12i64);
        let num = rng.gen_range(-6 * den..=0);
        alphas.push(ratio(num, den));
    }
    alphas
}

fn check_invariance(c: &mut Checks, t: &Tree, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas = invariance_alphas(&mut rng);
    let mut roots: Vec<usize> = (0..t.n()).collect();
    roots.shuffle(&mut rng);
    roots.truncate(3);
    let mut ok = true;
    let mut detail = String::new();
    for alpha in &alphas {
        let reference = diagonalize_with(&root_at(t, 0), alpha, |_, z| z[0]).triple;
        for &r in &roots {
            let triple = diagonalize_with(&root_at(t, r), alpha, |_, z| *z.choose(&mut rng).unwrap()).triple;
            if triple != reference {
                ok = false;
                detail = format!("alpha={alpha} root={r}: {triple:?} vs {reference:?}");
            }
        }
    }
    c.push("inertia_root_invariance", ok, detail);
}

/// Counts before and after one clean-path contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    pub mu_before: usize,
    pub mu_after: usize,
    pub gamma_before: usize,
    pub gamma_after: usize,
}

impl ContractionStep {
    pub fn mu_drop_ok(&self) -> bool {
        self.mu_before == self.mu_after + 1
    }

    pub fn gamma_drop_ok(&self) -> bool {
        self.gamma_after <= self.gamma_before && self.gamma_before <= self.gamma_after + 1
    }

    /// `gamma/mu` before the contraction is at most `gamma/mu` after it.
    pub fn ratio_ok(&self) -> bool {
        self.gamma_before * self.mu_after <= self.gamma_after * self.mu_before
    }

    pub fn ok(&self) -> bool {
        self.mu_drop_ok() && self.gamma_drop_ok() && self.ratio_ok()
    }
}

pub fn contraction_step(before: &Tree, after: &Tree) -> ContractionStep {
    ContractionStep {
        mu_before: mu(before),
        mu_after: mu(after),
        gamma_before: gamma_dp(before).0,
        gamma_after: gamma_dp(after).0,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifySummary {
    pub trees: usize,
    pub violations: usize,
    pub checks: BTreeMap<&'static str, CheckTally>,
    /// First few failing checks, tagged with the input index.
    pub failures: Vec<(usize, Check)>,
}

impl VerifySummary {
    pub fn absorb(&mut self, index: usize, report: &TreeReport) {
        self.trees += 1;
        for check in &report.checks {
            let tally = self.checks.entry(check.name).or_default();
            if check.passed {
                tally.passed += 1;
            } else {
                tally.failed += 1;
                self.violations += 1;
                if self.failures.len() < 20 {
                    self.failures.push((index, check.clone()));
                }
            }
        }
    }

    pub fn record(&mut self, name: &'static str, passed: bool, detail: String, index: usize) {
        let tally = self.checks.entry(name).or_default();
        if passed {
            tally.passed += 1;
        } else {
            tally.failed += 1;
            self.violations += 1;
            if self.failures.len() < 20 {
                self.failures.push((
                    index,
                    Check {
                        name,
                        passed,
                        detail,
                    },
                ));
            }
        }
    }
}

/// Verifies trees in parallel; results are merged in input order.
pub fn verify_all(trees: &[Tree], seed: u64) -> (Vec<TreeReport>, VerifySummary) {
    let reports: Vec<TreeReport> = trees
        .par_iter()
        .enumerate()
        .map(|(i, t)| verify_tree(t, seed.wrapping_add(i as u64)))
        .collect();
    let mut summary = VerifySummary::default();
    for (i, r) in reports.iter().enumerate() {
        summary.absorb(i, r);
    }
    (reports, summary)
}

/// Sweeps the two extremal families, checking their closed-form counts.
pub fn verify_families(summary: &mut VerifySummary, max_param: usize) {
    use crate::generators::{caterpillar, tight43};
    let tight: Vec<_> = (2..=max_param)
        .into_par_iter()
        .map(|k| {
            let t = tight43(k).expect("k >= 2");
            (k, mu(&t), gamma_dp(&t).0)
        })
        .collect();
    for (k, m, g) in tight {
        summary.record("tight43_mu", m == 3 * k + 1, format!("k={k} mu={m}"), k);
        summary.record("tight43_gamma", g == 4 * k, format!("k={k} gamma={g}"), k);
        summary.record("tight43_below_4_3", ratio_lt(g, m, 4, 3), format!("k={k}"), k);
    }
    let cats: Vec<_> = (2..=max_param)
        .into_par_iter()
        .map(|n| {
            let t = caterpillar(n).expect("n >= 2");
            (n, nu(&t), gamma_dp(&t).0)
        })
        .collect();
    for (n, v, g) in cats {
        summary.record("caterpillar_nu", v == 2 * n - 1, format!("n={n} nu={v}"), n);
        summary.record("caterpillar_gamma", g == n, format!("n={n} gamma={g}"), n);
    }
}

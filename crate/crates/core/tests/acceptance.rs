//! Acceptance suite. Each test prints one PASS/FAIL line for its criterion
//! and asserts it. Run with `cargo test -p lapdom-core --test acceptance --
//! --nocapture` to see the lines.

use lapdom_core::contract::reduction_trace;
use lapdom_core::domination::{gamma_bruteforce, gamma_dp, greedy_dominating, is_dominating};
use lapdom_core::generators::{
    caterpillar, two_level, random_high_degree, random_reduced, random_tree, rng, tight43,
    tight43_layout as lay,
};
use lapdom_core::inertia::{count_below, count_interval, diagonalize, diagonalize_with, mu, nu, Interval};
use lapdom_core::oracles::{interval_count_numeric, laplacian_spectrum, NumericCount};
use lapdom_core::propagation::{alg2_run, alg3_dominating, epsilon_for};
use lapdom_core::rational::{int, ratio, to_f64, Rational};
use lapdom_core::spectrum::localize_spectrum;
use lapdom_core::tree::{penultimate_count, root_at, Tree};
use lapdom_core::verify::contraction_step;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

fn report(id: &str, what: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id}: {what}");
    for f in failures.iter().take(10) {
        println!("        {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

/// `n` in `[lo, hi]` for the `i`-th sample of a seeded stream.
fn sized_trees(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Tree> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(lo..=hi);
            random_tree(n, r.gen()).unwrap()
        })
        .collect()
}

/// The shared fuzz corpus for criteria 4 and 10.
fn fuzz_corpus() -> Vec<Tree> {
    sized_trees(10_000, 3, 150, 0xF0_22)
}

#[test]
fn criterion_01_two_level_reproduction() {
    let t = two_level();
    let mut failures = Vec::new();
    let (m, g, p) = (mu(&t), gamma_dp(&t).0, penultimate_count(&t));
    if (m, g, p) != (4, 5, 4) {
        failures.push(format!("mu={m} gamma={g} p={p}"));
    }
    let d = diagonalize(&root_at(&t, 0), &int(-1));
    // root, two mid-level vertices, four penultimates, four leaves
    let mut expected = vec![int(0)];
    expected.extend([int(2), int(2)]);
    expected.extend(std::iter::repeat_n(ratio(-1, 2), 4));
    expected.extend(std::iter::repeat_n(int(2), 4));
    if d.f != expected {
        failures.push(format!("inertia labels {:?}", d.f));
    }
    report("1", "two-level example: mu=4, gamma=5, p=4, inertia labels exact", &failures);
}

#[test]
fn criterion_02_tight_family() {
    let rows: Vec<(usize, usize, usize)> = (2..=50usize)
        .into_par_iter()
        .map(|k| {
            let t = tight43(k).unwrap();
            (k, mu(&t), gamma_dp(&t).0)
        })
        .collect();
    let mut failures = Vec::new();
    for &(k, m, g) in &rows {
        if m != 3 * k + 1 || g != 4 * k {
            failures.push(format!("k={k}: mu={m} gamma={g}"));
        }
        if 3 * g >= 4 * m {
            failures.push(format!("k={k}: ratio {g}/{m} reached 4/3"));
        }
    }
    // inertia labels of the first hanging subtree, rooted at r
    let t = tight43(3).unwrap();
    let d = diagonalize(&root_at(&t, 0), &int(-1));
    let o = lay::base(0);
    let labels = [
        (0, ratio(-1, 2)),
        (o + lay::U, int(2)),
        (o + lay::A, ratio(1, 2)),
        (o + lay::B, int(2)),
        (o + lay::PEN_U, ratio(-1, 2)),
        (o + lay::LEAF_U, int(2)),
        (o + lay::PEN_B1, ratio(-1, 2)),
        (o + lay::LEAF_B1, int(2)),
        (o + lay::PEN_B2, ratio(-1, 2)),
        (o + lay::LEAF_B2, int(2)),
    ];
    for (v, want) in labels {
        if d.f[v] != want {
            failures.push(format!("vertex {v}: f={} want {want}", d.f[v]));
        }
    }
    report("2", "tight family k=2..50: mu=3k+1, gamma=4k, ratio < 4/3", &failures);
}

#[test]
fn criterion_02_ratio_exceeds_1_32_by_k25() {
    // 4k/(3k+1) > 33/25 exactly
    let exceeds = |k: i64| ratio(4 * k, 3 * k + 1) > ratio(33, 25);
    let first = (2..=50).find(|&k| exceeds(k));
    let mut failures = Vec::new();
    if !exceeds(25) {
        failures.push(format!(
            "4k/(3k+1) at k=25 is 100/76 = {:.6} <= 1.32; first k above 1.32 is {first:?}",
            100.0 / 76.0
        ));
    }
    report("2 (threshold)", "tight family ratio exceeds 1.32 by k = 25", &failures);
}

#[test]
fn criterion_03_caterpillar_family() {
    let mut failures = Vec::new();
    for n in 2..=50 {
        let t = caterpillar(n).unwrap();
        let (v, g) = (nu(&t), gamma_dp(&t).0);
        if v != 2 * n - 1 || g != n {
            failures.push(format!("n={n}: nu={v} gamma={g}"));
        }
    }
    let t = caterpillar(3).unwrap();
    let d = diagonalize(&root_at(&t, 8), &int(-2));
    let path: Vec<Rational> = [-1, 1, -1, 1, 1, -1, 1, 1, -2].into_iter().map(int).collect();
    if d.f[..9] != path[..] || d.f[9] != int(-1) || d.f[10] != int(-1) {
        failures.push(format!("T_3 labels at alpha=-2: {:?}", d.f));
    }
    report("3", "caterpillar n=2..50: nu=2n-1, gamma=n; T_3 labels", &failures);
}

#[test]
fn criterion_04_main_ratio_fuzz() {
    let corpus = fuzz_corpus();
    let failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let (p, m, g) = (penultimate_count(t), mu(t), gamma_dp(t).0);
            let ok = p <= m && m <= g && 3 * g < 4 * m;
            (!ok).then(|| format!("tree {i}: p={p} mu={m} gamma={g}"))
        })
        .collect();
    report("4", "10000 random trees: p <= mu <= gamma, gamma/mu < 4/3", &failures);
}

#[test]
fn criterion_05_alg2_contract() {
    let mut r = rng(0xA1_62);
    let specs: Vec<(usize, u64)> = (0..2000).map(|_| (r.gen_range(3..=150), r.gen())).collect();
    let third = ratio(1, 3);
    let failures: Vec<String> = specs
        .par_iter()
        .enumerate()
        .filter_map(|(i, &(n, seed))| {
            let t = random_reduced(n, seed).unwrap();
            let run = alg2_run(&t).unwrap();
            let c = &run.certificate;
            let (m, p, g) = (mu(&t), penultimate_count(&t), gamma_dp(&t).0);
            let mut why = Vec::new();
            if !is_dominating(&t, c.set.members()) {
                why.push("not dominating".to_string());
            }
            if c.size() != g {
                why.push(format!("size {} != gamma {g}", c.size()));
            }
            if 3 * c.size() + 1 > 3 * m + p {
                why.push(format!("size {} > mu {m} + (p {p} - 1)/3", c.size()));
            }
            let pushes_ok = c.trace.iter().filter(|e| Some(e.vertex) != c.root).all(|e| {
                e.pushed >= third || (e.joined && e.inertia.as_ref().is_some_and(Zero::is_zero))
            });
            if !pushes_ok {
                why.push("push below 1/3".into());
            }
            (!why.is_empty()).then(|| format!("tree {i} (n={}): {}", t.n(), why.join(", ")))
        })
        .collect();
    report(
        "5",
        "2000 reduced trees: alg2 dominating, minimum, within mu + (p-1)/3, pushes >= 1/3",
        &failures,
    );
}

#[test]
fn criterion_06_high_degree_bound() {
    let mut failures = Vec::new();
    for k in [3usize, 4, 5, 8] {
        let eps = epsilon_for(k);
        let mut r = rng(0x7C + k as u64);
        let specs: Vec<(usize, u64)> = (0..1000).map(|_| (r.gen_range(k + 1..=80), r.gen())).collect();
        failures.extend(specs.par_iter().enumerate().filter_map(|(i, &(n, seed))| {
            let t = random_high_degree(n, k, seed).unwrap();
            let c = alg3_dominating(&t, k, None).unwrap();
            let p = penultimate_count(&t);
            let bound = (Rational::one() + &eps) * int(p as i64);
            let ok = is_dominating(&t, c.set.members()) && int(c.size() as i64) < bound;
            (!ok).then(|| format!("k={k} tree {i}: size {} bound {bound}", c.size()))
        }).collect::<Vec<_>>());
    }
    let mut r = rng(0xE5);
    let specs: Vec<(usize, u64)> = (0..1000).map(|_| (r.gen_range(3..=150), r.gen())).collect();
    failures.extend(specs.par_iter().enumerate().filter_map(|(i, &(n, seed))| {
        let t = random_reduced(n, seed).unwrap();
        let c = alg3_dominating(&t, 3, Some(Rational::one())).unwrap();
        let p = penultimate_count(&t);
        let ok = is_dominating(&t, c.set.members()) && c.size() < 2 * p;
        (!ok).then(|| format!("eps=1 tree {i}: size {} p {p}", c.size()))
    }).collect::<Vec<_>>());
    report(
        "6",
        "1000 trees per k in {3,4,5,8}: dominating, |D| < (1+eps)p; eps=1: |D| < 2p",
        &failures,
    );
}

#[test]
fn criterion_07_contraction_steps() {
    let mut r = rng(0xC0_47);
    let mut trees = Vec::new();
    while trees.len() < 1000 {
        let n = r.gen_range(4..=120);
        let t = random_tree(n, r.gen()).unwrap();
        if !t.is_reduced() {
            trees.push(t);
        }
    }
    let failures: Vec<String> = trees
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            let trace = reduction_trace(t);
            trace
                .stages
                .windows(2)
                .enumerate()
                .filter_map(|(s, w)| {
                    let step = contraction_step(&w[0], &w[1]);
                    (!step.ok()).then(|| format!("tree {i} step {s}: {step:?}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report(
        "7",
        "1000 trees with clean 3-paths: mu drops by exactly 1, gamma by at most 1, gamma/mu never decreases under contraction",
        &failures,
    );
}

#[test]
fn criterion_08_inertia_invariance() {
    let trees = sized_trees(500, 1, 120, 0x1E_47);
    let failures: Vec<String> = trees
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let mut r = rng(1000 + i as u64);
            let mut alphas = vec![int(-1), int(-2), ratio(-1, 2)];
            for _ in 0..3 {
                let den = r.gen_range(1..=16i64);
                alphas.push(ratio(r.gen_range(-8 * den..=2 * den), den));
            }
            for alpha in &alphas {
                let reference = diagonalize(&root_at(t, 0), alpha).triple;
                if reference.total() != t.n() {
                    return Some(format!("tree {i}: triple does not sum to n"));
                }
                for _ in 0..5 {
                    let root = r.gen_range(0..t.n());
                    let triple = diagonalize_with(&root_at(t, root), alpha, |_, zeros| {
                        *zeros.choose(&mut r).unwrap()
                    })
                    .triple;
                    if triple != reference {
                        return Some(format!("tree {i} alpha {alpha} root {root}: {triple:?} vs {reference:?}"));
                    }
                }
            }
            None
        })
        .collect();
    report("8", "500 trees x 5 roots x random tie-breaks: identical inertia", &failures);
}

#[test]
fn criterion_09_oracle_agreement() {
    let trees = sized_trees(500, 1, 100, 0x0A_C1E);
    let tol = ratio(1, 1_000_000_000);
    let failures: Vec<String> = trees
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            let mut why = Vec::new();
            let eigs = laplacian_spectrum(t).expect("Jacobi converges");
            let mut r = rng(0x5EED + i as u64);
            let n = t.n() as i64;
            let mut ends: Vec<Rational> = vec![int(0), int(1), int(2), int(n)];
            for _ in 0..6 {
                let den = r.gen_range(1..=20i64);
                ends.push(ratio(r.gen_range(0..=n * den), den));
            }
            for a in &ends {
                for b in &ends {
                    if a >= b {
                        continue;
                    }
                    let numeric = interval_count_numeric(&eigs, to_f64(a), to_f64(b), 1e-6);
                    if let NumericCount::Count(c) = numeric {
                        let exact = count_interval(t, &Interval::half_open(a.clone(), b.clone())).unwrap();
                        if c != exact {
                            why.push(format!("tree {i} [{a},{b}): numeric {c} exact {exact}"));
                        }
                    }
                }
            }
            let brackets = localize_spectrum(t, &tol).unwrap();
            let total: usize = brackets.iter().map(|b| b.multiplicity).sum();
            if total != t.n() {
                why.push(format!("tree {i}: multiplicities sum to {total}"));
            }
            if brackets.iter().any(|b| b.width() > tol) {
                why.push(format!("tree {i}: bracket wider than tol"));
            }
            let sum: f64 = brackets.iter().map(|b| to_f64(&b.midpoint()) * b.multiplicity as f64).sum();
            let trace = 2.0 * (t.n() as f64 - 1.0);
            if (sum - trace).abs() > t.n() as f64 * 1e-9 {
                why.push(format!("tree {i}: eigenvalue sum {sum} vs trace {trace}"));
            }
            why
        })
        .collect();
    report(
        "9",
        "500 trees n<=100: Jacobi counts match exact counts; localization sums to n and to the trace",
        &failures,
    );
}

#[test]
fn criterion_10_background_inequalities() {
    let corpus = fuzz_corpus();
    let mut failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let n = t.n();
            let low = count_below(t, &int(2));
            let (v, g) = (nu(t), gamma_dp(t).0);
            let ok = low >= n.div_ceil(2) && v >= g;
            (!ok).then(|| format!("tree {i}: m[0,2)={low} n={n} nu={v} gamma={g}"))
        })
        .collect();
    let mut last = Rational::zero();
    for n in 2..=50usize {
        let t = caterpillar(n).unwrap();
        let r = ratio(nu(&t) as i64, gamma_dp(&t).0 as i64);
        if r != int(2) - ratio(1, n as i64) || r <= last || r >= int(2) {
            failures.push(format!("caterpillar n={n}: nu/gamma={r}"));
        }
        last = r;
    }
    report(
        "10",
        "m[0,2) >= ceil(n/2) and nu >= gamma on the fuzz corpus; caterpillar nu/gamma = 2 - 1/n",
        &failures,
    );
}

#[test]
fn criterion_11_oracle_of_oracle() {
    let small = sized_trees(2000, 1, 16, 0xB2_07E);
    let mut failures: Vec<String> = small
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let (dp, brute) = (gamma_dp(t).0, gamma_bruteforce(t).unwrap());
            (dp != brute).then(|| format!("tree {i}: dp={dp} brute={brute}"))
        })
        .collect();
    let large = sized_trees(5000, 1, 150, 0x62_EED);
    failures.extend(large.par_iter().enumerate().filter_map(|(i, t)| {
        let c = greedy_dominating(t);
        let g = gamma_dp(t).0;
        let ok = c.size() == g && is_dominating(t, c.set.members());
        (!ok).then(|| format!("tree {i}: greedy={} dp={g}", c.size()))
    }).collect::<Vec<_>>());
    report("11", "dp = brute force on 2000 trees; greedy = dp on 5000 trees", &failures);
}

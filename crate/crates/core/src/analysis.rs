//! Full per-tree report: spectral counts, domination number and the named
//! inequalities relating them.

use serde::Serialize;

use crate::domination::gamma_dp;
use crate::inertia::{count_below, mu, nu};
use crate::propagation::alg2_dominating;
use crate::rational::{int, ratio, Rational, RationalJson};
use crate::tree::{penultimate_count, Tree};

#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: RationalJson,
    pub rhs: RationalJson,
    pub holds: bool,
}

fn bound(name: &'static str, statement: &'static str, lhs: Rational, rhs: Rational, holds: bool) -> Bound {
    Bound {
        name,
        statement,
        lhs: lhs.into(),
        rhs: rhs.into(),
        holds,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// `degree_histogram[d]` vertices have degree `d`.
    pub degree_histogram: Vec<usize>,
    pub p: usize,
    pub mu: usize,
    pub nu: usize,
    pub below_2: usize,
    pub gamma: usize,
    pub gamma_witness: Vec<usize>,
    pub alg2_size: Option<usize>,
    pub gamma_over_mu: RationalJson,
    pub nu_over_gamma: RationalJson,
    pub bounds: Vec<Bound>,
}

impl AnalysisReport {
    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}

pub fn analyze(t: &Tree) -> AnalysisReport {
    let n = t.n();
    let p = penultimate_count(t);
    let m = mu(t);
    let v = nu(t);
    let below_2 = count_below(t, &int(2));
    let (g, witness) = gamma_dp(t);
    let alg2_size = if n >= 3 && t.is_reduced() {
        alg2_dominating(t).ok().map(|c| c.size())
    } else {
        None
    };
    let r = |x: usize| int(x as i64);

    let mut bounds = vec![
        bound("mu_le_gamma", "mu <= gamma", r(m), r(g), m <= g),
        bound("p_le_mu", "p <= mu", r(p), r(m), p <= m),
        bound(
            "gamma_lt_four_thirds_mu",
            "gamma < (4/3) mu",
            r(g),
            ratio(4 * m as i64, 3),
            3 * g < 4 * m,
        ),
    ];
    if let Some(size) = alg2_size {
        let rhs = r(m) + ratio(p as i64 - 1, 3);
        bounds.push(bound(
            "alg2_size_bound",
            "|D_alg2| <= mu + (p - 1)/3",
            r(size),
            rhs.clone(),
            r(size) <= rhs,
        ));
    }
    if n >= 2 {
        bounds.push(bound("nu_ge_gamma", "nu >= gamma", r(v), r(g), v >= g));
        let half = n.div_ceil(2);
        bounds.push(bound(
            "below_2_ge_half_n",
            "m[0,2) >= ceil(n/2)",
            r(below_2),
            r(half),
            below_2 >= half,
        ));
    }

    AnalysisReport {
        n,
        edges: t.edges().to_vec(),
        degree_histogram: t.degree_histogram(),
        p,
        mu: m,
        nu: v,
        below_2,
        gamma: g,
        gamma_witness: witness.members().to_vec(),
        alg2_size,
        gamma_over_mu: ratio(g as i64, m as i64).into(),
        nu_over_gamma: ratio(v as i64, g as i64).into(),
        bounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{two_level, path, tight43};

    #[test]
    fn two_level_report() {
        let r = analyze(&two_level());
        assert_eq!((r.mu, r.gamma, r.p), (4, 5, 4));
        assert_eq!((r.gamma_over_mu.num.as_str(), r.gamma_over_mu.den.as_str()), ("5", "4"));
        assert_eq!(r.alg2_size, Some(5));
        assert!(r.all_hold());
        assert_eq!(r.bounds.len(), 6);
    }

    #[test]
    fn tight43_k3_ratio() {
        let r = analyze(&tight43(3).unwrap());
        assert_eq!((r.gamma_over_mu.num.as_str(), r.gamma_over_mu.den.as_str()), ("6", "5"));
    }

    #[test]
    fn p2_report() {
        let r = analyze(&path(2).unwrap());
        assert_eq!((r.mu, r.gamma), (1, 1));
        assert_eq!(r.gamma_over_mu.num, "1");
        assert_eq!(r.gamma_over_mu.den, "1");
        assert_eq!(r.alg2_size, None);
    }
}

//! Weight-propagation constructions of dominating sets.
//!
//! Both algorithms root the tree at its smallest-id penultimate vertex,
//! seed the penultimates with weight, and sweep bottom-up: a vertex that
//! joins the set keeps one unit of weight and pushes the rest to its
//! parent, any other vertex pushes everything.
//!
//! [`alg2_dominating`] runs interleaved with the `α = -1` diagonalization
//! and applies to trees without adjacent degree-2 vertices.
//! [`alg3_dominating`] uses only the weights and applies to trees whose
//! deep vertices all have degree at least `k`.

use num_traits::{One, Zero};

use crate::domination::{DominatingSet, DominationCertificate, DominationError, Method, TraceEntry};
use crate::rational::{int, ratio, Rational};
use crate::tree::{classify, min_deep_degree, root_at, Tree, VertexClass};

/// Extra result of [`alg2_dominating`]: the diagonal values computed along
/// the way.
#[derive(Clone, Debug)]
pub struct Alg2Run {
    pub certificate: DominationCertificate,
    /// Final diagonal values of the interleaved `α = -1` run.
    pub inertia: Vec<Rational>,
    /// `(vertex, chosen zero child)` pairs in processing order.
    pub zero_child_choices: Vec<(usize, usize)>,
}

// K_1 and P_2 have no penultimate vertex to root at; {0} is a minimum set.
fn trivial(method: Method) -> DominationCertificate {
    DominationCertificate {
        method,
        set: DominatingSet::new(vec![0]),
        trace: Vec::new(),
        root: None,
        epsilon: None,
    }
}

fn smallest_penultimate(t: &Tree) -> usize {
    classify(t)
        .vertices(VertexClass::Penultimate)
        .next()
        .expect("trees with n >= 3 have a penultimate vertex")
}

pub fn alg2_dominating(t: &Tree) -> Result<DominationCertificate, DominationError> {
    alg2_run(t).map(|r| r.certificate)
}

/// Weight propagation with penultimate weight `4/3`, interleaved with the
/// diagonalization at `α = -1`.
///
/// A vertex with a zero child gains one unit of weight. A vertex joins when
/// its weight is at least `4/3`, or its updated value is zero and its weight
/// is at least `1`, provided some child is still undominated.
///
/// Trees on one or two vertices return `{0}` directly.
pub fn alg2_run(t: &Tree) -> Result<Alg2Run, DominationError> {
    let n = t.n();
    if n < 3 {
        return Ok(Alg2Run {
            certificate: trivial(Method::Alg2),
            inertia: Vec::new(),
            zero_child_choices: Vec::new(),
        });
    }
    let pairs = t.adjacent_degree_two_pairs();
    if !pairs.is_empty() {
        return Err(DominationError::NotReduced { pairs });
    }
    let classes = classify(t);
    let rt = root_at(t, smallest_penultimate(t));
    let four_thirds = ratio(4, 3);
    let mut f: Vec<Rational> = (0..n).map(|v| int(t.degree(v) as i64 - 1)).collect();
    let mut w: Vec<Rational> = (0..n)
        .map(|v| match classes.of(v) {
            VertexClass::Penultimate => four_thirds.clone(),
            _ => Rational::zero(),
        })
        .collect();
    let mut detached = vec![false; n];
    let mut dominated = vec![false; n];
    let mut joined = vec![false; n];
    let mut trace = Vec::new();
    let mut zero_child_choices = Vec::new();

    for &v in rt.bottom_up() {
        let kids = rt.children(v);
        if kids.is_empty() {
            continue;
        }
        let zero_child = kids.iter().copied().find(|&c| !detached[c] && f[c].is_zero());
        match zero_child {
            None => {
                let mut acc = f[v].clone();
                for &c in kids.iter().filter(|&&c| !detached[c]) {
                    acc -= f[c].recip();
                }
                f[v] = acc;
            }
            Some(c) => {
                f[v] = ratio(-1, 2);
                f[c] = int(2);
                w[v] += Rational::one();
                zero_child_choices.push((v, c));
                if rt.parent(v).is_some() {
                    detached[v] = true;
                }
            }
        }
        let heavy = w[v] >= four_thirds || (f[v].is_zero() && w[v] >= Rational::one());
        let join = heavy && kids.iter().any(|&c| !dominated[c]);
        let pushed = if join { &w[v] - Rational::one() } else { w[v].clone() };
        if join {
            joined[v] = true;
            dominated[v] = true;
            for &x in t.neighbors(v) {
                dominated[x] = true;
            }
        }
        trace.push(TraceEntry {
            vertex: v,
            weight: w[v].clone(),
            inertia: Some(f[v].clone()),
            pushed: pushed.clone(),
            joined: join,
        });
        if let Some(p) = rt.parent(v) {
            w[p] += pushed;
        }
    }

    let set = DominatingSet::new((0..n).filter(|&v| joined[v]).collect());
    Ok(Alg2Run {
        certificate: DominationCertificate {
            method: Method::Alg2,
            set,
            trace,
            root: Some(rt.root()),
            epsilon: None,
        },
        inertia: f,
        zero_child_choices,
    })
}

/// `1 / ((k - 2)(k + 1))`
pub fn epsilon_for(k: usize) -> Rational {
    assert!(k >= 3, "epsilon is defined for k >= 3");
    let k = k as i64;
    ratio(1, (k - 2) * (k + 1))
}

/// Weight propagation with penultimate weight `1 + ε` and no
/// diagonalization: every vertex holding at least `1 + ε` joins.
///
/// Without `eps_override` the tree must have all deep degrees at least
/// `k >= 3` and `ε = 1/((k-2)(k+1))`. With an override the tree must have no
/// adjacent degree-2 vertices and `k` is ignored.
pub fn alg3_dominating(
    t: &Tree,
    k: usize,
    eps_override: Option<Rational>,
) -> Result<DominationCertificate, DominationError> {
    let overridden = eps_override.is_some();
    let eps = match eps_override {
        Some(e) => {
            if e <= Rational::zero() {
                return Err(DominationError::BadEpsilon);
            }
            e
        }
        None => {
            if k < 3 {
                return Err(DominationError::BadK(k));
            }
            epsilon_for(k)
        }
    };
    let n = t.n();
    if n < 3 {
        let mut c = trivial(Method::Alg3);
        c.epsilon = Some(eps);
        return Ok(c);
    }
    let classes = classify(t);
    if overridden {
        let pairs = t.adjacent_degree_two_pairs();
        if !pairs.is_empty() {
            return Err(DominationError::NotReduced { pairs });
        }
    } else if min_deep_degree(t).is_some_and(|d| d < k) {
        let vertices = classes
            .vertices(VertexClass::Deep)
            .filter(|&v| t.degree(v) < k)
            .collect();
        return Err(DominationError::DeepDegreeTooLow { k, vertices });
    }

    let rt = root_at(t, smallest_penultimate(t));
    let threshold = Rational::one() + &eps;
    let mut w: Vec<Rational> = (0..n)
        .map(|v| match classes.of(v) {
            VertexClass::Penultimate => threshold.clone(),
            _ => Rational::zero(),
        })
        .collect();
    let mut trace = Vec::with_capacity(n);
    let mut members = Vec::new();
    for &v in rt.bottom_up() {
        let join = w[v] >= threshold;
        let pushed = if join { &w[v] - Rational::one() } else { w[v].clone() };
        if join {
            members.push(v);
        }
        trace.push(TraceEntry {
            vertex: v,
            weight: w[v].clone(),
            inertia: None,
            pushed: pushed.clone(),
            joined: join,
        });
        if let Some(p) = rt.parent(v) {
            w[p] += pushed;
        }
    }
    Ok(DominationCertificate {
        method: Method::Alg3,
        set: DominatingSet::new(members),
        trace,
        root: Some(rt.root()),
        epsilon: Some(eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{gamma_dp, is_dominating};
    use crate::generators::{two_level, path, spider, star, tight43};

    #[test]
    fn p3_takes_the_center() {
        let t = path(3).unwrap();
        assert_eq!(alg2_dominating(&t).unwrap().set.members(), &[1]);
        assert_eq!(alg3_dominating(&t, 3, None).unwrap().set.members(), &[1]);
    }

    #[test]
    fn tiny_trees_bypass() {
        for n in [1, 2] {
            let t = path(n).unwrap();
            let c = alg2_dominating(&t).unwrap();
            assert_eq!(c.set.members(), &[0]);
            assert_eq!(c.root, None);
            assert_eq!(alg3_dominating(&t, 3, None).unwrap().epsilon, Some(ratio(1, 4)));
        }
    }

    #[test]
    fn two_level_alg2_is_minimum() {
        let t = two_level();
        let run = alg2_run(&t).unwrap();
        assert!(is_dominating(&t, run.certificate.set.members()));
        assert_eq!(run.certificate.size(), 5);
        assert_eq!(run.certificate.root, Some(3));
        let neg = run.inertia.iter().filter(|x| **x < Rational::zero()).count();
        assert_eq!(neg, 4);
    }

    #[test]
    fn tight43_alg2_matches_gamma() {
        for k in 2..6 {
            let t = tight43(k).unwrap();
            assert_eq!(alg2_dominating(&t).unwrap().size(), gamma_dp(&t).0);
        }
    }

    #[test]
    fn alg3_on_stars_and_spiders() {
        assert_eq!(alg3_dominating(&star(15).unwrap(), 3, None).unwrap().set.members(), &[0]);
        let t = spider(&[2, 2, 2]).unwrap();
        let c = alg3_dominating(&t, 3, None).unwrap();
        assert!(is_dominating(&t, c.set.members()));
        assert_eq!(c.size(), 3);
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_for(3), ratio(1, 4));
        assert_eq!(epsilon_for(4), ratio(1, 10));
    }

    #[test]
    fn precondition_errors() {
        let p5 = path(5).unwrap();
        assert!(matches!(alg2_dominating(&p5), Err(DominationError::NotReduced { .. })));
        assert!(matches!(
            alg3_dominating(&p5, 3, Some(int(1))),
            Err(DominationError::NotReduced { .. })
        ));
        assert!(matches!(
            alg3_dominating(&two_level(), 4, None),
            Err(DominationError::DeepDegreeTooLow { k: 4, .. })
        ));
        assert_eq!(alg3_dominating(&two_level(), 2, None).unwrap_err(), DominationError::BadK(2));
        assert_eq!(
            alg3_dominating(&two_level(), 3, Some(int(0))).unwrap_err(),
            DominationError::BadEpsilon
        );
    }
}

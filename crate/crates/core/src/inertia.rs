//! Congruence diagonalization of `L(T) + αI` for a rooted tree and the
//! eigenvalue counts it yields.
//!
//! The diagonal values are computed bottom-up: a vertex starts at
//! `deg(v) + α` and subtracts `1 / f(c)` for each attached child `c`. When a
//! child already sits at exactly zero, the vertex instead takes `-1/2`, that
//! child takes `2`, and the vertex is detached from its own parent. By
//! Sylvester's law the signs of the resulting values give the inertia of
//! `L(T) + αI`, so with `α = -β` the negative count is the number of
//! Laplacian eigenvalues in `[0, β)` and the zero count is the multiplicity
//! of `β`.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{int, ratio, Rational};
use crate::tree::{root_at, RootedTree, Tree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct InertiaTriple {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

impl InertiaTriple {
    pub fn total(&self) -> usize {
        self.neg + self.zero + self.pos
    }

    pub fn tally<'a>(values: impl IntoIterator<Item = &'a Rational>) -> InertiaTriple {
        let mut t = InertiaTriple::default();
        for v in values {
            if v.is_negative() {
                t.neg += 1;
            } else if v.is_zero() {
                t.zero += 1;
            } else {
                t.pos += 1;
            }
        }
        t
    }
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Final diagonal value of each vertex.
    pub f: Vec<Rational>,
    pub triple: InertiaTriple,
    /// `(vertex, parent)` edges cut by the zero-child rule.
    pub removed_edges: Vec<(usize, usize)>,
    /// `(vertex, chosen zero child)` in processing order.
    pub zero_child_choices: Vec<(usize, usize)>,
}

/// Runs the diagonalization choosing the smallest-id zero child.
pub fn diagonalize(rt: &RootedTree<'_>, alpha: &Rational) -> Diagonalization {
    diagonalize_with(rt, alpha, |_, zeros| zeros[0])
}

/// Same as [`diagonalize`], with `choose(v, zero_children)` picking which
/// zero child of `v` is promoted to `2`. `zero_children` is non-empty and
/// sorted; the returned id must be one of its elements.
pub fn diagonalize_with<F>(rt: &RootedTree<'_>, alpha: &Rational, mut choose: F) -> Diagonalization
where
    F: FnMut(usize, &[usize]) -> usize,
{
    let t = rt.tree();
    let n = t.n();
    let mut f: Vec<Rational> = (0..n).map(|v| int(t.degree(v) as i64) + alpha).collect();
    let mut detached = vec![false; n];
    let mut removed_edges = Vec::new();
    let mut zero_child_choices = Vec::new();
    let mut zeros = Vec::new();

    for &v in rt.bottom_up() {
        let attached = rt.children(v).iter().copied().filter(|&c| !detached[c]);
        zeros.clear();
        zeros.extend(attached.clone().filter(|&c| f[c].is_zero()));
        if zeros.is_empty() {
            let mut acc = f[v].clone();
            for c in attached {
                acc -= f[c].recip();
            }
            f[v] = acc;
        } else {
            let j = choose(v, &zeros);
            assert!(zeros.contains(&j), "selected child {j} of {v} is not a zero child");
            f[v] = ratio(-1, 2);
            f[j] = int(2);
            zero_child_choices.push((v, j));
            if let Some(p) = rt.parent(v) {
                detached[v] = true;
                removed_edges.push((v, p));
            }
        }
    }

    let triple = InertiaTriple::tally(&f);
    Diagonalization {
        f,
        triple,
        removed_edges,
        zero_child_choices,
    }
}

/// Unreduced fraction with a positive denominator. Skipping the gcd keeps
/// the many probes of spectrum bisection cheap; only signs and exact zeros
/// are read back.
struct Fraction {
    num: BigInt,
    den: BigInt,
}

/// Inertia triple of the same run as [`diagonalize`] (smallest-id zero
/// child), computed without normalizing intermediate values.
pub fn inertia_of(rt: &RootedTree<'_>, alpha: &Rational) -> InertiaTriple {
    let t = rt.tree();
    let n = t.n();
    let (a_num, a_den) = (alpha.numer(), alpha.denom());
    let mut f: Vec<Fraction> = (0..n)
        .map(|v| Fraction {
            num: a_den * BigInt::from(t.degree(v)) + a_num,
            den: a_den.clone(),
        })
        .collect();
    let mut detached = vec![false; n];
    for &v in rt.bottom_up() {
        let mut attached = rt.children(v).iter().copied().filter(|&c| !detached[c]);
        if let Some(j) = attached.clone().find(|&c| f[c].num.is_zero()) {
            f[v] = Fraction {
                num: BigInt::from(-1),
                den: BigInt::from(2),
            };
            f[j] = Fraction {
                num: BigInt::from(2),
                den: BigInt::one(),
            };
            if rt.parent(v).is_some() {
                detached[v] = true;
            }
        } else if let Some(first) = attached.next() {
            let Fraction { mut num, mut den } = std::mem::replace(
                &mut f[v],
                Fraction {
                    num: BigInt::zero(),
                    den: BigInt::one(),
                },
            );
            for c in std::iter::once(first).chain(attached) {
                // num/den - den_c/num_c
                let fc = &f[c];
                num = &num * &fc.num - &den * &fc.den;
                den *= &fc.num;
                if den.is_negative() {
                    num = -num;
                    den = -den;
                }
            }
            f[v] = Fraction { num, den };
        }
    }
    let mut triple = InertiaTriple::default();
    for x in &f {
        match x.num.sign() {
            Sign::Minus => triple.neg += 1,
            Sign::NoSign => triple.zero += 1,
            Sign::Plus => triple.pos += 1,
        }
    }
    triple
}

/// Inertia of `L(T) - βI`, rooted at vertex 0.
pub fn inertia_at(t: &Tree, beta: &Rational) -> InertiaTriple {
    inertia_of(&root_at(t, 0), &-beta)
}

/// Number of eigenvalues in `[0, β)`.
pub fn count_below(t: &Tree, beta: &Rational) -> usize {
    inertia_at(t, beta).neg
}

/// Multiplicity of `β` as an eigenvalue.
pub fn count_eq(t: &Tree, beta: &Rational) -> usize {
    inertia_at(t, beta).zero
}

/// Number of eigenvalues in `[0, 1)`.
pub fn mu(t: &Tree) -> usize {
    count_below(t, &Rational::one())
}

/// Number of eigenvalues in `[2, n]`.
pub fn nu(t: &Tree) -> usize {
    t.n() - count_below(t, &int(2))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval ({0}, {0}) is empty")]
    EmptyInterval(Box<Rational>),
    #[error("interval endpoints out of order: {0} > {1}")]
    Reversed(Box<Rational>, Box<Rational>),
}

/// An interval with explicit endpoint closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Interval {
    /// `[lo, hi)`
    pub fn half_open(lo: Rational, hi: Rational) -> Interval {
        Interval {
            lo,
            hi,
            closed_lo: true,
            closed_hi: false,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Interval {
        Interval {
            lo,
            hi,
            closed_lo: true,
            closed_hi: true,
        }
    }
}

/// Counts eigenvalues in an interval with the given endpoint closure.
///
/// `m[a, b) = below(b) - below(a)`; a closed right end adds `eq(b)` and an
/// open left end subtracts `eq(a)`.
pub fn count_interval(t: &Tree, iv: &Interval) -> Result<usize, IntervalError> {
    if iv.lo > iv.hi {
        return Err(IntervalError::Reversed(Box::new(iv.lo.clone()), Box::new(iv.hi.clone())));
    }
    if iv.lo == iv.hi && !iv.closed_lo && !iv.closed_hi {
        return Err(IntervalError::EmptyInterval(Box::new(iv.lo.clone())));
    }
    if iv.lo == iv.hi {
        let at = inertia_at(t, &iv.lo);
        return Ok(if iv.closed_lo && iv.closed_hi { at.zero } else { 0 });
    }
    let lo = inertia_at(t, &iv.lo);
    let hi = inertia_at(t, &iv.hi);
    let mut count = hi.neg - lo.neg;
    if iv.closed_hi {
        count += hi.zero;
    }
    if !iv.closed_lo {
        count -= lo.zero;
    }
    Ok(count)
}

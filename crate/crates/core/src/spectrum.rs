//! Localization of the whole Laplacian spectrum by exact bisection.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::inertia::{inertia_at, InertiaTriple};
use crate::rational::{int, ratio, Rational, RationalJson};
use crate::tree::Tree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
}

/// Eigenvalues lying in `[lo, hi]`. When `lo == hi` the value is an exact
/// eigenvalue; otherwise the eigenvalues are strictly inside `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralBracket {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl SpectralBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Serialize)]
pub struct SpectralBracketJson {
    pub lo: RationalJson,
    pub hi: RationalJson,
    pub exact: bool,
    pub multiplicity: usize,
}

impl From<&SpectralBracket> for SpectralBracketJson {
    fn from(b: &SpectralBracket) -> Self {
        SpectralBracketJson {
            lo: (&b.lo).into(),
            hi: (&b.hi).into(),
            exact: b.is_exact(),
            multiplicity: b.multiplicity,
        }
    }
}

/// Memoized inertia probes on one tree.
struct Prober<'a> {
    tree: &'a Tree,
    cache: BTreeMap<Rational, InertiaTriple>,
}

impl Prober<'_> {
    fn at(&mut self, x: &Rational) -> InertiaTriple {
        if let Some(t) = self.cache.get(x) {
            return *t;
        }
        let t = inertia_at(self.tree, x);
        self.cache.insert(x.clone(), t);
        t
    }

    /// Eigenvalues strictly inside `(a, b)`.
    fn open_count(&mut self, a: &Rational, b: &Rational) -> usize {
        let at_a = self.at(a);
        let at_b = self.at(b);
        at_b.neg - at_a.neg - at_a.zero
    }
}

/// Brackets every eigenvalue of `L(t)` to width at most `tol`.
///
/// Bisection starts from `[0, n]` and only probes dyadic points, so every
/// count is exact. Eigenvalues hit exactly by a probe are reported as
/// degenerate brackets. Brackets are returned in ascending order and their
/// multiplicities sum to `n`.
pub fn localize_spectrum(t: &Tree, tol: &Rational) -> Result<Vec<SpectralBracket>, SpectrumError> {
    if !tol.is_positive() {
        return Err(SpectrumError::NonPositiveTolerance(tol.clone()));
    }
    let mut probe = Prober {
        tree: t,
        cache: BTreeMap::new(),
    };
    let lo = Rational::zero();
    let hi = int(t.n() as i64);
    let mut out = Vec::new();
    push_exact(&mut out, &mut probe, &lo);
    let inner = probe.open_count(&lo, &hi);
    bisect(&mut out, &mut probe, lo, hi.clone(), inner, tol);
    push_exact(&mut out, &mut probe, &hi);
    Ok(out)
}

fn push_exact(out: &mut Vec<SpectralBracket>, probe: &mut Prober<'_>, x: &Rational) {
    let m = probe.at(x).zero;
    if m > 0 {
        out.push(SpectralBracket {
            lo: x.clone(),
            hi: x.clone(),
            multiplicity: m,
        });
    }
}

fn bisect(
    out: &mut Vec<SpectralBracket>,
    probe: &mut Prober<'_>,
    lo: Rational,
    hi: Rational,
    count: usize,
    tol: &Rational,
) {
    if count == 0 {
        return;
    }
    if &hi - &lo <= *tol {
        out.push(SpectralBracket {
            lo,
            hi,
            multiplicity: count,
        });
        return;
    }
    let mid = (&lo + &hi) * ratio(1, 2);
    let left = probe.open_count(&lo, &mid);
    let at_mid = probe.at(&mid).zero;
    bisect(out, probe, lo, mid.clone(), left, tol);
    push_exact(out, probe, &mid);
    bisect(out, probe, mid, hi, count - left - at_mid, tol);
}

//! Dominating sets on trees: validation, an exact dynamic program,
//! brute-force enumeration and the bottom-up greedy.

use serde::Serialize;
use thiserror::Error;

use crate::rational::{Rational, RationalJson};
use crate::tree::{root_at, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DominationError {
    #[error("brute force limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("tree has adjacent degree-2 vertices: {pairs:?}")]
    NotReduced { pairs: Vec<(usize, usize)> },
    #[error("deep vertices {vertices:?} have degree below k = {k}")]
    DeepDegreeTooLow { k: usize, vertices: Vec<usize> },
    #[error("k must be at least 3, got {0}")]
    BadK(usize),
    #[error("epsilon must be positive")]
    BadEpsilon,
}

/// A vertex set kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DominatingSet(Vec<usize>);

impl DominatingSet {
    pub fn new(mut members: Vec<usize>) -> DominatingSet {
        members.sort_unstable();
        members.dedup();
        DominatingSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl FromIterator<usize> for DominatingSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        DominatingSet::new(iter.into_iter().collect())
    }
}

/// True iff every vertex is in `d` or adjacent to a member of `d`.
/// Out-of-range members make the set invalid.
pub fn is_dominating(t: &Tree, d: &[usize]) -> bool {
    let mut covered = vec![false; t.n()];
    for &v in d {
        if v >= t.n() {
            return false;
        }
        covered[v] = true;
        for &w in t.neighbors(v) {
            covered[w] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Vertices not dominated by `d`.
pub fn undominated(t: &Tree, d: &[usize]) -> Vec<usize> {
    (0..t.n())
        .filter(|&v| !d.contains(&v) && !t.neighbors(v).iter().any(|w| d.contains(w)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dp,
    Brute,
    Greedy,
    Alg2,
    Alg3,
}

/// Per-vertex state recorded when a vertex is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub vertex: usize,
    /// Weight held at decision time (zero for methods without weights).
    pub weight: Rational,
    /// Diagonal value right after the vertex was updated, if tracked.
    pub inertia: Option<Rational>,
    /// Weight sent to the parent; for the root this is the weight retained.
    pub pushed: Rational,
    pub joined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationCertificate {
    pub method: Method,
    pub set: DominatingSet,
    pub trace: Vec<TraceEntry>,
    /// Vertex the run was rooted at, if the method roots the tree.
    pub root: Option<usize>,
    /// Epsilon used by the weighted penultimate method.
    pub epsilon: Option<Rational>,
}

impl DominationCertificate {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Rebuilds the set from the trace; matches `set` for every method that
    /// records a trace.
    pub fn replay(&self) -> DominatingSet {
        self.trace.iter().filter(|e| e.joined).map(|e| e.vertex).collect()
    }
}

#[derive(Serialize)]
pub struct TraceEntryJson {
    pub vertex: usize,
    pub weight: RationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inertia: Option<RationalJson>,
    pub pushed: RationalJson,
    pub joined: bool,
}

impl From<&TraceEntry> for TraceEntryJson {
    fn from(e: &TraceEntry) -> Self {
        TraceEntryJson {
            vertex: e.vertex,
            weight: (&e.weight).into(),
            inertia: e.inertia.as_ref().map(Into::into),
            pushed: (&e.pushed).into(),
            joined: e.joined,
        }
    }
}

const INF: usize = usize::MAX / 4;

/// Minimum dominating set by the three-state tree DP:
/// in the set, dominated by a child, or waiting for the parent.
pub fn gamma_dp(t: &Tree) -> (usize, DominatingSet) {
    let rt = root_at(t, 0);
    let n = t.n();
    let mut inset = vec![0usize; n];
    let mut covered = vec![0usize; n];
    let mut waiting = vec![0usize; n];
    for &v in rt.bottom_up() {
        let kids = rt.children(v);
        inset[v] = 1 + kids
            .iter()
            .map(|&c| inset[c].min(covered[c]).min(waiting[c]))
            .sum::<usize>();
        waiting[v] = kids.iter().map(|&c| covered[c]).fold(0, |a, b| (a + b).min(INF));
        covered[v] = if kids.is_empty() {
            INF
        } else {
            let base: usize = kids.iter().map(|&c| inset[c].min(covered[c])).sum();
            let penalty = kids
                .iter()
                .map(|&c| inset[c].saturating_sub(covered[c]))
                .min()
                .unwrap();
            (base + penalty).min(INF)
        };
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        In,
        Covered,
        Waiting,
    }
    let root = rt.root();
    let mut state = vec![State::Covered; n];
    state[root] = if covered[root] <= inset[root] { State::Covered } else { State::In };
    let mut members = Vec::new();
    for &v in rt.bottom_up().iter().rev() {
        let kids = rt.children(v);
        match state[v] {
            State::In => {
                members.push(v);
                for &c in kids {
                    let best = inset[c].min(covered[c]).min(waiting[c]);
                    state[c] = if covered[c] == best {
                        State::Covered
                    } else if waiting[c] == best {
                        State::Waiting
                    } else {
                        State::In
                    };
                }
            }
            State::Covered => {
                for &c in kids {
                    state[c] = if covered[c] <= inset[c] { State::Covered } else { State::In };
                }
                if !kids.iter().any(|&c| state[c] == State::In) {
                    let &c = kids
                        .iter()
                        .min_by_key(|&&c| (inset[c] - covered[c], c))
                        .expect("covered state needs a child");
                    state[c] = State::In;
                }
            }
            State::Waiting => {
                for &c in kids {
                    state[c] = State::Covered;
                }
            }
        }
    }
    let gamma = inset[root].min(covered[root]);
    let set = DominatingSet::new(members);
    debug_assert_eq!(set.len(), gamma);
    (gamma, set)
}

pub const BRUTE_FORCE_MAX: usize = 20;

/// Smallest dominating set size by enumerating subsets in order of size.
pub fn gamma_bruteforce(t: &Tree) -> Result<usize, DominationError> {
    bruteforce_minimum(t).map(|d| d.len())
}

/// First dominating set found in size order, then colexicographic order.
pub fn bruteforce_minimum(t: &Tree) -> Result<DominatingSet, DominationError> {
    let n = t.n();
    if n > BRUTE_FORCE_MAX {
        return Err(DominationError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| t.neighbors(v).iter().fold(1u32 << v, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for k in 1..=n {
        // Gosper's hack walks all k-subsets of an n-set.
        let mut s: u32 = (1u32 << k) - 1;
        while s <= full {
            let mut cover = 0u32;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                cover |= closed[v];
                bits &= bits - 1;
            }
            if cover == full {
                return Ok((0..n).filter(|&v| s >> v & 1 == 1).collect());
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set dominates")
}

/// Bottom-up greedy from root 0: a vertex joins when some child is still
/// undominated; an undominated root joins at the end.
pub fn greedy_dominating(t: &Tree) -> DominationCertificate {
    let rt = root_at(t, 0);
    let mut dominated = vec![false; t.n()];
    let mut joined = vec![false; t.n()];
    let mut trace = Vec::with_capacity(t.n());
    let zero = Rational::from_integer(0.into());
    for &v in rt.bottom_up() {
        let join = rt.children(v).iter().any(|&c| !dominated[c])
            || (rt.parent(v).is_none() && !dominated[v]);
        if join {
            joined[v] = true;
            dominated[v] = true;
            for &w in t.neighbors(v) {
                dominated[w] = true;
            }
        }
        trace.push(TraceEntry {
            vertex: v,
            weight: zero.clone(),
            inertia: None,
            pushed: zero.clone(),
            joined: join,
        });
    }
    let set = DominatingSet::new((0..t.n()).filter(|&v| joined[v]).collect());
    DominationCertificate {
        method: Method::Greedy,
        set,
        trace,
        root: Some(rt.root()),
        epsilon: None,
    }
}

pub fn dp_certificate(t: &Tree) -> DominationCertificate {
    let (_, set) = gamma_dp(t);
    DominationCertificate {
        method: Method::Dp,
        set,
        trace: Vec::new(),
        root: Some(0),
        epsilon: None,
    }
}

pub fn brute_certificate(t: &Tree) -> Result<DominationCertificate, DominationError> {
    Ok(DominationCertificate {
        method: Method::Brute,
        set: bruteforce_minimum(t)?,
        trace: Vec::new(),
        root: None,
        epsilon: None,
    })
}

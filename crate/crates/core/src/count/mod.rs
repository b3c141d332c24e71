//! Exact homomorphism counting.
//!
//! [`hom_count`] is the general engine: weighted, list-constrained and exact.
//! The specialized counters ([`ind_count`], [`wr_count`], [`chrom_eval`])
//! are separate code paths and are cross-checked against it in the tests.

mod chromatic;
mod closed_form;
mod independent;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::{AddAssign, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::num::{Count, Rat};
use crate::target::{widom, TargetGraph};

pub use chromatic::{chrom_eval, chrom_eval_with, chrom_poly, chrom_poly_with, ChromPoly};
pub use closed_form::{cycle_chrom_formula, path_ind_fib};
pub use independent::{ind_count, ind_count_with};

/// Per-vertex lists of allowed target vertices. Vertices without an entry
/// may map anywhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListConstraint {
    allowed: BTreeMap<usize, Vec<usize>>,
}

impl ListConstraint {
    pub fn new() -> Self {
        Self::default()
    }

    /// Restricts `v` to `targets`, intersecting with any earlier restriction.
    /// An empty resulting set is rejected.
    pub fn restrict(&mut self, v: usize, targets: &[usize]) -> Result<()> {
        let mut set: Vec<usize> = targets.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(prev) = self.allowed.get(&v) {
            set.retain(|t| prev.contains(t));
        }
        if set.is_empty() {
            return Err(Error::EmptyAllowedSet(v));
        }
        self.allowed.insert(v, set);
        Ok(())
    }

    /// Builder form of [`ListConstraint::restrict`].
    pub fn with(mut self, v: usize, targets: &[usize]) -> Result<Self> {
        self.restrict(v, targets)?;
        Ok(self)
    }

    /// Shorthand for pinning several vertices to single targets.
    pub fn pinned(pins: &[(usize, usize)]) -> Result<Self> {
        let mut c = Self::new();
        for &(v, t) in pins {
            c.restrict(v, &[t])?;
        }
        Ok(c)
    }

    pub fn allowed(&self, v: usize) -> Option<&[usize]> {
        self.allowed.get(&v).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.allowed.iter().map(|(&v, t)| (v, t.as_slice()))
    }

    pub(crate) fn validate(&self, n: usize, k: usize) -> Result<()> {
        for (&v, targets) in &self.allowed {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if let Some(&t) = targets.iter().find(|&&t| t >= k) {
                return Err(Error::TargetOutOfRange { target: t, k });
            }
        }
        Ok(())
    }
}

/// Size-guard overrides. The default enforces every guard.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub override_guards: bool,
}

/// Largest `v(H) * log2(k)` accepted without an override.
pub const HOM_GUARD_BITS: f64 = 64.0;

fn check_hom_guard(n: usize, k: usize, limits: Limits) -> Result<()> {
    if limits.override_guards || k <= 1 {
        return Ok(());
    }
    let bits = n as f64 * (k as f64).log2();
    if bits > HOM_GUARD_BITS {
        return Err(Error::SizeGuard(format!(
            "v(H) * log2(k) = {bits:.1} exceeds {HOM_GUARD_BITS}"
        )));
    }
    Ok(())
}

trait Weight: Clone + Zero + One + AddAssign + for<'a> Mul<&'a Self, Output = Self> {}
impl<T: Clone + Zero + One + AddAssign + for<'a> Mul<&'a T, Output = T>> Weight for T {}

/// Backtracking plan for one connected component.
struct Plan {
    /// Vertices in visiting order.
    order: Vec<usize>,
    /// For each position, the positions of earlier neighbors.
    back: Vec<Vec<usize>>,
    /// For each position, the allowed target ids.
    allowed: Vec<Vec<usize>>,
    /// For each depth, the earlier positions that still have a neighbor at
    /// this depth or later. The count below a depth depends only on their
    /// assignment.
    boundary: Vec<Vec<usize>>,
}

/// Subtrees with at least this many unplaced vertices are memoized on the
/// boundary assignment.
const MEMO_MIN_REMAINING: usize = 10;

/// BFS from a maximum-degree vertex (smallest id on ties), neighbors in
/// ascending order.
fn bfs_order(h: &Graph, component: &[usize]) -> Vec<usize> {
    let start = *component
        .iter()
        .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
        .expect("nonempty component");
    let mut seen = vec![false; h.n()];
    seen[start] = true;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in h.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order
}

fn make_plan(h: &Graph, order: Vec<usize>, c: &ListConstraint, k: usize) -> Plan {
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            h.neighbors(v)
                .iter()
                .map(|&u| pos[u])
                .filter(|&p| p < i)
                .collect()
        })
        .collect();
    let allowed = order
        .iter()
        .map(|&v| {
            c.allowed(v)
                .map_or_else(|| (0..k).collect(), <[usize]>::to_vec)
        })
        .collect();
    let last_neighbor: Vec<usize> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| h.neighbors(v).iter().map(|&u| pos[u]).fold(i, usize::max))
        .collect();
    let boundary = (0..=order.len())
        .map(|d| (0..d).filter(|&p| last_neighbor[p] >= d).collect())
        .collect();
    Plan {
        order,
        back,
        allowed,
        boundary,
    }
}

fn count_plan<T: Weight>(plan: &Plan, w: &[Vec<T>]) -> T {
    struct Walk<'a, T> {
        plan: &'a Plan,
        w: &'a [Vec<T>],
        assign: Vec<usize>,
        memo: HashMap<(usize, Vec<usize>), T>,
    }

    impl<T: Weight> Walk<'_, T> {
        fn rec(&mut self, depth: usize) -> T {
            let plan = self.plan;
            if depth == plan.order.len() {
                return T::one();
            }
            let key = (plan.order.len() - depth >= MEMO_MIN_REMAINING).then(|| {
                let state = plan.boundary[depth]
                    .iter()
                    .map(|&p| self.assign[p])
                    .collect();
                (depth, state)
            });
            if let Some(hit) = key.as_ref().and_then(|k| self.memo.get(k)) {
                return hit.clone();
            }
            let mut total = T::zero();
            'targets: for &t in &plan.allowed[depth] {
                let mut factor = T::one();
                for &b in &plan.back[depth] {
                    let x = &self.w[self.assign[b]][t];
                    if x.is_zero() {
                        continue 'targets;
                    }
                    factor = factor * x;
                }
                self.assign[depth] = t;
                let sub = self.rec(depth + 1);
                if !sub.is_zero() {
                    total += factor * &sub;
                }
            }
            if let Some(k) = key {
                self.memo.insert(k, total.clone());
            }
            total
        }
    }

    let mut walk = Walk {
        plan,
        w,
        assign: vec![0; plan.order.len()],
        memo: HashMap::new(),
    };
    walk.rec(0)
}

/// Integer-scaled weights plus an upper bound on the bit size of any
/// intermediate count.
struct Scaled {
    weights: Vec<Vec<BigUint>>,
    denom: BigUint,
    fits_u128: bool,
}

fn scale(h: &Graph, g: &TargetGraph) -> Scaled {
    let (weights, denom) = g.scaled_integer_weights();
    let wbits = TargetGraph::scaled_weight_bits(&weights);
    let kbits = (g.k().max(1) as f64).log2().ceil() as u64;
    let bound = h.n() as u64 * kbits + h.edge_count() as u64 * wbits;
    Scaled {
        weights,
        denom,
        fits_u128: bound < 127,
    }
}

fn count_components<T: Weight>(h: &Graph, c: &ListConstraint, k: usize, w: &[Vec<T>]) -> T {
    let mut total = T::one();
    for comp in h.connected_components() {
        let plan = make_plan(h, bfs_order(h, &comp), c, k);
        let part = count_plan(&plan, w);
        if part.is_zero() {
            return T::zero();
        }
        total = total * &part;
    }
    total
}

fn scaled_count(h: &Graph, g: &TargetGraph, c: &ListConstraint, naive: bool) -> (BigUint, BigUint) {
    let s = scale(h, g);
    let k = g.k();
    let run = |h: &Graph| -> BigUint {
        if s.fits_u128 {
            let w: Vec<Vec<u128>> = s
                .weights
                .iter()
                .map(|r| r.iter().map(|x| x.to_u128().unwrap()).collect())
                .collect();
            if naive {
                BigUint::from(count_plan(&make_plan(h, (0..h.n()).collect(), c, k), &w))
            } else {
                BigUint::from(count_components(h, c, k, &w))
            }
        } else if naive {
            count_plan(&make_plan(h, (0..h.n()).collect(), c, k), &s.weights)
        } else {
            count_components(h, c, k, &s.weights)
        }
    };
    (run(h), s.denom.pow(h.edge_count() as u32))
}

/// Unconstrained count into integer weights small enough that every partial
/// sum fits `u128`. The caller guarantees the bound.
pub(crate) fn hom_count_u128(h: &Graph, w: &[Vec<u128>]) -> u128 {
    count_components(h, &ListConstraint::new(), w.len(), w)
}

/// Weighted homomorphism count `Σ_φ Π_{uv ∈ E(H)} w[φ(u)][φ(v)]` over maps
/// respecting `c`, with the default size guard.
pub fn hom_count(h: &Graph, g: &TargetGraph, c: &ListConstraint) -> Result<Rat> {
    hom_count_with(h, g, c, Limits::default())
}

pub fn hom_count_with(
    h: &Graph,
    g: &TargetGraph,
    c: &ListConstraint,
    limits: Limits,
) -> Result<Rat> {
    check_hom_guard(h.n(), g.k(), limits)?;
    c.validate(h.n(), g.k())?;
    if h.n() == 0 {
        return Ok(Rat::one());
    }
    let (num, den) = scaled_count(h, g, c, false);
    Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
}

/// Single-pass backtracking over vertices in id order, without component
/// factorization or the BFS ordering. Reference path for [`hom_count`].
pub fn hom_count_naive(h: &Graph, g: &TargetGraph, c: &ListConstraint) -> Result<Rat> {
    check_hom_guard(h.n(), g.k(), Limits::default())?;
    c.validate(h.n(), g.k())?;
    if h.n() == 0 {
        return Ok(Rat::one());
    }
    let (num, den) = scaled_count(h, g, c, true);
    Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
}

/// Integer homomorphism count into a 0/1 target.
pub fn hom_count_simple(h: &Graph, g: &TargetGraph, c: &ListConstraint) -> Result<Count> {
    hom_count_simple_with(h, g, c, Limits::default())
}

pub fn hom_count_simple_with(
    h: &Graph,
    g: &TargetGraph,
    c: &ListConstraint,
    limits: Limits,
) -> Result<Count> {
    if !g.is_simple() {
        return Err(Error::InvalidArgument(
            "integer hom count requires a 0/1 target".into(),
        ));
    }
    let r = hom_count_with(h, g, c, limits)?;
    Ok(Count(r.numer().to_biguint().expect("nonnegative")))
}

/// Widom-Rowlinson configurations: homomorphisms into the looped `P_3`,
/// with target ids from [`crate::target::widom`].
pub fn wr_count(h: &Graph, c: &ListConstraint) -> Result<Count> {
    wr_count_with(h, c, Limits::default())
}

pub fn wr_count_with(h: &Graph, c: &ListConstraint, limits: Limits) -> Result<Count> {
    for (_, targets) in c.iter() {
        if let Some(&t) = targets.iter().find(|&&t| t > widom::C) {
            return Err(Error::TargetOutOfRange { target: t, k: 3 });
        }
    }
    hom_count_simple_with(h, &TargetGraph::widom_rowlinson(), c, limits)
}

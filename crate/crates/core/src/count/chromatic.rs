use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{hom_count_simple_with, Limits, ListConstraint};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::num::Count;
use crate::target::TargetGraph;

/// Largest edge count accepted by [`chrom_poly`] without an override.
pub const CHROM_GUARD_EDGES: usize = 40;
/// Hard ceiling: coefficients are bounded by `2^e` and stored in `i128`.
const CHROM_MAX_EDGES: usize = 120;

/// A chromatic polynomial, coefficients in ascending order of degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromPoly {
    coeffs: Vec<i128>,
}

impl Serialize for ChromPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl ChromPoly {
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &q + BigInt::from(c))
    }

    /// Evaluation as a count; chromatic polynomials are nonnegative at
    /// nonnegative integers.
    pub fn eval_count(&self, q: u64) -> Count {
        let v = self.eval(q);
        Count(
            v.to_biguint()
                .expect("chromatic polynomial is nonnegative at integers"),
        )
    }

    /// Degree `n`, monic, alternating signs, zero constant term for `n >= 1`.
    pub fn satisfies_invariants(&self, n: usize) -> bool {
        if self.degree() != n || *self.coeffs.last().unwrap() != 1 {
            return false;
        }
        if n >= 1 && self.coeffs[0] != 0 {
            return false;
        }
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| if (n - i).is_multiple_of(2) { c >= 0 } else { c <= 0 })
    }

    fn monomial(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        ChromPoly { coeffs }
    }

    fn mul(&self, other: &ChromPoly) -> ChromPoly {
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ChromPoly { coeffs }
    }

    /// Multiplies by `(q - c)`.
    fn mul_linear(&self, c: i128) -> ChromPoly {
        let mut coeffs = vec![0i128; self.coeffs.len() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] += a;
            coeffs[i] -= c * a;
        }
        ChromPoly { coeffs }
    }

    fn sub(&self, other: &ChromPoly) -> ChromPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs: Vec<i128> = (0..len)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) - other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        ChromPoly { coeffs }
    }
}

/// A connected graph on at most 128 vertices as adjacency bitmasks.
type Masks = Vec<u128>;

struct Solver {
    memo: HashMap<Masks, ChromPoly>,
}

fn popcount(m: u128) -> usize {
    m.count_ones() as usize
}

/// Connected components of the graph restricted to `alive`.
fn components(adj: &[u128], alive: u128) -> Vec<u128> {
    let mut rest = alive;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u128 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

/// Restricts to `keep` and renumbers order-preservingly.
fn compress(adj: &[u128], keep: u128) -> Masks {
    let ids: Vec<usize> = (0..adj.len()).filter(|&v| keep >> v & 1 == 1).collect();
    ids.iter()
        .map(|&v| {
            ids.iter()
                .enumerate()
                .filter(|&(_, &u)| adj[v] >> u & 1 == 1)
                .fold(0u128, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

impl Solver {
    /// Chromatic polynomial of an arbitrary graph given as masks.
    fn graph(&mut self, adj: &[u128]) -> ChromPoly {
        let n = adj.len();
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let mut result = ChromPoly::monomial(0);
        let mut isolated = 0;
        for comp in components(adj, all) {
            if popcount(comp) == 1 {
                isolated += 1;
            } else {
                let sub = compress(adj, comp);
                let p = self.connected(sub);
                result = result.mul(&p);
            }
        }
        result.mul(&ChromPoly::monomial(isolated))
    }

    /// Connected graph with at least two vertices.
    fn connected(&mut self, adj: Masks) -> ChromPoly {
        if let Some(p) = self.memo.get(&adj) {
            return p.clone();
        }
        let n = adj.len();
        let edges: usize = adj.iter().map(|&m| popcount(m)).sum::<usize>() / 2;
        let p = if edges + 1 == n {
            // Trees: q (q-1)^{n-1}.
            (1..n).fold(ChromPoly::monomial(1), |p, _| p.mul_linear(1))
        } else if let Some(v) = (0..n).find(|&v| is_clique(&adj, adj[v])) {
            // A vertex whose neighborhood is a clique of size d contributes (q - d).
            let d = popcount(adj[v]) as i128;
            let all = (1u128 << n) - 1;
            let rest = compress(&adj, all & !(1 << v));
            self.graph(&rest).mul_linear(d)
        } else {
            // Deletion-contraction on an edge at a maximum-degree vertex.
            let u = (0..n).max_by_key(|&v| popcount(adj[v])).unwrap();
            let v = (0..n)
                .filter(|&w| adj[u] >> w & 1 == 1)
                .max_by_key(|&w| popcount(adj[w]))
                .unwrap();
            let mut deleted = adj.clone();
            deleted[u] &= !(1 << v);
            deleted[v] &= !(1 << u);
            let contracted = contract(&adj, u, v);
            let a = self.graph(&deleted);
            let b = self.graph(&contracted);
            a.sub(&b)
        };
        self.memo.insert(adj, p.clone());
        p
    }
}

fn is_clique(adj: &[u128], set: u128) -> bool {
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & set != set & !(1 << v) {
            return false;
        }
    }
    true
}

/// Merges the larger of `u, v` into the smaller; ids above it shift down.
fn contract(adj: &[u128], u: usize, v: usize) -> Masks {
    let (keep, gone) = (u.min(v), u.max(v));
    let mut merged = adj.to_vec();
    merged[keep] |= merged[gone];
    merged[keep] &= !(1 << keep) & !(1 << gone);
    for (x, m) in merged.iter_mut().enumerate() {
        if x != keep && *m >> gone & 1 == 1 {
            *m = (*m & !(1 << gone)) | 1 << keep;
        }
    }
    let all = (1u128 << adj.len()) - 1;
    compress(&merged, all & !(1 << gone))
}

/// Chromatic polynomial by deletion-contraction, with the default edge guard.
pub fn chrom_poly(h: &Graph) -> Result<ChromPoly> {
    chrom_poly_with(h, Limits::default())
}

pub fn chrom_poly_with(h: &Graph, limits: Limits) -> Result<ChromPoly> {
    let e = h.edge_count();
    let cap = if limits.override_guards {
        CHROM_MAX_EDGES
    } else {
        CHROM_GUARD_EDGES
    };
    if e > cap {
        return Err(Error::SizeGuard(format!("e(H) = {e} exceeds {cap}")));
    }
    let mut solver = Solver {
        memo: HashMap::new(),
    };
    let mut result = ChromPoly::monomial(0);
    let mut isolated = 0;
    for comp in h.connected_components() {
        if comp.len() == 1 {
            isolated += 1;
            continue;
        }
        // Connected with at most 120 edges, so at most 121 vertices.
        let (sub, _) = h.induced(&comp);
        let masks: Masks = (0..sub.n())
            .map(|v| sub.neighbors(v).iter().fold(0u128, |m, &u| m | 1 << u))
            .collect();
        result = result.mul(&solver.connected(masks));
    }
    Ok(result.mul(&ChromPoly::monomial(isolated)))
}

/// `ch(H, q)`: from the chromatic polynomial when within its guard,
/// otherwise by counting homomorphisms into `K_q`.
pub fn chrom_eval(h: &Graph, q: u64) -> Result<Count> {
    chrom_eval_with(h, q, Limits::default())
}

pub fn chrom_eval_with(h: &Graph, q: u64, limits: Limits) -> Result<Count> {
    match chrom_poly_with(h, limits) {
        Ok(p) => Ok(p.eval_count(q)),
        Err(Error::SizeGuard(_)) => {
            let q = usize::try_from(q).map_err(|_| Error::InvalidArgument("q too large".into()))?;
            hom_count_simple_with(h, &TargetGraph::complete(q), &ListConstraint::new(), limits)
        }
        Err(e) => Err(e),
    }
}

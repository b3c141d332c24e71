use std::collections::HashMap;

use super::{Limits, ListConstraint};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::num::Count;
use crate::target::hardcore;

/// Hard limit of the bitmask representation: counts up to `2^127` fit `u128`.
const MAX_VERTICES: usize = 127;
/// Components at least this large are memoized by vertex mask.
const MEMO_THRESHOLD: u32 = 24;

/// Number of independent sets of `h` compatible with `c`, whose target ids
/// are [`hardcore::IN`] and [`hardcore::OUT`].
///
/// Branches on a maximum-degree vertex, `i(H) = i(H - v) + i(H - v - N(v))`,
/// and multiplies over connected components.
pub fn ind_count(h: &Graph, c: &ListConstraint) -> Result<Count> {
    ind_count_with(h, c, Limits::default())
}

pub fn ind_count_with(h: &Graph, c: &ListConstraint, limits: Limits) -> Result<Count> {
    let n = h.n();
    if n > MAX_VERTICES || (n > 64 && !limits.override_guards) {
        return Err(Error::SizeGuard(format!(
            "independent-set counter accepts at most {} vertices",
            if limits.override_guards {
                MAX_VERTICES
            } else {
                64
            }
        )));
    }
    c.validate(n, 2)?;
    let adj = h.adjacency_masks();
    let mut alive: u128 = if n == 0 { 0 } else { u128::MAX >> (128 - n) };
    let mut forced_in = 0u128;
    for (v, targets) in c.iter() {
        match (
            targets.contains(&hardcore::IN),
            targets.contains(&hardcore::OUT),
        ) {
            (true, false) => forced_in |= 1 << v,
            (false, true) => alive &= !(1 << v),
            _ => {}
        }
    }
    let mut blocked = 0u128;
    let mut rest = forced_in;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & forced_in != 0 {
            return Ok(Count::zero());
        }
        blocked |= adj[v];
    }
    // A neighbor of a forced-in vertex must be out.
    alive &= !forced_in & !blocked;
    let mut counter = Counter {
        adj: &adj,
        memo: HashMap::new(),
    };
    Ok(Count::from(counter.count(alive)))
}

struct Counter<'a> {
    adj: &'a [u128],
    memo: HashMap<u128, u128>,
}

impl Counter<'_> {
    fn count(&mut self, alive: u128) -> u128 {
        if alive == 0 {
            return 1;
        }
        let start = alive.trailing_zeros() as usize;
        let comp = self.component(start, alive);
        let rest = alive & !comp;
        let here = self.count_connected(comp);
        if rest == 0 || here == 0 {
            here
        } else {
            here * self.count(rest)
        }
    }

    fn component(&self, start: usize, alive: u128) -> u128 {
        let mut comp = 1u128 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        comp
    }

    fn count_connected(&mut self, comp: u128) -> u128 {
        let size = comp.count_ones();
        if size == 1 {
            return 2;
        }
        if size >= MEMO_THRESHOLD {
            if let Some(&v) = self.memo.get(&comp) {
                return v;
            }
        }
        let mut best = 0usize;
        let mut best_deg = 0u32;
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & comp).count_ones();
            if d > best_deg {
                best = v;
                best_deg = d;
            }
        }
        let without = comp & !(1 << best);
        let result = self.count(without) + self.count(without & !self.adj[best]);
        if size >= MEMO_THRESHOLD {
            self.memo.insert(comp, result);
        }
        result
    }
}

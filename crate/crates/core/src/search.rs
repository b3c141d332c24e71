//! Instance supply and the hunt for targets violating edge monotonicity,
//! `hom(H,G) / hom(H-e,G) >= hom(K_2,G) / v(G)^2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::{hom_count, hom_count_u128, ListConstraint};
use crate::error::{Error, Result};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::num::Rat;
use crate::target::TargetGraph;
use crate::verify::target_label;

/// Largest `n` for [`enumerate_graphs`]: 2^28 labeled graphs.
pub const ENUM_MAX_N: usize = 8;
/// Largest `n` for [`edge_mono_scan`].
pub const SCAN_MAX_N: usize = 7;
/// Weight grid denominator: sampled entries are `0, 1/10, ..., 10/10`.
pub const WEIGHT_STEPS: u32 = 10;
/// Samples per parallel batch in [`find_counterexample`].
const BATCH: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphFilter {
    pub connected: bool,
    pub bipartite: bool,
}

impl GraphFilter {
    pub fn accepts(&self, h: &Graph) -> bool {
        (!self.connected || h.is_connected()) && (!self.bipartite || h.is_bipartite())
    }
}

/// All labeled graphs on `n` vertices passing `filter`, in edge-mask order
/// (bit `i` is the `i`-th pair in [`Graph::pair_index`] order).
pub fn enumerate_graphs(n: usize, filter: GraphFilter) -> Result<impl Iterator<Item = Graph>> {
    if !(1..=ENUM_MAX_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "enumeration needs 1 <= n <= {ENUM_MAX_N}, got {n}"
        )));
    }
    let total: u64 = 1 << (n * (n - 1) / 2);
    Ok((0..total)
        .map(move |m| Graph::from_mask(n, m))
        .filter(move |h| filter.accepts(h)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// graph6 of `H`.
    pub h: String,
    pub edge: (usize, usize),
    pub ratio: Rat,
    pub threshold: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub target: String,
    pub max_n: usize,
    pub bipartite_only: bool,
    /// Graphs with at least one edge that were examined.
    pub tested_h: u64,
    /// (graph, edge) pairs with a defined ratio.
    pub tested_pairs: u64,
    /// (graph, edge) pairs skipped because `hom(H-e,G) = 0`.
    pub skipped_zero: u64,
    pub threshold: Rat,
    /// The minimum ratio seen, first in enumeration order on ties.
    pub worst: Option<Witness>,
    pub satisfies_all: bool,
}

/// `hom(K_2,G) / v(G)^2` with weights summed over ordered pairs.
pub fn edge_threshold(g: &TargetGraph) -> Rat {
    let k = Rat::integer(g.k() as u64);
    g.edge_weight_sum()
        .checked_div(&(&k * &k))
        .unwrap_or_else(Rat::zero)
}

/// Per-graph partial result: (pairs, skipped, local minimum).
type Partial = (u64, u64, Option<Witness>);

fn scan_graph(h: &Graph, g: &TargetGraph, threshold: &Rat) -> Result<Partial> {
    let none = ListConstraint::new();
    let whole = hom_count(h, g, &none)?;
    let (mut pairs, mut skipped, mut worst): Partial = (0, 0, None);
    for &(u, v) in h.edges() {
        let minus = hom_count(&h.without_edge(u, v)?, g, &none)?;
        let Some(ratio) = whole.checked_div(&minus) else {
            skipped += 1;
            continue;
        };
        pairs += 1;
        if worst.as_ref().is_none_or(|w| ratio < w.ratio) {
            worst = Some(Witness {
                h: to_graph6(h),
                edge: (u, v),
                ratio,
                threshold: threshold.clone(),
            });
        }
    }
    Ok((pairs, skipped, worst))
}

/// Exhaustive check of edge monotonicity into `g` over every graph with at
/// most `max_n` vertices and every edge.
pub fn edge_mono_scan(g: &TargetGraph, max_n: usize, bipartite_only: bool) -> Result<ScanResult> {
    if max_n > SCAN_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "scan needs max_n <= {SCAN_MAX_N}, got {max_n}"
        )));
    }
    let threshold = edge_threshold(g);
    let mut result = ScanResult {
        target: target_label(g),
        max_n,
        bipartite_only,
        tested_h: 0,
        tested_pairs: 0,
        skipped_zero: 0,
        threshold: threshold.clone(),
        worst: None,
        satisfies_all: true,
    };
    for n in 2..=max_n {
        let total: u64 = 1 << (n * (n - 1) / 2);
        // Mask 0 is the edgeless graph.
        let parts: Vec<Result<(u64, Partial)>> = (1..total)
            .into_par_iter()
            .map(|m| {
                let h = Graph::from_mask(n, m);
                if bipartite_only && !h.is_bipartite() {
                    return Ok((0, (0, 0, None)));
                }
                Ok((1, scan_graph(&h, g, &threshold)?))
            })
            .collect();
        for part in parts {
            let (graphs, (pairs, skipped, worst)) = part?;
            result.tested_h += graphs;
            result.tested_pairs += pairs;
            result.skipped_zero += skipped;
            if let Some(w) = worst {
                if result
                    .worst
                    .as_ref()
                    .is_none_or(|cur| w.ratio < cur.ratio)
                {
                    result.worst = Some(w);
                }
            }
        }
    }
    result.satisfies_all = result.worst.as_ref().is_none_or(|w| w.ratio >= threshold);
    Ok(result)
}

/// [`edge_mono_scan`] for every simple (loopless) target on `k` vertices.
pub fn simple_target_scan(k: usize, max_n: usize, bipartite_only: bool) -> Result<Vec<ScanResult>> {
    enumerate_graphs(k, GraphFilter::default())?
        .map(|t| {
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|i| (0..k).map(|j| t.has_edge(i, j) as u32).collect())
                .collect();
            let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
            let g = TargetGraph::from_adjacency(&refs)?;
            let mut r = edge_mono_scan(&g, max_n, bipartite_only)?;
            r.target = format!("{} ({})", g.describe(), to_graph6(&t));
            Ok(r)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Weighted counterexample search.

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub target: TargetGraph,
    pub edge: (usize, usize),
    pub ratio: Rat,
    pub threshold: Rat,
    pub hom_h: Rat,
    pub hom_h_minus_e: Rat,
    pub seed: u64,
    pub sample_index: u64,
}

/// Fixture manifest stored next to the target file of a counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(rename = "H")]
    pub h: String,
    pub edge: (usize, usize),
    pub ratio: Rat,
    pub threshold: Rat,
    /// Absent for witnesses not produced by the sampler.
    pub seed: Option<u64>,
    pub sample_index: Option<u64>,
    pub k: usize,
}

impl Counterexample {
    /// Recomputes both counts from scratch and confirms the strict violation.
    pub fn reverify(&self, h: &Graph) -> Result<bool> {
        let (u, v) = self.edge;
        let none = ListConstraint::new();
        let whole = hom_count(h, &self.target, &none)?;
        let minus = hom_count(&h.without_edge(u, v)?, &self.target, &none)?;
        let Some(ratio) = whole.checked_div(&minus) else {
            return Ok(false);
        };
        let threshold = edge_threshold(&self.target);
        Ok(ratio == self.ratio && threshold == self.threshold && ratio < threshold)
    }

    pub fn manifest(&self, h: &Graph) -> Manifest {
        Manifest {
            h: to_graph6(h),
            edge: self.edge,
            ratio: self.ratio.clone(),
            threshold: self.threshold.clone(),
            seed: Some(self.seed),
            sample_index: Some(self.sample_index),
            k: self.target.k(),
        }
    }
}

/// Integer weights `0..=10` of sample `index`: the upper triangle (with the
/// diagonal) in row order, drawn from stream `index` of a ChaCha8 generator
/// seeded with `seed`.
pub fn sample_weights(k: usize, seed: u64, index: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut w = vec![vec![0u32; k]; k];
    for i in 0..k {
        for j in i..k {
            let x = rng.gen_range(0..=WEIGHT_STEPS);
            w[i][j] = x;
            w[j][i] = x;
        }
    }
    w
}

/// The weighted target of sample `index`.
pub fn sample_target(k: usize, seed: u64, index: u64) -> TargetGraph {
    let w = sample_weights(k, seed, index)
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rat::new(x, WEIGHT_STEPS)).collect())
        .collect();
    TargetGraph::new(w).expect("sampled weights are symmetric and nonnegative")
}

/// First violated edge of `h` for integer weights `w` (scaled by 10), by
/// cross-multiplication: `I(H) k^2 < s I(H-e)` where `I` counts with the
/// integer weights and `s` is their total.
fn first_violation(h: &Graph, minus: &[Graph], w: &[Vec<u32>]) -> Option<usize> {
    let k = w.len() as u128;
    let wide: Vec<Vec<u128>> = w
        .iter()
        .map(|r| r.iter().map(|&x| x as u128).collect())
        .collect();
    let s: u128 = wide.iter().flatten().sum();
    let whole = hom_count_u128(h, &wide);
    minus.iter().position(|m| {
        let rest = hom_count_u128(m, &wide);
        rest > 0 && whole * k * k < s * rest
    })
}

/// The minimum-ratio edge of `h` violating edge monotonicity into `g`, if
/// any, by exact counts.
pub fn edge_violation(h: &Graph, g: &TargetGraph) -> Result<Option<Witness>> {
    let threshold = edge_threshold(g);
    let (_, _, worst) = scan_graph(h, g, &threshold)?;
    Ok(worst.filter(|w| w.ratio < threshold))
}

/// Result of [`grid_census`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCensus {
    pub k: usize,
    /// Number of grid targets examined: `11^{k(k+1)/2}`.
    pub targets: u64,
    pub violating: u64,
    /// Upper-triangle entries (row order, scaled by 10) of the first
    /// violating target in odometer order.
    pub first: Option<Vec<u32>>,
}

/// Largest `k` accepted by [`grid_census`] (11^6 targets).
pub const CENSUS_MAX_K: usize = 3;

/// Every symmetric target on `k` vertices with entries in the sampling grid,
/// checked for a violating edge of `h`.
pub fn grid_census(h: &Graph, k: usize) -> Result<GridCensus> {
    if !(1..=CENSUS_MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "grid census needs 1 <= k <= {CENSUS_MAX_K}, got {k}"
        )));
    }
    let cells = k * (k + 1) / 2;
    let base = WEIGHT_STEPS as u64 + 1;
    let targets = base.pow(cells as u32);
    let minus: Vec<Graph> = h
        .edges()
        .iter()
        .map(|&(u, v)| h.without_edge(u, v))
        .collect::<Result<_>>()?;
    let decode = |mut idx: u64| {
        let mut tri = vec![0u32; cells];
        for t in tri.iter_mut() {
            *t = (idx % base) as u32;
            idx /= base;
        }
        tri
    };
    let matrix = |tri: &[u32]| {
        let mut w = vec![vec![0u32; k]; k];
        let mut it = tri.iter();
        for i in 0..k {
            for j in i..k {
                let x = *it.next().unwrap();
                w[i][j] = x;
                w[j][i] = x;
            }
        }
        w
    };
    let violating: Vec<u64> = (0..targets)
        .into_par_iter()
        .filter(|&i| first_violation(h, &minus, &matrix(&decode(i))).is_some())
        .collect();
    Ok(GridCensus {
        k,
        targets,
        violating: violating.len() as u64,
        first: violating.first().map(|&i| decode(i)),
    })
}

/// Samples `samples` weighted targets on `k` vertices and returns the
/// lowest-index one violating edge monotonicity for some edge of `h`.
///
/// The result depends only on the arguments, not on the thread count.
pub fn find_counterexample(
    h: &Graph,
    k: usize,
    samples: u64,
    seed: u64,
) -> Result<Option<Counterexample>> {
    if !(1..=5).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "k must be in 1..=5, got {k}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    // Keep every intermediate of the integer path below 2^120.
    let bits =
        h.n() as f64 * (k as f64).log2() + h.edge_count() as f64 * (WEIGHT_STEPS as f64).log2();
    if bits + 2.0 * (k as f64).log2() + 7.0 > 120.0 {
        return Err(Error::SizeGuard(format!(
            "graph too large for the sampled search ({bits:.0} bits)"
        )));
    }
    let minus: Vec<Graph> = h
        .edges()
        .iter()
        .map(|&(u, v)| h.without_edge(u, v))
        .collect::<Result<_>>()?;
    let mut start = 0;
    while start < samples {
        let end = (start + BATCH).min(samples);
        let hit = (start..end).into_par_iter().find_map_first(|i| {
            let w = sample_weights(k, seed, i);
            first_violation(h, &minus, &w).map(|e| (i, e))
        });
        if let Some((index, e)) = hit {
            let target = sample_target(k, seed, index);
            let none = ListConstraint::new();
            let hom_h = hom_count(h, &target, &none)?;
            let hom_h_minus_e = hom_count(&minus[e], &target, &none)?;
            let ratio = hom_h
                .checked_div(&hom_h_minus_e)
                .expect("violations have a nonzero denominator");
            let threshold = edge_threshold(&target);
            debug_assert!(ratio < threshold);
            return Ok(Some(Counterexample {
                target,
                edge: h.edges()[e],
                ratio,
                threshold,
                hom_h,
                hom_h_minus_e,
                seed,
                sample_index: index,
            }));
        }
        start = end;
    }
    Ok(None)
}

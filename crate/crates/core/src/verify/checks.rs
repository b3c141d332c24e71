use num_bigint::BigInt;
use serde::Serialize;

use super::report::{Claim, Report};
use crate::count::{chrom_eval, chrom_poly, ind_count, path_ind_fib, wr_count, ListConstraint};
use crate::error::{Error, Result};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::num::{Count, Rat};
use crate::target::{widom, TargetGraph};

/// Instance id of a graph in reports.
pub fn graph_id(h: &Graph) -> String {
    format!("g6={}", to_graph6(h))
}

/// Short names for the built-in targets, the matrix descriptor otherwise.
pub fn target_label(g: &TargetGraph) -> String {
    if g.is_isomorphic_to(&TargetGraph::hardcore()) {
        "hardcore".into()
    } else if g.is_isomorphic_to(&TargetGraph::widom_rowlinson()) {
        "widom-rowlinson".into()
    } else if g.is_complete() {
        format!("K{}", g.k())
    } else {
        g.describe()
    }
}

/// Turns a counting error into an inapplicable report.
fn guarded(instance: String, claim: Claim, f: impl FnOnce(&str) -> Result<Report>) -> Report {
    match f(&instance) {
        Ok(r) => r,
        Err(e) => Report::inapplicable(instance, claim, e.to_string()),
    }
}

fn ratio(num: &Count, den: &Count) -> Rat {
    Rat::new(BigInt::from(num.0.clone()), BigInt::from(den.0.clone()))
}

fn frac(p: u64, q: u64) -> Rat {
    Rat::new(p, q)
}

fn ind(h: &Graph) -> Result<Count> {
    ind_count(h, &ListConstraint::new())
}

fn wr(h: &Graph) -> Result<Count> {
    wr_count(h, &ListConstraint::new())
}

// ---------------------------------------------------------------------------
// Same-color probabilities in random proper colorings.

/// One report per unordered vertex pair of a bipartite `h`: cross-part pairs
/// against `P(c(u) = c(v)) <= 1/q`, same-part pairs against `>= 1/q`.
pub fn check_correlation_coloring(h: &Graph, q: u64) -> Vec<Report> {
    correlation_reports(h, &[q])
}

/// [`check_correlation_coloring`] for several `q` at once, sharing the
/// polynomial computations. Reports are ordered by `q`, then by pair.
pub fn correlation_reports(h: &Graph, qs: &[u64]) -> Vec<Report> {
    let claim = Claim::ColoringCorrelation;
    let id = graph_id(h);
    let Some(parts) = h.bipartition() else {
        return qs
            .iter()
            .map(|q| Report::inapplicable(format!("{id};q={q}"), claim, "graph is not bipartite"))
            .collect();
    };
    let whole = match chrom_poly(h) {
        Ok(p) => p,
        Err(e) => {
            return qs
                .iter()
                .map(|q| Report::inapplicable(format!("{id};q={q}"), claim, e.to_string()))
                .collect()
        }
    };
    // Polynomials of the identified graphs; `None` for edges.
    let mut merged = Vec::new();
    for v in 1..h.n() {
        for u in 0..v {
            let p = if h.has_edge(u, v) {
                Ok(None)
            } else {
                h.identify_vertices(u, v)
                    .and_then(|m| chrom_poly(&m))
                    .map(Some)
            };
            merged.push(((u, v), p));
        }
    }
    let mut out = Vec::with_capacity(qs.len() * merged.len());
    for &q in qs {
        let total = whole.eval(q);
        for ((u, v), p) in &merged {
            let same = parts.same_side(*u, *v);
            let instance = format!(
                "{id};q={q};pair={u},{v};{}",
                if same { "same" } else { "cross" }
            );
            if total.sign() != num_bigint::Sign::Plus {
                out.push(Report::inapplicable(
                    instance,
                    claim,
                    format!("ch(H,{q}) = 0"),
                ));
                continue;
            }
            let prob = match p {
                Ok(None) => Rat::zero(),
                Ok(Some(p)) => Rat::new(p.eval(q), total.clone()),
                Err(e) => {
                    out.push(Report::inapplicable(instance, claim, e.to_string()));
                    continue;
                }
            };
            let bound = frac(1, q);
            out.push(if same {
                Report::at_least(instance, claim, prob, bound)
            } else {
                Report::at_most(instance, claim, prob, bound)
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Single-edge ratios.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeModel {
    /// `ch(H+e,q) / ch(H,q) >= (q-1)/q` for a missing edge `e`.
    Coloring { q: u64 },
    /// `i(H) / i(H-e) >= 3/4`.
    Independent,
    /// `wr(H) / wr(H-e) >= 7/9`.
    WidomRowlinson,
}

impl EdgeModel {
    pub fn claim(self) -> Claim {
        match self {
            EdgeModel::Coloring { .. } => Claim::ColoringEdgeRatio,
            EdgeModel::Independent => Claim::IndependentEdgeRatio,
            EdgeModel::WidomRowlinson => Claim::WidomEdgeRatio,
        }
    }

    /// The threshold of the ratio.
    pub fn threshold(self) -> Rat {
        match self {
            EdgeModel::Coloring { q } => frac(q.saturating_sub(1), q.max(1)),
            EdgeModel::Independent => frac(3, 4),
            EdgeModel::WidomRowlinson => frac(7, 9),
        }
    }
}

/// The edge-ratio inequality of `model` at edge `e`.
///
/// For colorings `e` must be a non-edge whose addition keeps `h` bipartite;
/// for the other models `e` must be an edge.
pub fn check_edge_ratio(h: &Graph, model: EdgeModel, e: (usize, usize)) -> Report {
    let claim = model.claim();
    let (u, v) = e;
    let mut instance = format!("{};edge={u},{v}", graph_id(h));
    if let EdgeModel::Coloring { q } = model {
        instance.push_str(&format!(";q={q}"));
    }
    guarded(instance, claim, |inst| match model {
        EdgeModel::Coloring { q } => {
            if q < 2 {
                return Ok(Report::inapplicable(inst, claim, "q must be at least 2"));
            }
            if u == v || h.has_edge(u, v) {
                return Ok(Report::inapplicable(
                    inst,
                    claim,
                    "e must be a missing edge",
                ));
            }
            let plus = h.with_edge(u, v)?;
            if !plus.is_bipartite() {
                return Ok(Report::inapplicable(inst, claim, "H+e is not bipartite"));
            }
            let num = chrom_eval(&plus, q)?;
            let den = chrom_eval(h, q)?;
            Ok(Report::at_least(
                inst,
                claim,
                ratio(&num, &den),
                model.threshold(),
            ))
        }
        EdgeModel::Independent | EdgeModel::WidomRowlinson => {
            if u >= h.n() || v >= h.n() || !h.has_edge(u, v) {
                return Ok(Report::inapplicable(inst, claim, "e is not an edge of H"));
            }
            let minus = h.without_edge(u, v)?;
            let count = if model == EdgeModel::Independent {
                ind
            } else {
                wr
            };
            Ok(Report::at_least(
                inst,
                claim,
                ratio(&count(h)?, &count(&minus)?),
                model.threshold(),
            ))
        }
    })
}

/// Edge ratios of `h` for every edge, sharing the count of `h` itself.
pub fn edge_ratio_reports(h: &Graph, model: EdgeModel) -> Vec<Report> {
    if let EdgeModel::Coloring { q } = model {
        // Every missing pair whose addition keeps the graph bipartite.
        let mut out = Vec::new();
        let Some(parts) = h.bipartition() else {
            return out;
        };
        let mut comp = vec![0; h.n()];
        for (i, c) in h.connected_components().iter().enumerate() {
            for &v in c {
                comp[v] = i;
            }
        }
        for v in 1..h.n() {
            for u in 0..v {
                if h.has_edge(u, v) {
                    continue;
                }
                // Pairs in different components can always be oriented as a
                // cross edge; within a component the parts are forced.
                if comp[u] == comp[v] && parts.same_side(u, v) {
                    continue;
                }
                out.push(check_edge_ratio(h, EdgeModel::Coloring { q }, (u, v)));
            }
        }
        return out;
    }
    let claim = model.claim();
    let id = graph_id(h);
    let count = if model == EdgeModel::Independent {
        ind
    } else {
        wr
    };
    let whole = match count(h) {
        Ok(c) => c,
        Err(e) => return vec![Report::inapplicable(id, claim, e.to_string())],
    };
    h.edges()
        .iter()
        .map(|&(u, v)| {
            guarded(format!("{id};edge={u},{v}"), claim, |inst| {
                let minus = h.without_edge(u, v)?;
                Ok(Report::at_least(
                    inst,
                    claim,
                    ratio(&whole, &count(&minus)?),
                    model.threshold(),
                ))
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Sidorenko-type bound.

/// `v(G)^n (S/v(G)^2)^e(H)` with `S` the total weight over ordered pairs.
pub fn sidorenko_rhs(h: &Graph, g: &TargetGraph) -> Rat {
    let k = Rat::integer(g.k() as u64);
    let density = g
        .edge_weight_sum()
        .checked_div(&(&k * &k))
        .unwrap_or_else(Rat::zero);
    &k.pow(h.n() as u32) * &density.pow(h.edge_count() as u32)
}

/// `hom(H,G) >= v(G)^n (S/v(G)^2)^e(H)`. Bipartite `h` is required unless the
/// target is the hard-core or Widom-Rowlinson target, where the bound holds
/// for every graph.
pub fn check_sidorenko_bound(h: &Graph, g: &TargetGraph) -> Report {
    let claim = Claim::Sidorenko;
    let instance = format!("{};target={}", graph_id(h), target_label(g));
    guarded(instance, claim, |inst| {
        if g.k() == 0 {
            return Ok(Report::inapplicable(inst, claim, "empty target"));
        }
        let any_h = g.is_isomorphic_to(&TargetGraph::hardcore())
            || g.is_isomorphic_to(&TargetGraph::widom_rowlinson());
        if !any_h && !h.is_bipartite() {
            return Ok(Report::inapplicable(
                inst,
                claim,
                "graph is not bipartite and the target is not hardcore or widom-rowlinson",
            ));
        }
        // Into K_q the count is ch(H,q); the polynomial route is much faster.
        let lhs = if g.is_complete() {
            chrom_eval(h, g.k() as u64)?.to_rat()
        } else {
            crate::count::hom_count(h, g, &ListConstraint::new())?
        };
        Ok(Report::at_least(inst, claim, lhs, sidorenko_rhs(h, g)))
    })
}

// ---------------------------------------------------------------------------
// Coloring bound with a packing of short even cycles.

/// `ch(H,q) >= ch(S,q) ((q-1)/q)^{e(H)-e(S)}` where `S` is the spanning
/// subgraph formed by a greedy packing of vertex-disjoint even cycles of
/// length at most `ell`. The advisory floats compare `ch(H,q)` against the
/// headline form `(1 + 1/(q-1)^{ell-1})^k q^n ((q-1)/q)^{e(H)}`.
pub fn check_cycle_packing_bound(h: &Graph, q: u64, ell: usize) -> Report {
    let claim = Claim::CyclePacking;
    let instance = format!("{};q={q};ell={ell}", graph_id(h));
    guarded(instance, claim, |inst| {
        if !h.is_bipartite() {
            return Ok(Report::inapplicable(inst, claim, "graph is not bipartite"));
        }
        if q < 2 {
            return Ok(Report::inapplicable(inst, claim, "q must be at least 2"));
        }
        if ell < 4 {
            return Ok(Report::inapplicable(
                inst,
                claim,
                "cycle length bound must be at least 4",
            ));
        }
        let cycles = h.greedy_cycle_packing(ell);
        let cycle_edges: Vec<(usize, usize)> = cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()])))
            .collect();
        let s = Graph::new(h.n(), cycle_edges)?;
        let lhs = chrom_eval(h, q)?;
        let ch_s = chrom_eval(&s, q)?;
        let shrink = frac(q - 1, q);
        let rhs = &ch_s.to_rat() * &shrink.pow((h.edge_count() - s.edge_count()) as u32);

        let headline_factor = 1.0 + 1.0 / ((q - 1) as f64).powi(ell as i32 - 1);
        let headline = (cycles.len() as f64 * headline_factor.ln()
            + h.n() as f64 * (q as f64).ln()
            + h.edge_count() as f64 * shrink.to_f64().ln())
        .exp();
        let inst = format!("{inst};cycles={}", cycles.len());
        Ok(Report::at_least(inst, claim, lhs.to_rat(), rhs).with_advisory(lhs.to_f64(), headline))
    })
}

// ---------------------------------------------------------------------------
// Connected graphs: independent sets and Widom-Rowlinson configurations.

/// `(3/4) ((1+√5)/3)^n 2^n (3/4)^e`.
pub fn connected_ind_closed_form(n: usize, e: usize) -> f64 {
    let phi_over = (1.0 + 5f64.sqrt()) / 3.0;
    (0.75f64.ln() + n as f64 * (phi_over.ln() + 2f64.ln()) + e as f64 * 0.75f64.ln()).exp()
}

/// `(9/10) (3(1+√2)/7)^n 3^n (7/9)^e`.
pub fn connected_wr_closed_form(n: usize, e: usize) -> f64 {
    let r = 3.0 * (1.0 + 2f64.sqrt()) / 7.0;
    (0.9f64.ln() + n as f64 * (r.ln() + 3f64.ln()) + e as f64 * (7.0f64 / 9.0).ln()).exp()
}

/// `2√2 (1+√2)^{n-1} (7/9)^{e-(n-1)}`: the spanning-tree bound behind the
/// closed form.
pub fn connected_wr_tree_form(n: usize, e: usize) -> f64 {
    let excess = e as f64 - (n as f64 - 1.0);
    (2.0 * 2f64.sqrt()).ln().exp()
        * ((n as f64 - 1.0) * (1.0 + 2f64.sqrt()).ln() + excess * (7.0f64 / 9.0).ln()).exp()
}

/// `i(H) >= F_{n+2} (3/4)^{e-(n-1)}` for connected `h`; the closed form
/// with `(1+√5)/3` is attached as advisory floats.
pub fn check_connected_ind_bound(h: &Graph) -> Report {
    let claim = Claim::ConnectedIndependent;
    guarded(graph_id(h), claim, |inst| {
        if h.n() == 0 || !h.is_connected() {
            return Ok(Report::inapplicable(inst, claim, "graph is not connected"));
        }
        let (n, e) = (h.n(), h.edge_count());
        let lhs = ind(h)?;
        let rhs = &path_ind_fib(n as u32)?.to_rat() * &frac(3, 4).pow((e + 1 - n) as u32);
        Ok(Report::at_least(inst, claim, lhs.to_rat(), rhs)
            .with_advisory(lhs.to_f64(), connected_ind_closed_form(n, e)))
    })
}

/// `wr(H) >= wr(T) (7/9)^{e-(n-1)}` for connected `h` and a spanning tree
/// `T`; the tree form with `2√2(1+√2)^{n-1}` is attached as advisory floats.
pub fn check_connected_wr_bound(h: &Graph) -> Report {
    let claim = Claim::ConnectedWidom;
    guarded(graph_id(h), claim, |inst| {
        if h.n() == 0 || !h.is_connected() {
            return Ok(Report::inapplicable(inst, claim, "graph is not connected"));
        }
        let (n, e) = (h.n(), h.edge_count());
        let tree = h.spanning_tree()?;
        let lhs = wr(h)?;
        let rhs = &wr(&tree)?.to_rat() * &frac(7, 9).pow((e + 1 - n) as u32);
        Ok(Report::at_least(inst, claim, lhs.to_rat(), rhs)
            .with_advisory(lhs.to_f64(), connected_wr_tree_form(n, e)))
    })
}

// ---------------------------------------------------------------------------
// Widom-Rowlinson conditional lemma.

/// `wr(H-e | u,v ∈ A) >= wr(H-e | u ∈ A, v ∈ C)` for `e = (u, v)`.
pub fn check_wr_lemma(h: &Graph, e: (usize, usize)) -> Report {
    let claim = Claim::WidomLemma;
    let (u, v) = e;
    guarded(format!("{};edge={u},{v}", graph_id(h)), claim, |inst| {
        if u >= h.n() || v >= h.n() || !h.has_edge(u, v) {
            return Ok(Report::inapplicable(inst, claim, "e is not an edge of H"));
        }
        let minus = h.without_edge(u, v)?;
        let same = wr_count(
            &minus,
            &ListConstraint::pinned(&[(u, widom::A), (v, widom::A)])?,
        )?;
        let apart = wr_count(
            &minus,
            &ListConstraint::pinned(&[(u, widom::A), (v, widom::C)])?,
        )?;
        Ok(Report::at_least(inst, claim, same.to_rat(), apart.to_rat()))
    })
}

// ---------------------------------------------------------------------------
// Free-energy gap against the large-girth envelope.

/// Float slack added to the envelope when deciding `within`.
pub const GAP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapOutcome {
    /// `ln ch(H,q)/n - (ln q + (e/n) ln((q-1)/q))`.
    pub gap: f64,
    /// `2 (8d/q)^{g-1} / (1 - 8d/q)`.
    pub envelope: f64,
    pub within: bool,
    pub girth: usize,
    pub max_degree: usize,
}

/// Requires a cycle and `q > 8 d` with `d` the maximum degree; otherwise
/// [`Error::InvalidArgument`] with the reason.
pub fn free_energy_gap(h: &Graph, q: u64) -> Result<GapOutcome> {
    let girth = h
        .girth()
        .ok_or_else(|| Error::InvalidArgument("graph is acyclic; girth undefined".into()))?;
    let d = h.max_degree();
    if q <= 8 * d as u64 {
        return Err(Error::InvalidArgument(format!(
            "envelope needs q > 8d = {}, got q = {q}",
            8 * d
        )));
    }
    let ch = chrom_eval(h, q)?;
    if ch.is_zero() {
        return Err(Error::InvalidArgument(format!("ch(H,{q}) = 0")));
    }
    let (n, e, qf) = (h.n() as f64, h.edge_count() as f64, q as f64);
    let gap = ch.ln() / n - (qf.ln() + e / n * ((qf - 1.0) / qf).ln());
    let x = 8.0 * d as f64 / qf;
    let envelope = 2.0 * x.powi(girth as i32 - 1) / (1.0 - x);
    Ok(GapOutcome {
        gap,
        envelope,
        within: gap.abs() <= envelope + GAP_TOL,
        girth,
        max_degree: d,
    })
}

/// Report form of [`free_energy_gap`]: `lhs = |gap|`, `rhs = envelope +`
/// [`GAP_TOL`], both as exact rationals of the float values. The advisory
/// floats carry `|gap|` and the bare envelope.
pub fn check_free_energy_gap(h: &Graph, q: u64) -> Report {
    let claim = Claim::FreeEnergyGap;
    let instance = format!("{};q={q}", graph_id(h));
    match free_energy_gap(h, q) {
        Err(e) => Report::inapplicable(instance, claim, e.to_string()),
        Ok(out) => {
            let lhs = Rat::from_f64(out.gap.abs());
            let rhs = Rat::from_f64(out.envelope + GAP_TOL);
            match (lhs, rhs) {
                (Some(l), Some(r)) => Report::at_most(instance, claim, l, r)
                    .with_advisory(out.gap.abs(), out.envelope),
                _ => Report::inapplicable(instance, claim, "non-finite gap or envelope"),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Balanced bipartite graphs.

/// A bipartition with equal sides, choosing the orientation of each
/// component by subset sum. `None` if `h` is not bipartite or no balanced
/// orientation exists.
pub fn balanced_bipartition(h: &Graph) -> Option<crate::graph::Bipartition> {
    let parts = h.bipartition()?;
    let n = h.n();
    if n % 2 == 1 {
        return None;
    }
    let comps = h.connected_components();
    // reach[i][s]: the first i components can put exactly s vertices left.
    let mut reach = vec![vec![false; n + 1]; comps.len() + 1];
    reach[0][0] = true;
    let sizes: Vec<(usize, usize)> = comps
        .iter()
        .map(|c| {
            let l = c
                .iter()
                .filter(|&&v| parts.left.binary_search(&v).is_ok())
                .count();
            (l, c.len() - l)
        })
        .collect();
    for (i, &(a, b)) in sizes.iter().enumerate() {
        for s in 0..=n {
            if reach[i][s] {
                reach[i + 1][s + a] = true;
                reach[i + 1][s + b] = true;
            }
        }
    }
    if !reach[comps.len()][n / 2] {
        return None;
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut s = n / 2;
    for i in (0..comps.len()).rev() {
        let (a, b) = sizes[i];
        let keep = s >= a && reach[i][s - a];
        let (l, r): (Vec<usize>, Vec<usize>) = comps[i]
            .iter()
            .partition(|&&v| parts.left.binary_search(&v).is_ok() == keep);
        s -= if keep { a } else { b };
        left.extend(l);
        right.extend(r);
    }
    left.sort_unstable();
    right.sort_unstable();
    Some(crate::graph::Bipartition { left, right })
}

/// `(q/2)^n` for even `q`, `((q-1)(q+1)/4)^{n/2}` for odd `q`.
pub fn balanced_rhs(n: usize, q: u64) -> Rat {
    if q.is_multiple_of(2) {
        frac(q, 2).pow(n as u32)
    } else {
        Rat::new((q - 1) * (q + 1), 4).pow((n / 2) as u32)
    }
}

/// `ch(H,q)` against [`balanced_rhs`] for a balanced bipartite `h`.
pub fn check_balanced_bipartite_bound(h: &Graph, q: u64) -> Report {
    let claim = Claim::BalancedBipartite;
    guarded(format!("{};q={q}", graph_id(h)), claim, |inst| {
        if !h.is_bipartite() {
            return Ok(Report::inapplicable(inst, claim, "graph is not bipartite"));
        }
        if q == 0 {
            return Ok(Report::inapplicable(inst, claim, "q must be positive"));
        }
        if balanced_bipartition(h).is_none() {
            return Ok(Report::inapplicable(inst, claim, "no balanced bipartition"));
        }
        let lhs = chrom_eval(h, q)?;
        Ok(Report::at_least(
            inst,
            claim,
            lhs.to_rat(),
            balanced_rhs(h.n(), q),
        ))
    })
}

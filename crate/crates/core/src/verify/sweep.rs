use rayon::prelude::*;
use serde::Serialize;

use super::checks::*;
use super::report::{Claim, Report, Summary};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::target::TargetGraph;

/// Largest vertex count a sweep accepts: 2^21 labeled graphs.
pub const SWEEP_MAX_N: usize = 7;

/// Graphs per parallel work unit.
const CHUNK: u64 = 1 << 10;
/// Work units in flight between ordered flushes.
const WINDOW: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub min_n: usize,
    pub max_n: usize,
    /// Color counts for the coloring claims; targets `K_q` for Sidorenko.
    pub qs: Vec<u64>,
    /// Cycle length bound of the packing claim.
    pub cycle_len: usize,
    /// `q` of the free-energy claim; `None` picks `8 d + 1` per graph.
    pub gap_q: Option<u64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            min_n: 1,
            max_n: 5,
            qs: vec![2, 3, 4, 5],
            cycle_len: 6,
            gap_q: None,
        }
    }
}

/// Whether `h` is in the instance family swept for `claim`.
pub fn in_scope(claim: Claim, h: &Graph) -> bool {
    match claim {
        Claim::ColoringCorrelation => h.is_connected() && h.is_bipartite(),
        Claim::ColoringEdgeRatio => h.is_bipartite(),
        Claim::IndependentEdgeRatio | Claim::WidomEdgeRatio | Claim::WidomLemma => {
            h.edge_count() > 0
        }
        Claim::Sidorenko | Claim::ConnectedIndependent | Claim::ConnectedWidom => h.is_connected(),
        Claim::CyclePacking => h.is_bipartite() && h.girth().is_some(),
        Claim::FreeEnergyGap => h.girth().is_some(),
        Claim::BalancedBipartite => h.n().is_multiple_of(2) && h.is_bipartite(),
    }
}

/// Every report `claim` produces for one in-scope graph.
pub fn reports_for_graph(claim: Claim, h: &Graph, cfg: &SweepConfig) -> Vec<Report> {
    match claim {
        Claim::ColoringCorrelation => correlation_reports(h, &cfg.qs),
        Claim::ColoringEdgeRatio => cfg
            .qs
            .iter()
            .flat_map(|&q| edge_ratio_reports(h, EdgeModel::Coloring { q }))
            .collect(),
        Claim::IndependentEdgeRatio => edge_ratio_reports(h, EdgeModel::Independent),
        Claim::WidomEdgeRatio => edge_ratio_reports(h, EdgeModel::WidomRowlinson),
        Claim::WidomLemma => h
            .edges()
            .iter()
            .flat_map(|&(u, v)| [check_wr_lemma(h, (u, v)), check_wr_lemma(h, (v, u))])
            .collect(),
        Claim::Sidorenko => {
            let mut out = Vec::new();
            if h.is_bipartite() {
                for &q in &cfg.qs {
                    out.push(check_sidorenko_bound(h, &TargetGraph::complete(q as usize)));
                }
            }
            out.push(check_sidorenko_bound(h, &TargetGraph::hardcore()));
            out.push(check_sidorenko_bound(h, &TargetGraph::widom_rowlinson()));
            out
        }
        Claim::CyclePacking => cfg
            .qs
            .iter()
            .map(|&q| check_cycle_packing_bound(h, q, cfg.cycle_len))
            .collect(),
        Claim::ConnectedIndependent => vec![check_connected_ind_bound(h)],
        Claim::ConnectedWidom => vec![check_connected_wr_bound(h)],
        Claim::FreeEnergyGap => {
            let q = cfg.gap_q.unwrap_or(8 * h.max_degree() as u64 + 1);
            vec![check_free_energy_gap(h, q)]
        }
        Claim::BalancedBipartite => cfg
            .qs
            .iter()
            .map(|&q| check_balanced_bipartite_bound(h, q))
            .collect(),
    }
}

fn validate(cfg: &SweepConfig) -> Result<()> {
    if cfg.max_n > SWEEP_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "sweeps are limited to n <= {SWEEP_MAX_N}, got {}",
            cfg.max_n
        )));
    }
    if cfg.min_n == 0 || cfg.min_n > cfg.max_n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "invalid vertex range {}..={}",
            cfg.min_n, cfg.max_n
        )));
    }
    if cfg.qs.iter().any(|&q| q < 2) {
        return Err(Error::InvalidArgument("every q must be at least 2".into()));
    }
    Ok(())
}

/// Runs `claim` over every labeled graph with `min_n <= n <= max_n`, in
/// increasing `n` and then edge-mask order. Work is spread over the current
/// rayon pool; `emit` sees reports in the same order for any pool size.
pub fn sweep(claim: Claim, cfg: &SweepConfig, mut emit: impl FnMut(&Report)) -> Result<Summary> {
    validate(cfg)?;
    let mut summary = Summary::new(claim);
    for n in cfg.min_n..=cfg.max_n {
        let total: u64 = 1 << (n * n.saturating_sub(1) / 2);
        let chunks = total.div_ceil(CHUNK);
        let mut next = 0;
        while next < chunks {
            let end = (next + WINDOW).min(chunks);
            let batch: Vec<Vec<Report>> = (next..end)
                .into_par_iter()
                .map(|c| {
                    let mut out = Vec::new();
                    for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                        let h = Graph::from_mask(n, mask);
                        if in_scope(claim, &h) {
                            out.extend(reports_for_graph(claim, &h, cfg));
                        }
                    }
                    out
                })
                .collect();
            for r in batch.iter().flatten() {
                summary.add(r);
                emit(r);
            }
            next = end;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(max_n: usize) -> SweepConfig {
        SweepConfig {
            max_n,
            ..Default::default()
        }
    }

    #[test]
    fn small_sweeps_hold() {
        for claim in Claim::ALL {
            let s = sweep(claim, &cfg(4), |_| {}).unwrap();
            assert_eq!(s.violated, 0, "{claim}");
            if claim != Claim::FreeEnergyGap {
                assert!(s.holds > 0, "{claim}");
            }
        }
    }

    #[test]
    fn three_vertex_ind_sweep_counts_every_edge() {
        let s = sweep(Claim::IndependentEdgeRatio, &cfg(3), |_| {}).unwrap();
        // n=2: one edge; n=3: 3 graphs with one edge, 3 with two, 1 with three.
        assert_eq!(s.instances, 1 + 3 + 6 + 3);
        assert_eq!(s.holds, s.instances);
    }

    #[test]
    fn order_is_independent_of_pool_size() {
        let collect = |threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                let mut ids = Vec::new();
                sweep(Claim::WidomLemma, &cfg(4), |r| ids.push(r.instance.clone())).unwrap();
                ids
            })
        };
        assert_eq!(collect(1), collect(3));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(sweep(Claim::WidomLemma, &cfg(8), |_| {}).is_err());
        let bad_q = SweepConfig {
            qs: vec![1],
            ..cfg(3)
        };
        assert!(sweep(Claim::ColoringEdgeRatio, &bad_q, |_| {}).is_err());
    }
}

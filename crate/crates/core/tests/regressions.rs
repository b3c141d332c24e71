//! Pinned witnesses and determinism of the parallel searches.

use std::fs;
use std::path::Path;

use homverify::count::{hom_count, ListConstraint};
use homverify::format::parse_graph6;
use homverify::search::{edge_threshold, edge_violation, find_counterexample, Manifest};
use homverify::verify::{sweep, Claim, SweepConfig};
use homverify::{Rat, TargetGraph};

fn fixture(name: &str) -> (TargetGraph, Manifest) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let target = TargetGraph::parse(&fs::read_to_string(dir.join("target.txt")).unwrap()).unwrap();
    let manifest =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    (target, manifest)
}

#[test]
fn p4_end_edge_witness_still_violates() {
    let (g, m) = fixture("p4_monotonicity_k4");
    let h = parse_graph6(&m.h).unwrap();
    assert_eq!(g.k(), m.k);
    assert_eq!(edge_threshold(&g), m.threshold);

    let (u, v) = m.edge;
    let none = ListConstraint::new();
    let whole = hom_count(&h, &g, &none).unwrap();
    let minus = hom_count(&h.without_edge(u, v).unwrap(), &g, &none).unwrap();
    let ratio = whole.checked_div(&minus).unwrap();
    assert_eq!(ratio, m.ratio);
    assert!(ratio < m.threshold);

    let worst = edge_violation(&h, &g).unwrap().expect("violation");
    assert_eq!(worst.ratio, m.ratio);
}

#[test]
fn p4_fixture_counts_by_hand() {
    // P_3 with edge weight a has 8 weighted 3-walks and 6 weighted 2-walks;
    // the loop b adds one of each. The isolated vertex of P_4 - e gives k = 4.
    let (g, m) = fixture("p4_monotonicity_k4");
    let h = parse_graph6(&m.h).unwrap();
    let (a, b) = (Rat::new(1, 2), Rat::new(7, 10));
    let none = ListConstraint::new();
    let walks3 = &(&Rat::integer(8) * &a.pow(3)) + &b.pow(3);
    assert_eq!(hom_count(&h, &g, &none).unwrap(), walks3);
    let walks2 = &(&Rat::integer(6) * &a.pow(2)) + &b.pow(2);
    let minus = hom_count(&h.without_edge(0, 1).unwrap(), &g, &none).unwrap();
    assert_eq!(minus, &Rat::integer(4) * &walks2);
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn search_is_independent_of_pool_size() {
    let star = parse_graph6("Cs").unwrap();
    for seed in [0, 7] {
        let one = in_pool(1, || find_counterexample(&star, 3, 5000, seed).unwrap());
        let two = in_pool(2, || find_counterexample(&star, 3, 5000, seed).unwrap());
        assert_eq!(one.map(|c| c.sample_index), two.map(|c| c.sample_index));
    }
}

#[test]
fn sweep_stream_is_independent_of_pool_size() {
    let cfg = SweepConfig {
        max_n: 5,
        ..SweepConfig::default()
    };
    let run = |threads| {
        in_pool(threads, || {
            let mut lines = Vec::new();
            let s = sweep(Claim::ColoringEdgeRatio, &cfg, |r| {
                lines.push(serde_json::to_string(r).unwrap())
            })
            .unwrap();
            (lines, s)
        })
    };
    assert_eq!(run(1), run(3));
}

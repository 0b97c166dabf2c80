//! Property tests against the BFS / Dijkstra oracle.

mod common;

use pll_core::analysis::{sample_pairs, Coverage};
use pll_core::store::{decode_index, encode_index};
use pll_core::verify::{verify, VerifyMode};
use pll_core::{
    build_index_directed, build_index_weighted, order_random, query_path, AnyIndex, BuildOptions,
    DiskIndex, DistanceIndex, Graph, Index, VertexId,
};
use proptest::prelude::*;

use common::*;

fn edges(max_n: usize) -> impl Strategy<Value = (usize, Vec<(u32, u32, u32)>)> {
    (1..max_n).prop_flat_map(|n| {
        let e = (0..n as u32, 0..n as u32, 0..20u32);
        (Just(n), prop::collection::vec(e, 0..3 * n))
    })
}

fn graph(n: usize, e: &[(u32, u32, u32)], directed: bool) -> Graph {
    Graph::from_edges(n, e.iter().map(|&(u, v, _)| (u, v)), directed).unwrap()
}

fn weighted(n: usize, e: &[(u32, u32, u32)], directed: bool) -> Graph {
    Graph::from_weighted_edges(n, e.iter().copied(), directed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn undirected_index_is_exact(
        (n, e) in edges(60), seed in any::<u64>(), t in 0usize..5, width in 1usize..=64, paths in any::<bool>()
    ) {
        let g = graph(n, &e, false);
        let opts = if paths {
            BuildOptions { record_paths: true, ..Default::default() }
        } else {
            BuildOptions { bp_roots: t, bp_width: width, record_paths: false }
        };
        let idx = Index::build(&g, order_random(&g, seed), &opts).unwrap();
        prop_assert_eq!(all_pairs_mismatches(&g, &idx), 0);
        for v in 0..n as VertexId {
            let ranks = idx.labels().ranks(v);
            prop_assert!(ranks.windows(2).all(|w| w[0] < w[1]), "label of {} not sorted", v);
        }
    }

    #[test]
    fn directed_index_is_exact((n, e) in edges(50), seed in any::<u64>()) {
        let g = graph(n, &e, true);
        let idx = build_index_directed(&g, order_random(&g, seed)).unwrap();
        prop_assert_eq!(all_pairs_mismatches(&g, &idx), 0);
    }

    #[test]
    fn weighted_index_is_exact((n, e) in edges(50), seed in any::<u64>(), directed in any::<bool>()) {
        let g = weighted(n, &e, directed);
        let idx = build_index_weighted(&g, order_random(&g, seed)).unwrap();
        prop_assert_eq!(all_pairs_mismatches(&g, &idx), 0);
    }

    #[test]
    fn paths_are_shortest((n, e) in edges(50), seed in any::<u64>()) {
        let g = graph(n, &e, false);
        let opts = BuildOptions { record_paths: true, ..Default::default() };
        let idx = Index::build(&g, order_random(&g, seed), &opts).unwrap();
        for s in 0..n as VertexId {
            let row = oracle_row(&g, s);
            for t in 0..n as VertexId {
                match (row[t as usize], query_path(&idx, s, t).unwrap()) {
                    (None, None) => {}
                    (Some(d), Some(p)) => prop_assert!(is_valid_path(&g, &p, s, t, d), "{:?}", p),
                    (want, got) => prop_assert!(false, "{s}->{t}: {want:?} vs {got:?}"),
                }
            }
        }
    }

    #[test]
    fn store_round_trip((n, e) in edges(40), seed in any::<u64>(), kind in 0..4u8, t in 0usize..4) {
        let idx: AnyIndex = match kind {
            0 => {
                let g = graph(n, &e, false);
                pll_core::build_index_hybrid(&g, order_random(&g, seed), t).unwrap().into()
            }
            1 => {
                let g = graph(n, &e, false);
                let opts = BuildOptions { record_paths: true, ..Default::default() };
                Index::build(&g, order_random(&g, seed), &opts).unwrap().into()
            }
            2 => {
                let g = graph(n, &e, true);
                build_index_directed(&g, order_random(&g, seed)).unwrap().into()
            }
            _ => {
                let g = weighted(n, &e, seed % 2 == 0);
                build_index_weighted(&g, order_random(&g, seed)).unwrap().into()
            }
        };
        let bytes = encode_index(&idx);
        let loaded = decode_index(&bytes).unwrap();
        prop_assert_eq!(&loaded, &idx);
        prop_assert_eq!(encode_index(&loaded), bytes.clone());

        if kind > 1 {
            // seek-based queries cover plain indices only
            prop_assert!(DiskIndex::open(std::io::Cursor::new(bytes)).is_err());
            return Ok(());
        }
        let mut disk = DiskIndex::open(std::io::Cursor::new(bytes)).unwrap();
        for s in 0..n as VertexId {
            for t in 0..n as VertexId {
                prop_assert_eq!(disk.query(s, t).unwrap(), idx.distance(s, t));
            }
        }
    }

    #[test]
    fn coverage_is_monotone_and_complete((n, e) in edges(40), seed in any::<u64>(), t in 0usize..3) {
        let g = graph(n, &e, false);
        let idx = pll_core::build_index_hybrid(&g, order_random(&g, seed), t).unwrap();
        let cov = Coverage::compute(&idx, &sample_pairs(n, 10_000, seed));
        let curve = cov.curve(|_| true);
        prop_assert!(curve.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(curve[n] as usize, cov.connected_pairs());
        prop_assert_eq!(cov.fraction_at(n, |_| true), 1.0);
    }
}

#[test]
fn deleting_any_entry_is_caught_by_verify() {
    let g = connected(200, 300, 7);
    let idx = pll_core::build_index(&g, pll_core::order_degree(&g)).unwrap();
    assert!(verify(&g, &idx, VerifyMode::Exhaustive, 0).unwrap().passed());
    for v in [0, 57, 199] {
        for pos in 0..idx.labels().len(v) {
            let report = verify(&g, &idx.without_entry(v, pos), VerifyMode::Exhaustive, 0).unwrap();
            let m = report.first_mismatch.expect("deleted entry went unnoticed");
            assert_ne!(m.expected, m.answered);
        }
    }
}

#[test]
fn sampled_verify_passes_on_large_graph() {
    let g = ba(20_000, 3, 8);
    let idx = pll_core::build_index_hybrid(&g, pll_core::order_degree(&g), 16).unwrap();
    let report = verify(&g, &idx, VerifyMode::Sampled(1_000_000), 8).unwrap();
    assert!(report.passed());
    assert!(report.pairs_checked >= 1_000_000);
}

#[test]
fn distant_pairs_are_covered_before_close_pairs() {
    let g = ba(5_000, 3, 9);
    let idx = pll_core::build_index(&g, pll_core::order_degree(&g)).unwrap();
    let cov = Coverage::compute(&idx, &sample_pairs(g.num_vertices(), 200_000, 9));
    let far = cov.crossing(0.9, |d| d >= 4).unwrap();
    let near = cov.crossing(0.9, |d| d == 2).unwrap();
    assert!(far < near, "distance >= 4 crosses 90% at k={far}, distance 2 at k={near}");
}

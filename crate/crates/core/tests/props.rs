mod common;

use citeclust_core::compare::variation_of_information;
use citeclust_core::partition::contingency;
use citeclust_core::{Clustering, Graph};
use proptest::prelude::*;

fn arbitrary_edge_list() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..40, 0u8..40), 1..120)
}

fn arbitrary_labels(n: usize, max_clusters: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..max_clusters, n)
}

proptest! {
    #[test]
    fn built_graphs_satisfy_structural_invariants(raw in arbitrary_edge_list()) {
        let pairs: Vec<(u32, u32)> = raw.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        let Ok((g, stats)) = Graph::from_index_edges(40, &pairs) else {
            // Everything collapsed to self-loops; nothing to check.
            return Ok(());
        };
        let degree_sum: usize = (0..g.node_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert!((stats.average_degree - degree_sum as f64 / g.node_count() as f64).abs() < 1e-12);
        prop_assert!(stats.lcc_fraction > 0.0 && stats.lcc_fraction <= 1.0);
        for v in 0..g.node_count() {
            prop_assert!(g.degree(v) >= 1);
            for &w in g.neighbors(v) {
                prop_assert!(w as usize != v);
                prop_assert!(g.neighbors(w as usize).contains(&(v as u32)));
            }
        }
    }

    #[test]
    fn rebuild_from_cleaned_edges_is_identity(raw in arbitrary_edge_list()) {
        let pairs: Vec<(u32, u32)> = raw.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        let Ok((g, _)) = Graph::from_index_edges(40, &pairs) else { return Ok(()); };
        let edges: Vec<(String, String)> = g
            .edges()
            .map(|(u, v)| {
                (g.external_id(u as usize).to_string(), g.external_id(v as usize).to_string())
            })
            .collect();
        let (g2, _) = Graph::from_edges(edges).unwrap();
        // Same labeled graph: identical id set and identical edge set under
        // external ids (internal index order may differ).
        let labeled = |g: &Graph| -> std::collections::BTreeSet<(String, String)> {
            g.edges()
                .map(|(u, v)| {
                    let a = g.external_id(u as usize).to_string();
                    let b = g.external_id(v as usize).to_string();
                    (a.clone().min(b.clone()), a.max(b))
                })
                .collect()
        };
        prop_assert_eq!(labeled(&g), labeled(&g2));
        prop_assert_eq!(g.node_count(), g2.node_count());
        prop_assert_eq!(g.edge_count(), g2.edge_count());
    }

    #[test]
    fn rewire_preserves_degrees(raw in arbitrary_edge_list(), alpha in 0.0f64..1.0, seed in any::<u64>()) {
        let pairs: Vec<(u32, u32)> = raw.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        let Ok((g, _)) = Graph::from_index_edges(40, &pairs) else { return Ok(()); };
        let rewired = g.rewire(alpha, seed).graph;
        prop_assert_eq!(rewired.edge_count(), g.edge_count());
        for v in 0..g.node_count() {
            prop_assert_eq!(rewired.degree(v), g.degree(v));
            prop_assert!(!rewired.neighbors(v).contains(&(v as u32)));
        }
    }

    #[test]
    fn compact_relabel_is_idempotent(labels in arbitrary_labels(25, 1000)) {
        let once = Clustering::from_labels(&labels);
        let twice = Clustering::from_labels(once.labels());
        prop_assert_eq!(once.labels(), twice.labels());
        let total: usize = once.sizes().iter().sum();
        prop_assert_eq!(total, 25);
        prop_assert!(once.sizes().iter().all(|&s| s > 0));
    }

    #[test]
    fn contingency_transposes(a in arbitrary_labels(30, 6), b in arbitrary_labels(30, 6)) {
        let c = Clustering::from_labels(&a);
        let d = Clustering::from_labels(&b);
        let cd = contingency(&c, &d).unwrap();
        let dc = contingency(&d, &c).unwrap();
        prop_assert_eq!(cd.transpose(), dc);
        let total: u64 = cd.cells().iter().map(|&(_, _, n)| n).sum();
        prop_assert_eq!(total, 30);
    }

    #[test]
    fn flatten_of_true_partition_is_identity(labels in arbitrary_labels(20, 5)) {
        let c = Clustering::from_labels(&labels);
        let cover: Vec<Vec<u32>> = c.members();
        let flattened = Clustering::flatten_overlaps(&cover, 20).unwrap();
        prop_assert_eq!(flattened.labels(), c.labels());
    }

    #[test]
    fn vi_is_a_symmetric_premetric(
        a in arbitrary_labels(24, 6),
        b in arbitrary_labels(24, 6),
    ) {
        let c = Clustering::from_labels(&a);
        let d = Clustering::from_labels(&b);
        let cd = variation_of_information(&c, &d).unwrap();
        let dc = variation_of_information(&d, &c).unwrap();
        prop_assert!((cd.vi - dc.vi).abs() < 1e-12);
        prop_assert!(cd.vi >= 0.0);
        prop_assert!(cd.vi <= (24.0f64).ln() + 1e-12);
        prop_assert!((0.0..=1.0).contains(&cd.normalized));
        // Zero iff the partitions coincide.
        prop_assert_eq!(cd.vi == 0.0, c.same_partition(&d));
    }
}

mod common;

use citeclust_core::metrics::log_likelihood;
use citeclust_core::planted::generate_planted_partition;
use citeclust_core::postprocess::{
    merge_tiny, postprocess, postprocess_with_trace, split_giants, PostprocessConfig,
};
use citeclust_core::{Algorithm, Clustering, MethodConfig};
use common::*;

fn louvain_config(seed: u64) -> MethodConfig {
    MethodConfig::new(Algorithm::Louvain).with_seed(seed)
}

#[test]
fn split_giants_partitions_two_cliques_held_together() {
    let g = disjoint_cliques(2, 20);
    let one = Clustering::all_in_one(40);
    let mut config = PostprocessConfig::new(louvain_config(1), 1);
    config.s_giant = 30;

    let (result, decisions) = split_giants(&g, &one, &config).unwrap();
    let truth = Clustering::from_labels(&labels_with_sizes(&[20, 20]));
    assert!(result.same_partition(&truth));
    assert_eq!(decisions.len(), 1);
    assert!(decisions[0].accepted);
    assert!(decisions[0].log_l_candidate > decisions[0].log_l_before);
}

#[test]
fn split_giants_rejects_trivial_refinement() {
    // Louvain keeps a clique whole, so the candidate is a no-op.
    let g = disjoint_cliques(1, 20);
    let one = Clustering::all_in_one(20);
    let mut config = PostprocessConfig::new(louvain_config(1), 1);
    config.s_tiny = 2;
    config.s_giant = 10;

    let (result, decisions) = split_giants(&g, &one, &config).unwrap();
    assert_eq!(result.labels(), one.labels());
    assert_eq!(decisions.len(), 1);
    assert!(!decisions[0].accepted);
}

#[test]
fn split_giants_without_giants_is_identity() {
    let g = barbell();
    let c = barbell_triangles();
    let config = PostprocessConfig::new(louvain_config(0), 0);
    let (result, decisions) = split_giants(&g, &c, &config).unwrap();
    assert_eq!(result.labels(), c.labels());
    assert!(decisions.is_empty());
}

#[test]
fn merge_tiny_absorbs_barbell_singleton() {
    let g = barbell();
    let c = Clustering::from_labels(&[0, 0, 0, 1, 1, 2]); // {0,1,2},{3,4},{5}
    let mut config = PostprocessConfig::new(louvain_config(0), 3);
    config.s_tiny = 2;

    let (result, decisions) = merge_tiny(&g, &c, &config).unwrap();
    assert!(result.same_partition(&Clustering::from_labels(&[0, 0, 0, 1, 1, 1])));
    assert_eq!(decisions.len(), 1);
    assert_eq!(decisions[0].cluster, 2);
    assert_eq!(decisions[0].merged_into, Some(1));
}

#[test]
fn merge_tiny_keeps_isolated_components() {
    // Triangle plus a disjoint edge; the pair cannot merge anywhere.
    let g = graph_from(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
    let c = Clustering::from_labels(&[0, 0, 0, 1, 1]);
    let mut config = PostprocessConfig::new(louvain_config(0), 5);
    config.s_tiny = 3;

    let (result, decisions) = merge_tiny(&g, &c, &config).unwrap();
    assert_eq!(result.labels(), c.labels());
    assert_eq!(decisions.len(), 1);
    assert_eq!(decisions[0].merged_into, None);
}

#[test]
fn merge_tiny_identity_when_everything_is_large_enough() {
    let g = barbell();
    let c = barbell_triangles();
    let mut config = PostprocessConfig::new(louvain_config(0), 0);
    config.s_tiny = 3;
    let (result, decisions) = merge_tiny(&g, &c, &config).unwrap();
    assert_eq!(result.labels(), c.labels());
    assert!(decisions.is_empty());
}

#[test]
fn merge_tiny_breaks_ties_toward_smallest_cluster_id() {
    // Two symmetric triangles, plus node 6 linked once to each; merging into
    // either is likelihood-equivalent, so the smaller id wins.
    let g = graph_from(
        7,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (6, 0),
            (6, 3),
        ],
    );
    let c = Clustering::from_labels(&[0, 0, 0, 1, 1, 1, 2]);
    let mut config = PostprocessConfig::new(louvain_config(0), 9);
    config.s_tiny = 2;
    let (result, decisions) = merge_tiny(&g, &c, &config).unwrap();
    assert_eq!(decisions[0].merged_into, Some(0));
    assert_eq!(result.label(6), result.label(0));
}

#[test]
fn merge_tiny_leaves_no_mergeable_tiny_behind() {
    for seed in 0..5 {
        let bench = generate_planted_partition(6, 30, 0.3, 0.02, seed).unwrap();
        let g = &bench.graph;
        // Random over-fine clustering: many tiny fragments.
        let labels: Vec<u32> = (0..g.node_count() as u32).map(|v| v / 3).collect();
        let c = Clustering::from_labels(&labels);
        let config = PostprocessConfig::new(louvain_config(seed), seed);
        let (result, _) = merge_tiny(g, &c, &config).unwrap();
        for (cluster, &size) in result.sizes().iter().enumerate() {
            if size >= 15 {
                continue;
            }
            // Sub-threshold survivors must be whole components.
            for v in 0..g.node_count() {
                if result.label(v) as usize != cluster {
                    continue;
                }
                for &w in g.neighbors(v) {
                    assert_eq!(
                        result.label(w as usize) as usize,
                        cluster,
                        "tiny cluster {cluster} still has an external edge"
                    );
                }
            }
        }
    }
}

#[test]
fn postprocess_runs_split_then_merge() {
    let bench = generate_planted_partition(5, 40, 0.3, 0.02, 2).unwrap();
    let g = &bench.graph;
    // Giant: everything in one cluster; splitting then merging applies both
    // steps in order.
    let one = Clustering::all_in_one(g.node_count());
    let mut config = PostprocessConfig::new(louvain_config(4), 4);
    config.s_giant = 100;
    let (result, trace) = postprocess_with_trace(g, &one, &config).unwrap();
    assert!(!trace.splits.is_empty());
    assert!(result.cluster_count() > 1);

    // Log-likelihood is non-decreasing across split decisions.
    let mut last = f64::NEG_INFINITY;
    for d in &trace.splits {
        assert!(d.log_l_before >= last - 1e-9);
        last = if d.accepted {
            d.log_l_candidate
        } else {
            d.log_l_before
        };
    }
    let (final_l, _) = log_likelihood(g, &result).unwrap();
    assert!(final_l.is_finite());
}

#[test]
fn postprocess_is_identity_without_giants_or_tinies() {
    let g = disjoint_cliques(2, 20);
    let c = Clustering::from_labels(&labels_with_sizes(&[20, 20]));
    let config = PostprocessConfig::new(louvain_config(0), 0);
    let result = postprocess(&g, &c, &config).unwrap();
    assert_eq!(result.labels(), c.labels());
}

#[test]
fn postprocess_settles_after_one_application() {
    // First pass splits the giant below the threshold and merges every
    // mergeable tiny; a second pass then has nothing left to do.
    let bench = generate_planted_partition(4, 60, 0.3, 0.01, 13).unwrap();
    let g = &bench.graph;
    let one = Clustering::all_in_one(g.node_count());
    let mut config = PostprocessConfig::new(louvain_config(2), 2);
    config.s_giant = 100;
    let first = postprocess(g, &one, &config).unwrap();
    assert!(
        first.sizes().iter().all(|&s| s <= config.s_giant),
        "giants remain"
    );
    let second = postprocess(g, &first, &config).unwrap();
    assert!(second.same_partition(&first));
}

#[test]
fn postprocess_rejects_inverted_thresholds() {
    let g = barbell();
    let c = barbell_triangles();
    let mut config = PostprocessConfig::new(louvain_config(0), 0);
    config.s_tiny = 20;
    config.s_giant = 10;
    assert!(postprocess(&g, &c, &config).is_err());
}

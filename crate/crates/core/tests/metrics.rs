mod common;

use citeclust_core::metrics::{
    cluster_coverage, connectivity, degeneracy, effective_diameter, log_likelihood, metrics_report,
    modularity, powerlaw_fit, size_stats,
};
use citeclust_core::{Clustering, Error};
use common::*;

#[test]
fn connectivity_on_barbell_triangles() {
    let g = barbell();
    let c = barbell_triangles();
    let stats = connectivity(&g, &c).unwrap();
    assert!((stats.internal_degree - 2.0).abs() < 1e-12);
    assert!((stats.expansion - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(stats.flake, 0.0);
    assert!((stats.coverage - 6.0 / 7.0).abs() < 1e-12);
}

#[test]
fn connectivity_extremes() {
    let g = barbell();
    let k = g.average_degree();

    let one = connectivity(&g, &Clustering::all_in_one(6)).unwrap();
    assert!((one.internal_degree - k).abs() < 1e-12);
    assert_eq!(one.expansion, 0.0);
    assert_eq!(one.flake, 0.0);
    assert!((one.coverage - 1.0).abs() < 1e-12);

    let singles = connectivity(&g, &Clustering::singletons(6)).unwrap();
    assert_eq!(singles.internal_degree, 0.0);
    assert!((singles.expansion - k).abs() < 1e-12);
    assert_eq!(singles.flake, 1.0);
    assert_eq!(singles.coverage, 0.0);
}

#[test]
fn modularity_matches_pairwise_oracle() {
    let g = barbell();
    let triangles = barbell_triangles();
    let q = modularity(&g, &triangles, 1.0).unwrap();
    assert!((q - 5.0 / 14.0).abs() < 1e-12);
    assert!((q - modularity_pairwise(&g, triangles.labels(), 1.0)).abs() < 1e-12);

    assert!(
        modularity(&g, &Clustering::all_in_one(6), 1.0)
            .unwrap()
            .abs()
            < 1e-12
    );

    let singles = modularity(&g, &Clustering::singletons(6), 1.0).unwrap();
    assert!((singles - (-34.0 / 196.0)).abs() < 1e-12);
    assert!((singles - modularity_pairwise(&g, &[0, 1, 2, 3, 4, 5], 1.0)).abs() < 1e-12);
}

#[test]
fn modularity_resolution_scales_null_term() {
    let g = barbell();
    let c = barbell_triangles();
    for gamma in [0.5, 1.0, 10.0, 100.0] {
        let q = modularity(&g, &c, gamma).unwrap();
        assert!((q - modularity_pairwise(&g, c.labels(), gamma)).abs() < 1e-12);
    }
    // Q(all-in-one) = 1 - gamma.
    let q100 = modularity(&g, &Clustering::all_in_one(6), 100.0).unwrap();
    assert!((q100 - (1.0 - 100.0)).abs() < 1e-9);
}

#[test]
fn log_likelihood_on_barbell_partitions() {
    let g = barbell();

    let (tri, parts) = log_likelihood(&g, &barbell_triangles()).unwrap();
    let expected_tri = (1.0f64 / 9.0).ln() + 8.0 * (8.0f64 / 9.0).ln();
    assert!((tri - expected_tri).abs() < 1e-12);
    assert!((tri - (-3.1395)).abs() < 1e-4);
    assert_eq!(parts.clusters.len(), 2);
    assert_eq!(parts.clusters[0].density, 1.0);
    assert_eq!((parts.inter_edges, parts.inter_pairs), (1, 9));

    let (one, parts) = log_likelihood(&g, &Clustering::all_in_one(6)).unwrap();
    let expected_one = 7.0 * (7.0f64 / 15.0).ln() + 8.0 * (8.0f64 / 15.0).ln();
    assert!((one - expected_one).abs() < 1e-12);
    assert_eq!((parts.inter_edges, parts.inter_pairs), (0, 0));
    assert_eq!(parts.inter_density, 0.0);

    // Singletons collapse to the pure inter-cluster term.
    let (single, parts) = log_likelihood(&g, &Clustering::singletons(6)).unwrap();
    let theta = 7.0 / 15.0f64;
    let expected = 7.0 * theta.ln() + 8.0 * (1.0 - theta).ln();
    assert!((single - expected).abs() < 1e-12);
    assert_eq!((parts.inter_edges, parts.inter_pairs), (7, 15));
}

#[test]
fn log_likelihood_matches_direct_oracle_on_all_barbell_partitions() {
    let g = barbell();
    for labels in partitions_of(6) {
        let c = Clustering::from_labels(&labels);
        let (ours, parts) = log_likelihood(&g, &c).unwrap();
        let oracle = logl_direct(&g, c.labels());
        assert!(
            (ours - oracle).abs() < 1e-9,
            "labels {labels:?}: {ours} vs oracle {oracle}"
        );
        let intra_sum: u64 = parts.clusters.iter().map(|d| d.edges).sum();
        assert_eq!(intra_sum + parts.inter_edges, g.edge_count() as u64);
        for d in &parts.clusters {
            assert!((0.0..=1.0).contains(&d.density));
        }
    }
}

#[test]
fn size_stats_with_five_percent_trim() {
    // Five singletons, 94 clusters of 10, one of 1000: O = 3, O5 = 2.
    let mut sizes = vec![1usize; 5];
    sizes.extend(std::iter::repeat(10).take(94));
    sizes.push(1000);
    let c = Clustering::from_labels(&labels_with_sizes(&sizes));
    let stats = size_stats(&c);
    assert_eq!(c.cluster_count(), 100);
    assert!((stats.orders - 3.0).abs() < 1e-12);
    assert!((stats.orders_5 - 2.0).abs() < 1e-12);
    assert!((stats.average_size - 1945.0 / 100.0).abs() < 1e-12);
}

#[test]
fn size_stats_degenerate_cases() {
    let single = size_stats(&Clustering::all_in_one(20));
    assert_eq!((single.orders, single.orders_5), (0.0, 0.0));

    let equal = size_stats(&Clustering::from_labels(&labels_with_sizes(&[4, 4, 4])));
    assert_eq!((equal.orders, equal.orders_5), (0.0, 0.0));
}

#[test]
fn effective_diameter_of_clique_is_one_hop() {
    let g = disjoint_cliques(1, 11);
    let c = Clustering::all_in_one(11);
    assert_eq!(effective_diameter(&g, &c, 1000, 0).unwrap(), 1.0);
}

#[test]
fn effective_diameter_of_path_matches_hand_bfs() {
    // 10-node path; per-seed 90% hop counts are (8,7,6,5,4,4,5,6,7,8).
    let edges: Vec<(u32, u32)> = (0..9).map(|i| (i, i + 1)).collect();
    let g = graph_from(10, &edges);
    let c = Clustering::all_in_one(10);
    assert_eq!(effective_diameter(&g, &c, 1000, 0).unwrap(), 6.0);
}

#[test]
fn effective_diameter_of_singletons_is_zero() {
    let g = barbell();
    let c = Clustering::singletons(6);
    assert_eq!(effective_diameter(&g, &c, 1000, 0).unwrap(), 0.0);
}

#[test]
fn effective_diameter_with_full_sampling_is_deterministic() {
    let g = disjoint_cliques(3, 8);
    let c = Clustering::from_labels(&labels_with_sizes(&[8, 8, 8]));
    let a = effective_diameter(&g, &c, 24, 1).unwrap();
    let b = effective_diameter(&g, &c, 24, 2).unwrap();
    assert_eq!(a, b);
}

#[test]
fn degeneracy_range() {
    let c = Clustering::from_labels(&labels_with_sizes(&[5, 20, 75]));
    let (lo, hi) = degeneracy(&c, 15);
    assert!((lo - 0.05).abs() < 1e-12);
    assert!((hi - 0.25).abs() < 1e-12);

    let one = Clustering::all_in_one(50);
    assert_eq!(degeneracy(&one, 15), (0.0, 0.0));

    // All clusters above the threshold, largest well below n: lo = 0.
    let c = Clustering::from_labels(&labels_with_sizes(&[20, 20, 20, 20, 20]));
    let (lo, hi) = degeneracy(&c, 15);
    assert_eq!(lo, 0.0);
    assert!((hi - 0.8).abs() < 1e-12);
}

#[test]
fn powerlaw_fit_two_point_case() {
    let e = std::f64::consts::E;
    let fit = powerlaw_fit(&[10.0, 10.0 * e], 10.0).unwrap();
    assert!((fit.gamma - 3.0).abs() < 1e-12);
    assert_eq!(fit.tail_count, 2);
}

#[test]
fn powerlaw_fit_rejects_degenerate_tails() {
    assert!(matches!(
        powerlaw_fit(&[10.0, 10.0, 10.0], 10.0),
        Err(Error::UndefinedFit { .. })
    ));
    assert!(matches!(
        powerlaw_fit(&[12.0], 10.0),
        Err(Error::UndefinedFit { .. })
    ));
    assert!(powerlaw_fit(&[2.0, 3.0], 1.0).is_err());
}

#[test]
fn cluster_coverage_examples() {
    let g = barbell();
    let triangles = barbell_triangles();
    let of_node_2 = triangles.label(2) as usize;
    let cov = cluster_coverage(&g, &triangles, of_node_2).unwrap();
    assert!((cov - 6.0 / 7.0).abs() < 1e-12);

    // A clique cluster with no external edges covers everything.
    let cliques = disjoint_cliques(2, 5);
    let c = Clustering::from_labels(&labels_with_sizes(&[5, 5]));
    assert_eq!(cluster_coverage(&cliques, &c, 0).unwrap(), 1.0);

    // A singleton cluster covers nothing.
    let c = Clustering::from_labels(&[0, 1, 1, 1, 1, 1]);
    assert_eq!(cluster_coverage(&g, &c, 0).unwrap(), 0.0);

    assert!(matches!(
        cluster_coverage(&g, &triangles, 7),
        Err(Error::ClusterOutOfRange { .. })
    ));
}

#[test]
fn coverage_is_the_degree_weighted_mean_of_cluster_coverage() {
    let g = barbell();
    let c = Clustering::from_labels(&[0, 0, 0, 1, 1, 2]);
    let overall = connectivity(&g, &c).unwrap().coverage;
    let two_m = 2.0 * g.edge_count() as f64;
    let mut weighted = 0.0;
    for cluster in 0..c.cluster_count() {
        let degree_mass: usize = (0..6)
            .filter(|&v| c.label(v) as usize == cluster)
            .map(|v| g.degree(v))
            .sum();
        weighted += cluster_coverage(&g, &c, cluster).unwrap() * degree_mass as f64 / two_m;
    }
    assert!((overall - weighted).abs() < 1e-12);
}

#[test]
fn report_assembles_consistent_fields() {
    let g = barbell();
    let c = barbell_triangles();
    let report = metrics_report(&g, &c, 1000, 15, 0).unwrap();
    assert_eq!(report.cluster_count, 2);
    assert!((report.internal_degree + report.expansion - g.average_degree()).abs() < 1e-9);
    assert!((report.coverage - report.internal_degree / g.average_degree()).abs() < 1e-9);
    assert!((report.modularity - 5.0 / 14.0).abs() < 1e-12);
    assert!(report.runtime_seconds.is_none());
    assert!((report.average_size - 3.0).abs() < 1e-12);
}

//! Scalar statistics of a (graph, clustering) pair.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{self, xlnx};
use crate::partition::Clustering;
use crate::rng::rng_from;

/// Default tiny-cluster threshold for the degeneracy range.
pub const DEFAULT_S_TINY: usize = 15;

/// Connectivity statistics: average internal degree K, expansion E, Flake
/// fraction F, and link coverage K/k.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityStats {
    pub internal_degree: f64,
    pub expansion: f64,
    pub flake: f64,
    pub coverage: f64,
}

/// Average internal degree, expansion, Flake fraction and coverage.
///
/// A node counts toward F when its internal degree is strictly below half
/// its degree.
pub fn connectivity(graph: &Graph, clustering: &Clustering) -> Result<ConnectivityStats> {
    check_pair(graph, clustering)?;
    let n = graph.node_count();
    let mut intra_endpoints = 0u64;
    let mut flake_nodes = 0u64;
    for v in 0..n {
        let c = clustering.label(v);
        let internal = graph
            .neighbors(v)
            .iter()
            .filter(|&&w| clustering.label(w as usize) == c)
            .count() as u64;
        intra_endpoints += internal;
        if 2 * internal < graph.degree(v) as u64 {
            flake_nodes += 1;
        }
    }
    let two_m = 2 * graph.edge_count() as u64;
    let k = graph.average_degree();
    let internal_degree = intra_endpoints as f64 / n as f64;
    Ok(ConnectivityStats {
        internal_degree,
        expansion: k - internal_degree,
        flake: flake_nodes as f64 / n as f64,
        coverage: intra_endpoints as f64 / two_m as f64,
    })
}

/// Generalized modularity Q = Σ_c [m_c/m − γ (d_c/2m)²].
pub fn modularity(graph: &Graph, clustering: &Clustering, resolution: f64) -> Result<f64> {
    check_pair(graph, clustering)?;
    let k = clustering.cluster_count();
    let (intra, degrees) = cluster_edge_stats(graph, clustering, k);
    let m = graph.edge_count() as f64;
    let two_m = 2.0 * m;
    let mut q = 0.0;
    for c in 0..k {
        let frac = degrees[c] as f64 / two_m;
        q += intra[c] as f64 / m - resolution * frac * frac;
    }
    Ok(q)
}

/// Per-cluster terms of the clustering likelihood.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterDensity {
    /// Edges inside the cluster (m_i).
    pub edges: u64,
    /// Node pairs inside the cluster (M_i = s_i(s_i−1)/2).
    pub pairs: u64,
    /// Maximum-likelihood link density m_i/M_i (0 when M_i = 0).
    pub density: f64,
}

/// Decomposition of the clustering likelihood into intra- and inter-cluster
/// parts.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodParts {
    pub clusters: Vec<ClusterDensity>,
    pub inter_edges: u64,
    pub inter_pairs: u64,
    pub inter_density: f64,
}

/// Natural-log likelihood of the clustering under per-cluster Bernoulli link
/// densities with plug-in maximum-likelihood estimates.
///
/// Boundary conventions: 0·ln 0 = 0 (covers density 0 and 1), singleton
/// clusters and an empty inter-cluster pair set contribute nothing.
pub fn log_likelihood(graph: &Graph, clustering: &Clustering) -> Result<(f64, LikelihoodParts)> {
    check_pair(graph, clustering)?;
    let n = graph.node_count() as u64;
    let k = clustering.cluster_count();
    let (intra, _) = cluster_edge_stats(graph, clustering, k);
    let mut log_l = 0.0;
    let mut clusters = Vec::with_capacity(k);
    let mut intra_pairs_sum = 0u64;
    let mut intra_edges_sum = 0u64;
    for c in 0..k {
        let s = clustering.sizes()[c] as u64;
        let pairs = s * (s - 1) / 2;
        let edges = intra[c];
        log_l += likelihood_term(edges, pairs);
        clusters.push(ClusterDensity {
            edges,
            pairs,
            density: if pairs == 0 {
                0.0
            } else {
                edges as f64 / pairs as f64
            },
        });
        intra_pairs_sum += pairs;
        intra_edges_sum += edges;
    }
    let inter_edges = graph.edge_count() as u64 - intra_edges_sum;
    let inter_pairs = n * (n - 1) / 2 - intra_pairs_sum;
    log_l += likelihood_term(inter_edges, inter_pairs);
    let parts = LikelihoodParts {
        clusters,
        inter_edges,
        inter_pairs,
        inter_density: if inter_pairs == 0 {
            0.0
        } else {
            inter_edges as f64 / inter_pairs as f64
        },
    };
    Ok((log_l, parts))
}

/// ln [θ^a (1−θ)^(b−a)] at the MLE θ = a/b; zero when b = 0.
pub(crate) fn likelihood_term(edges: u64, pairs: u64) -> f64 {
    if pairs == 0 {
        return 0.0;
    }
    let a = edges as f64;
    let b = pairs as f64;
    xlnx(a) + xlnx(b - a) - xlnx(b)
}

/// Average size S plus the orders of magnitude O = log10(s_L/s_S) and the
/// 5-percentile effective orders O5.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeStats {
    pub average_size: f64,
    pub orders: f64,
    pub orders_5: f64,
}

/// O5 discards the floor(0.05·K) smallest clusters (ties broken by size,
/// then cluster id) before taking the smallest survivor.
pub fn size_stats(clustering: &Clustering) -> SizeStats {
    let k = clustering.cluster_count();
    let n = clustering.node_count();
    let mut by_size: Vec<(usize, usize)> = clustering
        .sizes()
        .iter()
        .enumerate()
        .map(|(id, &s)| (s, id))
        .collect();
    by_size.sort_unstable();
    let largest = by_size[k - 1].0 as f64;
    let smallest = by_size[0].0 as f64;
    let drop = k * 5 / 100;
    let s5 = by_size[drop].0 as f64;
    SizeStats {
        average_size: n as f64 / k as f64,
        orders: math::log10(largest / smallest),
        orders_5: math::log10(largest / s5),
    }
}

/// 90-percentile effective cluster diameter D90.
///
/// Averages, over sampled seed nodes (all nodes when n ≤ sample), the
/// smallest hop count reaching at least 90% of the seed's cluster by BFS
/// inside that cluster; if 90% is unreachable the deepest BFS level counts.
pub fn effective_diameter(
    graph: &Graph,
    clustering: &Clustering,
    sample: usize,
    seed: u64,
) -> Result<f64> {
    check_pair(graph, clustering)?;
    let n = graph.node_count();
    let seeds: Vec<u32> = if n <= sample {
        (0..n as u32).collect()
    } else {
        let mut rng = rng_from(seed);
        let mut picked = rand::seq::index::sample(&mut rng, n, sample).into_vec();
        picked.sort_unstable();
        picked.iter().map(|&v| v as u32).collect()
    };

    let mut visited_at = vec![u32::MAX; n];
    let mut frontier: Vec<u32> = Vec::new();
    let mut next: Vec<u32> = Vec::new();
    let mut total = 0.0f64;
    for (round, &s) in seeds.iter().enumerate() {
        let stamp = round as u32;
        let cluster = clustering.label(s as usize);
        let size = clustering.sizes()[cluster as usize];
        let target = (9 * size).div_ceil(10); // ceil(0.9 * size)
        let mut reached = 1usize;
        let mut hops = 0u64;
        visited_at[s as usize] = stamp;
        frontier.clear();
        frontier.push(s);
        while reached < target && !frontier.is_empty() {
            next.clear();
            for &u in &frontier {
                for &w in graph.neighbors(u as usize) {
                    let wi = w as usize;
                    if visited_at[wi] != stamp && clustering.label(wi) == cluster {
                        visited_at[wi] = stamp;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break; // cluster disconnected; deepest level reached counts
            }
            hops += 1;
            reached += next.len();
            core::mem::swap(&mut frontier, &mut next);
        }
        total += hops as f64;
    }
    Ok(total / seeds.len() as f64)
}

/// Degeneracy range: fraction of nodes in tiny clusters (s < s_tiny) and one
/// minus the largest cluster's share.
pub fn degeneracy(clustering: &Clustering, s_tiny: usize) -> (f64, f64) {
    let n = clustering.node_count() as f64;
    let tiny: usize = clustering.sizes().iter().filter(|&&s| s < s_tiny).sum();
    let largest = clustering.sizes().iter().copied().max().unwrap_or(0);
    (tiny as f64 / n, 1.0 - largest as f64 / n)
}

/// Continuous maximum-likelihood power-law fit over the tail sizes ≥ s_min.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub s_min: f64,
    pub tail_count: usize,
}

/// γ = 1 + n_tail / Σ ln(s_i/s_min) over sizes ≥ s_min (s_min > 1).
pub fn powerlaw_fit(sizes: &[f64], s_min: f64) -> Result<PowerLawFit> {
    if !s_min.is_finite() || s_min <= 1.0 {
        return Err(Error::BadParameter {
            what: "s_min must exceed 1",
        });
    }
    let mut tail_count = 0usize;
    let mut log_sum = 0.0f64;
    for &s in sizes {
        if s >= s_min {
            tail_count += 1;
            log_sum += math::ln(s / s_min);
        }
    }
    if tail_count < 2 {
        return Err(Error::UndefinedFit {
            reason: "fewer than two sizes in the tail",
        });
    }
    if log_sum <= 0.0 {
        return Err(Error::UndefinedFit {
            reason: "all tail sizes equal s_min",
        });
    }
    Ok(PowerLawFit {
        gamma: 1.0 + tail_count as f64 / log_sum,
        s_min,
        tail_count,
    })
}

/// Coverage of one cluster: internal degree mass over total degree mass,
/// 2·m_i / Σ_{v∈C_i} k_v.
pub fn cluster_coverage(graph: &Graph, clustering: &Clustering, cluster: usize) -> Result<f64> {
    check_pair(graph, clustering)?;
    if cluster >= clustering.cluster_count() {
        return Err(Error::ClusterOutOfRange {
            cluster,
            cluster_count: clustering.cluster_count(),
        });
    }
    let mut internal = 0u64;
    let mut total = 0u64;
    for v in 0..graph.node_count() {
        if clustering.label(v) as usize != cluster {
            continue;
        }
        total += graph.degree(v) as u64;
        internal += graph
            .neighbors(v)
            .iter()
            .filter(|&&w| clustering.label(w as usize) as usize == cluster)
            .count() as u64;
    }
    Ok(internal as f64 / total as f64)
}

/// All scalar statistics of one (graph, clustering) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub cluster_count: usize,
    pub average_size: f64,
    pub internal_degree: f64,
    pub expansion: f64,
    pub flake: f64,
    pub modularity: f64,
    pub log_likelihood: f64,
    pub orders: f64,
    pub orders_5: f64,
    pub effective_diameter_90: f64,
    pub coverage: f64,
    pub degeneracy_low: f64,
    pub degeneracy_high: f64,
    /// Wall clock of the producing run; set by the caller when known.
    pub runtime_seconds: Option<f64>,
}

/// Assemble the full report. D90 uses `d90_sample` seed nodes; the
/// degeneracy range uses `s_tiny`.
pub fn metrics_report(
    graph: &Graph,
    clustering: &Clustering,
    d90_sample: usize,
    s_tiny: usize,
    seed: u64,
) -> Result<MetricsReport> {
    let conn = connectivity(graph, clustering)?;
    let q = modularity(graph, clustering, 1.0)?;
    let (log_l, _) = log_likelihood(graph, clustering)?;
    let sizes = size_stats(clustering);
    let d90 = effective_diameter(graph, clustering, d90_sample, seed)?;
    let (deg_lo, deg_hi) = degeneracy(clustering, s_tiny);
    Ok(MetricsReport {
        cluster_count: clustering.cluster_count(),
        average_size: sizes.average_size,
        internal_degree: conn.internal_degree,
        expansion: conn.expansion,
        flake: conn.flake,
        modularity: q,
        log_likelihood: log_l,
        orders: sizes.orders,
        orders_5: sizes.orders_5,
        effective_diameter_90: d90,
        coverage: conn.coverage,
        degeneracy_low: deg_lo,
        degeneracy_high: deg_hi,
        runtime_seconds: None,
    })
}

/// Intra-cluster edge counts (each edge once) and total degrees per cluster.
pub(crate) fn cluster_edge_stats(
    graph: &Graph,
    clustering: &Clustering,
    k: usize,
) -> (Vec<u64>, Vec<u64>) {
    let mut intra = vec![0u64; k];
    let mut degrees = vec![0u64; k];
    for v in 0..graph.node_count() {
        let c = clustering.label(v) as usize;
        degrees[c] += graph.degree(v) as u64;
        for &w in graph.neighbors(v) {
            if (w as usize) > v && clustering.label(w as usize) as usize == c {
                intra[c] += 1;
            }
        }
    }
    (intra, degrees)
}

fn check_pair(graph: &Graph, clustering: &Clustering) -> Result<()> {
    if graph.node_count() != clustering.node_count() {
        return Err(Error::LengthMismatch {
            expected: graph.node_count(),
            found: clustering.node_count(),
        });
    }
    Ok(())
}

//! Two-step clustering post-processing: split giant clusters, then merge
//! tiny ones, both steps governed by the clustering log-likelihood.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::methods::{run_method, MethodConfig};
use crate::metrics::{cluster_edge_stats, likelihood_term, log_likelihood};
use crate::partition::Clustering;
use crate::rng::{mix_seed, rng_from};

/// Post-processing thresholds and the splitter method (normally the method
/// that produced the clustering).
#[derive(Debug, Clone, PartialEq)]
pub struct PostprocessConfig {
    /// Clusters smaller than this are merged into a neighbor.
    pub s_tiny: usize,
    /// Clusters larger than this are re-clustered.
    pub s_giant: usize,
    pub method: MethodConfig,
    pub seed: u64,
}

impl PostprocessConfig {
    pub fn new(method: MethodConfig, seed: u64) -> PostprocessConfig {
        PostprocessConfig {
            s_tiny: 15,
            s_giant: 10_000,
            method,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.s_tiny >= self.s_giant {
            return Err(Error::BadParameter {
                what: "s_tiny must be below s_giant",
            });
        }
        Ok(())
    }
}

/// One giant-split acceptance decision.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitDecision {
    pub cluster: u32,
    /// Global log-likelihood before the decision.
    pub log_l_before: f64,
    /// Global log-likelihood if the split were applied.
    pub log_l_candidate: f64,
    pub accepted: bool,
}

/// One tiny-merge step; `merged_into` is `None` when the cluster had no
/// neighboring cluster (a whole connected component).
#[derive(Debug, Clone, PartialEq)]
pub struct MergeDecision {
    pub cluster: u32,
    pub merged_into: Option<u32>,
    pub log_l_after: f64,
}

#[derive(Debug, Clone, Default)]
pub struct PostprocessTrace {
    pub splits: Vec<SplitDecision>,
    pub merges: Vec<MergeDecision>,
}

/// Re-cluster every cluster above `s_giant` with the configured method and
/// keep each split only when it strictly raises the log-likelihood. The
/// log-likelihood is non-decreasing across the decision sequence.
pub fn split_giants(
    graph: &Graph,
    clustering: &Clustering,
    config: &PostprocessConfig,
) -> Result<(Clustering, Vec<SplitDecision>)> {
    config.validate()?;
    let (mut log_l, parts) = log_likelihood(graph, clustering)?;
    let mut inter_edges = parts.inter_edges;
    let mut inter_pairs = parts.inter_pairs;
    let members = clustering.members();

    let mut labels = clustering.labels().to_vec();
    let mut next = clustering.cluster_count() as u32;
    let mut decisions = Vec::new();
    for (ci, nodes) in members.iter().enumerate() {
        if nodes.len() <= config.s_giant {
            continue;
        }
        let (sub, map) = graph.induced_subgraph(nodes)?;
        let mut splitter = config.method.clone();
        splitter.seed = mix_seed(config.seed, ci as u64);
        let sub_clustering = run_method(&sub, &splitter)?;
        let k = sub_clustering.cluster_count();
        if k <= 1 {
            decisions.push(SplitDecision {
                cluster: ci as u32,
                log_l_before: log_l,
                log_l_candidate: log_l,
                accepted: false,
            });
            continue;
        }
        let (sub_intra, _) = cluster_edge_stats(&sub, &sub_clustering, k);
        let mut delta_intra = -likelihood_term(parts.clusters[ci].edges, parts.clusters[ci].pairs);
        let mut kept_edges = 0u64;
        let mut kept_pairs = 0u64;
        for j in 0..k {
            let s = sub_clustering.sizes()[j] as u64;
            let pairs = s * (s - 1) / 2;
            delta_intra += likelihood_term(sub_intra[j], pairs);
            kept_edges += sub_intra[j];
            kept_pairs += pairs;
        }
        let freed_edges = parts.clusters[ci].edges - kept_edges;
        let freed_pairs = parts.clusters[ci].pairs - kept_pairs;
        let candidate = log_l + delta_intra - likelihood_term(inter_edges, inter_pairs)
            + likelihood_term(inter_edges + freed_edges, inter_pairs + freed_pairs);
        let accepted = candidate > log_l;
        decisions.push(SplitDecision {
            cluster: ci as u32,
            log_l_before: log_l,
            log_l_candidate: candidate,
            accepted,
        });
        if accepted {
            for (i, &node) in map.to_parent().iter().enumerate() {
                let sub_label = sub_clustering.label(i);
                labels[node as usize] = if sub_label == 0 {
                    ci as u32
                } else {
                    next + sub_label - 1
                };
            }
            next += k as u32 - 1;
            inter_edges += freed_edges;
            inter_pairs += freed_pairs;
            log_l = candidate;
        }
    }
    Ok((Clustering::from_labels(&labels), decisions))
}

/// Merge every cluster below `s_tiny` into the adjacent cluster whose merge
/// yields the best log-likelihood (even when every option worsens it).
///
/// Tiny clusters are visited in seeded random order; a cluster that grows to
/// `s_tiny` or beyond is not revisited. Clusters without any neighboring
/// cluster — whole connected components — survive.
pub fn merge_tiny(
    graph: &Graph,
    clustering: &Clustering,
    config: &PostprocessConfig,
) -> Result<(Clustering, Vec<MergeDecision>)> {
    config.validate()?;
    let (mut log_l, parts) = log_likelihood(graph, clustering)?;
    let mut inter_edges = parts.inter_edges;
    let mut inter_pairs = parts.inter_pairs;
    let k = clustering.cluster_count();
    let mut labels = clustering.labels().to_vec();
    let mut sizes: Vec<u64> = clustering.sizes().iter().map(|&s| s as u64).collect();
    let mut intra: Vec<u64> = parts.clusters.iter().map(|c| c.edges).collect();
    let mut members = clustering.members();
    let mut alive = vec![true; k];

    let mut order: Vec<u32> = (0..k as u32)
        .filter(|&c| (sizes[c as usize] as usize) < config.s_tiny)
        .collect();
    order.shuffle(&mut rng_from(config.seed));

    // Scratch for cut weights toward adjacent clusters.
    let mut cut_to = vec![0u64; k];
    let mut touched: Vec<u32> = Vec::new();
    let mut decisions = Vec::new();

    for &cu in &order {
        let c = cu as usize;
        if !alive[c] || sizes[c] as usize >= config.s_tiny {
            continue;
        }
        for &v in &members[c] {
            for &w in graph.neighbors(v as usize) {
                let lw = labels[w as usize];
                if lw != cu {
                    if cut_to[lw as usize] == 0 {
                        touched.push(lw);
                    }
                    cut_to[lw as usize] += 1;
                }
            }
        }
        if touched.is_empty() {
            decisions.push(MergeDecision {
                cluster: cu,
                merged_into: None,
                log_l_after: log_l,
            });
            continue;
        }
        touched.sort_unstable(); // smallest id wins ties
        let mut best: Option<(u32, f64, u64)> = None; // (target, log_l, cut)
        for &bu in &touched {
            let b = bu as usize;
            let cut = cut_to[b];
            let merged_size = sizes[c] + sizes[b];
            let merged_pairs = merged_size * (merged_size - 1) / 2;
            let pairs_c = sizes[c] * (sizes[c] - 1) / 2;
            let pairs_b = sizes[b] * (sizes[b] - 1) / 2;
            let gained_pairs = merged_pairs - pairs_c - pairs_b;
            let candidate =
                log_l - likelihood_term(intra[c], pairs_c) - likelihood_term(intra[b], pairs_b)
                    + likelihood_term(intra[c] + intra[b] + cut, merged_pairs)
                    - likelihood_term(inter_edges, inter_pairs)
                    + likelihood_term(inter_edges - cut, inter_pairs - gained_pairs);
            if best.is_none_or(|(_, l0, _)| candidate > l0) {
                best = Some((bu, candidate, cut));
            }
        }
        let (target, new_log_l, cut) = best.expect("adjacent cluster exists");
        let b = target as usize;
        let merged_size = sizes[c] + sizes[b];
        let merged_pairs = merged_size * (merged_size - 1) / 2;
        let pairs_c = sizes[c] * (sizes[c] - 1) / 2;
        let pairs_b = sizes[b] * (sizes[b] - 1) / 2;
        inter_edges -= cut;
        inter_pairs -= merged_pairs - pairs_c - pairs_b;
        intra[b] += intra[c] + cut;
        sizes[b] = merged_size;
        sizes[c] = 0;
        alive[c] = false;
        log_l = new_log_l;
        let moved = core::mem::take(&mut members[c]);
        for &v in &moved {
            labels[v as usize] = target;
        }
        members[b].extend(moved);
        decisions.push(MergeDecision {
            cluster: cu,
            merged_into: Some(target),
            log_l_after: log_l,
        });
        for &t in &touched {
            cut_to[t as usize] = 0;
        }
        touched.clear();
    }
    Ok((Clustering::from_labels(&labels), decisions))
}

/// Split giants, then merge tinies.
pub fn postprocess(
    graph: &Graph,
    clustering: &Clustering,
    config: &PostprocessConfig,
) -> Result<Clustering> {
    postprocess_with_trace(graph, clustering, config).map(|(c, _)| c)
}

/// [`postprocess`] keeping the decision trace of both steps.
pub fn postprocess_with_trace(
    graph: &Graph,
    clustering: &Clustering,
    config: &PostprocessConfig,
) -> Result<(Clustering, PostprocessTrace)> {
    let (split, splits) = split_giants(graph, clustering, config)?;
    let (merged, merges) = merge_tiny(graph, &split, config)?;
    Ok((merged, PostprocessTrace { splits, merges }))
}

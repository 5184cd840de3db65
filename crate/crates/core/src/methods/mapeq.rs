//! Two-level map equation: objective and Louvain-style minimizer.
//!
//! Node visit rates are degree-proportional (exact stationary distribution of
//! an undirected random walk; no teleportation), module exit rates are
//! cut/2m, and all code lengths are in bits.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::xlog2x;
use crate::methods::level::LevelGraph;
use crate::methods::louvain::DEFAULT_MAX_PASSES;
use crate::partition::Clustering;
use crate::rng::rng_from;

/// Expected per-step description length (bits) of a random walk under the
/// two-level modular codebook of `clustering`.
pub fn map_equation(graph: &Graph, clustering: &Clustering) -> Result<f64> {
    let n = graph.node_count();
    if clustering.node_count() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: clustering.node_count(),
        });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let two_m = 2.0 * graph.edge_count() as f64;
    let k = clustering.cluster_count();
    let mut tot = vec![0.0f64; k];
    let mut cut = vec![0.0f64; k];
    for v in 0..n {
        let c = clustering.label(v) as usize;
        tot[c] += graph.degree(v) as f64;
        for &w in graph.neighbors(v) {
            if clustering.label(w as usize) != c as u32 {
                cut[c] += 1.0;
            }
        }
    }
    let node_term: f64 = (0..n).map(|v| xlog2x(graph.degree(v) as f64 / two_m)).sum();
    Ok(codelength(&cut, &tot, two_m, node_term))
}

/// L = plogp(q) - 2 Σ plogp(q_i) + Σ plogp(q_i + p_i) - Σ_v plogp(p_v),
/// the expanded two-level map equation with plogp(x) = x log2 x.
fn codelength(cut: &[f64], tot: &[f64], two_m: f64, node_term: f64) -> f64 {
    let q_total: f64 = cut.iter().sum::<f64>() / two_m;
    let mut l = xlog2x(q_total) - node_term;
    for (&c, &t) in cut.iter().zip(tot.iter()) {
        let q = c / two_m;
        l += xlog2x(q + t / two_m) - 2.0 * xlog2x(q);
    }
    l
}

/// Minimize the two-level map equation by seeded local moving plus graph
/// aggregation. The accepted-move sequence is monotonically non-increasing
/// in the objective.
pub fn infomap_two_level(graph: &Graph, seed: u64) -> Result<Clustering> {
    infomap_capped(graph, seed, DEFAULT_MAX_PASSES)
}

pub(crate) fn infomap_capped(graph: &Graph, seed: u64, max_passes: usize) -> Result<Clustering> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng_from(seed);
    let mut level = LevelGraph::from_graph(graph);
    let mut assignment: Vec<u32> = (0..graph.node_count() as u32).collect();
    loop {
        let (membership, k, improved) = local_moving(&level, &mut rng, max_passes);
        for slot in assignment.iter_mut() {
            *slot = membership[*slot as usize];
        }
        if !improved || k == level.node_count() {
            break;
        }
        level = level.aggregate(&membership, k);
    }
    let result = Clustering::from_labels(&assignment);
    // Local moving never visits the trivial one-module state explicitly;
    // fall back to it when it encodes the walk more compactly.
    let all_in_one = Clustering::all_in_one(graph.node_count());
    if map_equation(graph, &all_in_one)? < map_equation(graph, &result)? {
        return Ok(all_in_one);
    }
    Ok(result)
}

/// Accept a move only when it shrinks the codelength by more than this.
const GAIN_EPS: f64 = 1e-12;

fn local_moving(
    level: &LevelGraph,
    rng: &mut ChaCha8Rng,
    max_passes: usize,
) -> (Vec<u32>, usize, bool) {
    let n = level.node_count();
    let two_m = level.two_m;
    let plogp = |x: f64| xlog2x(x / two_m);

    let mut community: Vec<u32> = (0..n as u32).collect();
    let mut tot: Vec<f64> = level.degree.clone();
    // Weighted external degree of each module (starts from singletons).
    let mut cut: Vec<f64> = (0..n)
        .map(|v| level.degree[v] - 2.0 * level.self_w[v])
        .collect();
    let mut q_total: f64 = cut.iter().sum();

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);

    let mut w_to = vec![0.0f64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut any_move = false;

    for _ in 0..max_passes {
        let mut moves = 0usize;
        for &vu in &order {
            let v = vu as usize;
            let a = community[v] as usize;
            for (w, wt) in level.neighbors(v) {
                let c = community[w as usize];
                if w_to[c as usize] == 0.0 {
                    touched.push(c);
                }
                w_to[c as usize] += wt;
            }
            let d = level.degree[v];
            let loops = level.self_w[v];
            // Stats of module a once v has left it.
            let cut_a_new = cut[a] - d + 2.0 * w_to[a] + 2.0 * loops;
            let tot_a_new = tot[a] - d;
            let removed_terms = -2.0 * plogp(cut[a]) + plogp(cut[a] + tot[a]);
            let a_side = -2.0 * plogp(cut_a_new) + plogp(cut_a_new + tot_a_new);

            let mut best: Option<(u32, f64, f64)> = None; // (module, delta, cut_b_new)
            for &cu in &touched {
                let b = cu as usize;
                if b == a {
                    continue;
                }
                let cut_b_new = cut[b] + d - 2.0 * w_to[b] - 2.0 * loops;
                let tot_b_new = tot[b] + d;
                let q_new = q_total - cut[a] - cut[b] + cut_a_new + cut_b_new;
                let delta = plogp(q_new) - plogp(q_total) + a_side
                    - removed_terms
                    - 2.0 * (plogp(cut_b_new) - plogp(cut[b]))
                    + plogp(cut_b_new + tot_b_new)
                    - plogp(cut[b] + tot[b]);
                if delta < -GAIN_EPS && best.is_none_or(|(_, d0, _)| delta < d0) {
                    best = Some((cu, delta, cut_b_new));
                }
            }
            if let Some((bu, _, cut_b_new)) = best {
                let b = bu as usize;
                q_total += cut_a_new + cut_b_new - cut[a] - cut[b];
                cut[a] = cut_a_new;
                tot[a] = tot_a_new;
                cut[b] = cut_b_new;
                tot[b] += d;
                community[v] = bu;
                moves += 1;
            }
            for &c in &touched {
                w_to[c as usize] = 0.0;
            }
            touched.clear();
        }
        if moves == 0 {
            break;
        }
        any_move = true;
    }

    let mut remap = vec![u32::MAX; n];
    let mut k = 0u32;
    for c in community.iter_mut() {
        if remap[*c as usize] == u32::MAX {
            remap[*c as usize] = k;
            k += 1;
        }
        *c = remap[*c as usize];
    }
    (community, k as usize, any_move)
}

//! Greedy multilevel modularity optimization.
//!
//! Starts from singletons and repeats seeded local-moving passes (each node
//! moves to the neighboring community with the largest positive gain in
//! generalized modularity) followed by graph aggregation, until no move
//! improves the objective.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::methods::level::LevelGraph;
use crate::partition::Clustering;
use crate::rng::rng_from;

pub(crate) const DEFAULT_MAX_PASSES: usize = 100;

/// Louvain clustering with resolution parameter `resolution` (1 recovers
/// plain modularity; larger values favor smaller clusters).
pub fn louvain(graph: &Graph, resolution: f64, seed: u64) -> Result<Clustering> {
    louvain_capped(graph, resolution, seed, DEFAULT_MAX_PASSES)
}

pub(crate) fn louvain_capped(
    graph: &Graph,
    resolution: f64,
    seed: u64,
    max_passes: usize,
) -> Result<Clustering> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng_from(seed);
    let mut level = LevelGraph::from_graph(graph);
    // assignment[original node] = community at the current level.
    let mut assignment: Vec<u32> = (0..graph.node_count() as u32).collect();
    loop {
        let (membership, k, improved) = local_moving(&level, resolution, &mut rng, max_passes);
        for slot in assignment.iter_mut() {
            *slot = membership[*slot as usize];
        }
        if !improved || k == level.node_count() {
            break;
        }
        level = level.aggregate(&membership, k);
    }
    Ok(Clustering::from_labels(&assignment))
}

/// One level of local moving. Returns compacted membership, the community
/// count, and whether any node moved.
fn local_moving(
    level: &LevelGraph,
    resolution: f64,
    rng: &mut ChaCha8Rng,
    max_passes: usize,
) -> (Vec<u32>, usize, bool) {
    let n = level.node_count();
    let mut community: Vec<u32> = (0..n as u32).collect();
    let mut tot: Vec<f64> = level.degree.clone();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);

    // Scratch: weight from the current node to each adjacent community.
    let mut w_to = vec![0.0f64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut any_move = false;

    for _ in 0..max_passes {
        let mut moves = 0usize;
        for &vu in &order {
            let v = vu as usize;
            let own = community[v];
            for (w, wt) in level.neighbors(v) {
                let c = community[w as usize];
                if w_to[c as usize] == 0.0 {
                    touched.push(c);
                }
                w_to[c as usize] += wt;
            }
            // Remove v from its community before comparing candidates.
            tot[own as usize] -= level.degree[v];
            let scale = resolution * level.degree[v] / level.two_m;
            let stay = w_to[own as usize] - scale * tot[own as usize];
            let mut best_comm = own;
            let mut best_score = stay;
            for &c in &touched {
                if c == own {
                    continue;
                }
                let score = w_to[c as usize] - scale * tot[c as usize];
                if score > best_score {
                    best_score = score;
                    best_comm = c;
                }
            }
            tot[best_comm as usize] += level.degree[v];
            if best_comm != own {
                community[v] = best_comm;
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

    // Compact community ids to 0..k.
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

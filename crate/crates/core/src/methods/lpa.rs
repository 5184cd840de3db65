//! Asynchronous label propagation.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::methods::louvain::DEFAULT_MAX_PASSES;
use crate::partition::Clustering;
use crate::rng::rng_from;

/// Label propagation: unique initial labels, asynchronous updates in seeded
/// random node order. Each node adopts the label most frequent among its
/// neighbors, ties broken uniformly at random among the maxima (the current
/// label included when it is one). Stops once every node's label is among
/// its neighborhood maxima, or after the pass cap.
pub fn label_propagation(graph: &Graph, seed: u64) -> Result<Clustering> {
    lpa_capped(graph, seed, DEFAULT_MAX_PASSES)
}

pub(crate) fn lpa_capped(graph: &Graph, seed: u64, max_passes: usize) -> Result<Clustering> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng_from(seed);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();

    // Stamped counting scratch, reset lazily per node.
    let mut count = vec![0u32; n];
    let mut seen: Vec<u32> = Vec::new();
    let mut maxima: Vec<u32> = Vec::new();

    for _ in 0..max_passes {
        order.shuffle(&mut rng);
        for &vu in &order {
            let v = vu as usize;
            let mut best = 0u32;
            for &w in graph.neighbors(v) {
                let l = labels[w as usize];
                if count[l as usize] == 0 {
                    seen.push(l);
                }
                count[l as usize] += 1;
                if count[l as usize] > best {
                    best = count[l as usize];
                }
            }
            maxima.clear();
            for &l in &seen {
                if count[l as usize] == best {
                    maxima.push(l);
                }
                count[l as usize] = 0;
            }
            seen.clear();
            labels[v] = if maxima.len() == 1 {
                maxima[0]
            } else {
                maxima[rng.gen_range(0..maxima.len())]
            };
        }
        if is_stable(graph, &labels, &mut count, &mut seen) {
            break;
        }
    }
    Ok(Clustering::from_labels(&labels))
}

/// Every node's label has maximal frequency in its neighborhood.
fn is_stable(graph: &Graph, labels: &[u32], count: &mut [u32], seen: &mut Vec<u32>) -> bool {
    for v in 0..graph.node_count() {
        let mut best = 0u32;
        for &w in graph.neighbors(v) {
            let l = labels[w as usize];
            if count[l as usize] == 0 {
                seen.push(l);
            }
            count[l as usize] += 1;
            if count[l as usize] > best {
                best = count[l as usize];
            }
        }
        let own = count[labels[v] as usize];
        for &l in seen.iter() {
            count[l as usize] = 0;
        }
        seen.clear();
        if own < best {
            return false;
        }
    }
    true
}

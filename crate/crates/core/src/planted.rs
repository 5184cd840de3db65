//! Planted-partition benchmark graphs with known ground truth.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_from_indices, Graph};
use crate::math;
use crate::partition::Clustering;
use crate::rng::rng_from;

/// A generated benchmark graph together with its planted ground truth.
#[derive(Debug, Clone)]
pub struct PlantedBenchmark {
    pub graph: Graph,
    pub truth: Clustering,
    pub p_in: f64,
    pub p_out: f64,
}

/// Generate a planted-partition graph: `blocks` groups of `block_size` nodes,
/// intra-block pairs linked with probability `p_in`, inter-block pairs with
/// `p_out` (`p_in > p_out`). Nodes left without any edge are dropped from the
/// graph and the truth alike. Deterministic for a fixed seed.
pub fn generate_planted_partition(
    blocks: usize,
    block_size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<PlantedBenchmark> {
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) {
        return Err(Error::BadParameter {
            what: "edge probabilities must lie in [0, 1]",
        });
    }
    if p_in <= p_out {
        return Err(Error::BadParameter {
            what: "p_in must exceed p_out",
        });
    }
    if blocks == 0 || block_size == 0 {
        return Err(Error::BadParameter {
            what: "blocks and block_size must be positive",
        });
    }
    let n = blocks * block_size;
    let mut rng = rng_from(seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();

    // Intra-block pairs.
    for b in 0..blocks {
        let base = (b * block_size) as u32;
        sample_pairs(&mut rng, pair_count(block_size), p_in, |t| {
            let (r, c) = decode_triangular(t, block_size);
            edges.push((base + r as u32, base + c as u32));
        });
    }
    // Inter-block pairs, one rectangular region per block pair.
    for bi in 0..blocks {
        for bj in (bi + 1)..blocks {
            let base_i = (bi * block_size) as u32;
            let base_j = (bj * block_size) as u32;
            sample_pairs(&mut rng, block_size * block_size, p_out, |t| {
                let r = t / block_size;
                let c = t % block_size;
                edges.push((base_i + r as u32, base_j + c as u32));
            });
        }
    }

    let (graph, _, old_to_new) = build_from_indices(n, &edges)?;
    // Surviving nodes keep their relative order, so the truth labels line up
    // with the new indices directly.
    let mut truth_labels = Vec::with_capacity(graph.node_count());
    for (old, kept) in old_to_new.iter().enumerate() {
        if kept.is_some() {
            truth_labels.push((old / block_size) as u32);
        }
    }
    let truth = Clustering::from_labels(&truth_labels);
    Ok(PlantedBenchmark {
        graph,
        truth,
        p_in,
        p_out,
    })
}

fn pair_count(s: usize) -> usize {
    s * (s - 1) / 2
}

/// Visit each of `total` candidate pairs with probability `p` using
/// geometric skips, so sparse regions cost O(expected edges).
fn sample_pairs<R: Rng, F: FnMut(usize)>(rng: &mut R, total: usize, p: f64, mut emit: F) {
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for t in 0..total {
            emit(t);
        }
        return;
    }
    let log_q = math::ln(1.0 - p);
    let mut t: i64 = -1;
    loop {
        let u: f64 = rng.gen::<f64>();
        let skip = math::floor(math::ln(1.0 - u) / log_q) as i64;
        t += skip + 1;
        if t < 0 || t as usize >= total {
            return;
        }
        emit(t as usize);
    }
}

/// Map a flat index `t` in [0, s(s-1)/2) to the pair (r, c), r < c, of the
/// upper triangle of an s×s block.
fn decode_triangular(t: usize, s: usize) -> (usize, usize) {
    let tf = t as f64;
    let sf = s as f64;
    let mut r = (((2.0 * sf - 1.0) - math::sqrt((2.0 * sf - 1.0) * (2.0 * sf - 1.0) - 8.0 * tf))
        / 2.0) as usize;
    // Float rounding can land one row off; nudge to the containing row.
    while row_offset(r, s) > t {
        r -= 1;
    }
    while row_offset(r + 1, s) <= t {
        r += 1;
    }
    let c = r + 1 + (t - row_offset(r, s));
    (r, c)
}

/// Flat offset of the first pair in row `r` of the upper triangle: rows
/// 0..r hold (s-1) + (s-2) + ... + (s-r) entries.
fn row_offset(r: usize, s: usize) -> usize {
    r * s - r * (r + 1) / 2
}

//! Multilevel k-way partitioning.
//!
//! Coarsens by randomized heavy-edge matching, cuts the coarsest graph with
//! greedy balanced seed growth (several seeded trials, best cut kept), then
//! uncoarsens with FM-style boundary refinement under a balance tolerance.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;
use crate::rng::rng_from;

const COARSEN_FLOOR_PER_PART: usize = 10;
const COARSEN_FLOOR_MIN: usize = 200;
const BALANCE_FACTOR: f64 = 1.3;
const INITIAL_TRIALS: usize = 4;
const REFINE_PASSES: usize = 8;

const UNASSIGNED: u32 = u32::MAX;

/// Cut `graph` into exactly `clusters` non-empty parts of similar size.
pub fn kway_partition(graph: &Graph, clusters: usize, seed: u64) -> Result<Clustering> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if clusters == 0 {
        return Err(Error::BadParameter {
            what: "cluster count must be positive",
        });
    }
    if clusters > n {
        return Err(Error::TooManyClusters {
            requested: clusters,
            node_count: n,
        });
    }
    if clusters == n {
        return Ok(Clustering::singletons(n));
    }
    if clusters == 1 {
        return Ok(Clustering::all_in_one(n));
    }

    let mut rng = rng_from(seed);
    let bounds = Balance::relaxed(n as u64, clusters);

    // Coarsening phase.
    let floor = (COARSEN_FLOOR_PER_PART * clusters).max(COARSEN_FLOOR_MIN);
    let mut graphs = vec![CoarseGraph::from_graph(graph)];
    let mut maps: Vec<Vec<u32>> = Vec::new();
    while graphs.last().unwrap().node_count() > floor {
        let fine = graphs.last().unwrap();
        let matched = heavy_edge_matching(fine, &mut rng);
        let (coarse, map) = fine.contract(&matched);
        // Stop when matching stalls and barely shrinks the graph.
        if coarse.node_count() * 20 > fine.node_count() * 19 {
            break;
        }
        maps.push(map);
        graphs.push(coarse);
    }

    // Initial partitioning on the coarsest graph, best of several trials.
    let coarsest = graphs.last().unwrap();
    let mut best: Option<(Vec<u32>, f64, u64)> = None;
    for _ in 0..INITIAL_TRIALS {
        let mut part = grow_partition(coarsest, clusters, &bounds, &mut rng);
        refine(coarsest, &mut part, clusters, &bounds, &mut rng);
        let (cut, max_w) = score(coarsest, &part, clusters);
        let replace = match &best {
            None => true,
            Some((_, c0, w0)) => cut < *c0 || (cut == *c0 && max_w < *w0),
        };
        if replace {
            best = Some((part, cut, max_w));
        }
    }
    let mut part = best.unwrap().0;

    // Uncoarsening with refinement at every level.
    for i in (0..maps.len()).rev() {
        let map = &maps[i];
        let mut fine_part = vec![0u32; graphs[i].node_count()];
        for (v, p) in fine_part.iter_mut().enumerate() {
            *p = part[map[v] as usize];
        }
        part = fine_part;
        refine(&graphs[i], &mut part, clusters, &bounds, &mut rng);
    }
    // Settle into the final window, then polish within it.
    let final_bounds = Balance::tight(n as u64, clusters);
    repair_balance(&graphs[0], &mut part, clusters, &final_bounds);
    refine(&graphs[0], &mut part, clusters, &final_bounds, &mut rng);
    Ok(Clustering::from_labels(&part))
}

/// Weighted part-size window derived from the balance factor.
struct Balance {
    upper: u64,
    lower: u64,
}

impl Balance {
    /// Loose window used while refining: keeps moves available.
    fn relaxed(total: u64, clusters: usize) -> Balance {
        let avg = total as f64 / clusters as f64;
        let upper = crate::math::ceil(BALANCE_FACTOR * avg) as u64;
        let lower = (crate::math::floor(avg / BALANCE_FACTOR) as u64).max(1);
        Balance { upper, lower }
    }

    /// Final window: anchoring both ends at sqrt(factor) around the average
    /// caps the max/min size ratio at the balance factor itself. Falls back
    /// to the perfect-balance window when the quotient is too small for the
    /// ratio to be attainable.
    fn tight(total: u64, clusters: usize) -> Balance {
        let c = clusters as u64;
        let avg = total as f64 / c as f64;
        let spread = crate::math::sqrt(BALANCE_FACTOR);
        let upper = crate::math::floor(avg * spread) as u64;
        let lower = crate::math::ceil(avg / spread) as u64;
        if lower >= 1 && lower <= upper && lower * c <= total && upper * c >= total {
            return Balance { upper, lower };
        }
        let lower = (crate::math::floor(avg) as u64).max(1);
        let upper = crate::math::ceil(avg) as u64;
        Balance {
            upper,
            lower: lower.min(upper),
        }
    }
}

/// Internal weighted graph with vertex weights (original node counts).
struct CoarseGraph {
    offsets: Vec<usize>,
    nbr: Vec<u32>,
    nbr_w: Vec<f64>,
    vwgt: Vec<u64>,
    total_w: u64,
}

impl CoarseGraph {
    fn from_graph(g: &Graph) -> CoarseGraph {
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for v in 0..n {
            offsets.push(offsets[v] + g.degree(v));
        }
        let nbr: Vec<u32> = (0..n)
            .flat_map(|v| g.neighbors(v).iter().copied())
            .collect();
        let nbr_w = vec![1.0; nbr.len()];
        CoarseGraph {
            offsets,
            nbr,
            nbr_w,
            vwgt: vec![1; n],
            total_w: n as u64,
        }
    }

    fn node_count(&self) -> usize {
        self.vwgt.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.nbr[range.clone()]
            .iter()
            .copied()
            .zip(self.nbr_w[range].iter().copied())
    }

    /// Contract matched pairs (`matched[v]` = partner or `v` itself).
    fn contract(&self, matched: &[u32]) -> (CoarseGraph, Vec<u32>) {
        let n = self.node_count();
        let mut fine_to_coarse = vec![UNASSIGNED; n];
        let mut coarse_n = 0u32;
        for v in 0..n {
            if fine_to_coarse[v] == UNASSIGNED {
                fine_to_coarse[v] = coarse_n;
                let partner = matched[v] as usize;
                if partner != v {
                    fine_to_coarse[partner] = coarse_n;
                }
                coarse_n += 1;
            }
        }
        let k = coarse_n as usize;
        let mut vwgt = vec![0u64; k];
        for v in 0..n {
            vwgt[fine_to_coarse[v] as usize] += self.vwgt[v];
        }
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&v| fine_to_coarse[v as usize]);
        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0usize);
        let mut nbr = Vec::new();
        let mut nbr_w = Vec::new();
        let mut acc = vec![0.0f64; k];
        let mut touched: Vec<u32> = Vec::new();
        let mut i = 0usize;
        for c in 0..coarse_n {
            while i < n && fine_to_coarse[order[i] as usize] == c {
                let v = order[i] as usize;
                for (w, wt) in self.neighbors(v) {
                    let cw = fine_to_coarse[w as usize];
                    if cw != c {
                        if acc[cw as usize] == 0.0 {
                            touched.push(cw);
                        }
                        acc[cw as usize] += wt;
                    }
                }
                i += 1;
            }
            touched.sort_unstable();
            for &t in &touched {
                nbr.push(t);
                nbr_w.push(acc[t as usize]);
                acc[t as usize] = 0.0;
            }
            touched.clear();
            offsets.push(nbr.len());
        }
        (
            CoarseGraph {
                offsets,
                nbr,
                nbr_w,
                vwgt,
                total_w: self.total_w,
            },
            fine_to_coarse,
        )
    }
}

/// Randomized heavy-edge matching: visit nodes in random order; an unmatched
/// node grabs its heaviest unmatched neighbor.
fn heavy_edge_matching(g: &CoarseGraph, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let n = g.node_count();
    let mut matched: Vec<u32> = vec![UNASSIGNED; n];
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    for &vu in &order {
        let v = vu as usize;
        if matched[v] != UNASSIGNED {
            continue;
        }
        let mut pick = vu;
        let mut pick_w = -1.0f64;
        for (w, wt) in g.neighbors(v) {
            if matched[w as usize] == UNASSIGNED && w != vu && wt > pick_w {
                pick = w;
                pick_w = wt;
            }
        }
        matched[v] = pick;
        matched[pick as usize] = vu;
    }
    matched
}

/// Greedy balanced seed growth into exactly `clusters` non-empty parts.
fn grow_partition(
    g: &CoarseGraph,
    clusters: usize,
    bounds: &Balance,
    rng: &mut ChaCha8Rng,
) -> Vec<u32> {
    let n = g.node_count();
    let mut part = vec![UNASSIGNED; n];
    let mut weights = vec![0u64; clusters];
    let mut pool: Vec<u32> = (0..n as u32).collect();
    pool.shuffle(rng);
    let mut unassigned = n;
    let mut assigned_w = 0u64;

    let mut queue: Vec<u32> = Vec::new();
    for p in 0..clusters {
        let remaining_parts = clusters - p;
        if p + 1 == clusters {
            for v in 0..n {
                if part[v] == UNASSIGNED {
                    part[v] = p as u32;
                    weights[p] += g.vwgt[v];
                }
            }
            break;
        }
        let target = (g.total_w - assigned_w) / remaining_parts as u64;
        queue.clear();
        let mut head = 0usize;
        while weights[p] < target && unassigned > remaining_parts - 1 {
            let v = if head < queue.len() {
                let v = queue[head] as usize;
                head += 1;
                v
            } else {
                // Frontier exhausted; restart from a fresh random seed.
                let mut next = None;
                while let Some(cand) = pool.pop() {
                    if part[cand as usize] == UNASSIGNED {
                        next = Some(cand as usize);
                        break;
                    }
                }
                match next {
                    Some(v) => v,
                    None => break,
                }
            };
            if part[v] != UNASSIGNED {
                continue;
            }
            if weights[p] > 0 && weights[p] + g.vwgt[v] > bounds.upper {
                continue;
            }
            part[v] = p as u32;
            weights[p] += g.vwgt[v];
            assigned_w += g.vwgt[v];
            unassigned -= 1;
            for (w, _) in g.neighbors(v) {
                if part[w as usize] == UNASSIGNED {
                    queue.push(w);
                }
            }
        }
        debug_assert!(weights[p] > 0, "seed growth left part {p} empty");
    }
    part
}

/// FM-style local refinement: positive-gain moves, zero-gain moves that
/// strictly improve balance, all within the balance window.
fn refine(
    g: &CoarseGraph,
    part: &mut [u32],
    clusters: usize,
    bounds: &Balance,
    rng: &mut ChaCha8Rng,
) {
    let n = g.node_count();
    let mut weights = vec![0u64; clusters];
    for v in 0..n {
        weights[part[v] as usize] += g.vwgt[v];
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut w_to = vec![0.0f64; clusters];
    let mut touched: Vec<u32> = Vec::new();

    for _ in 0..REFINE_PASSES {
        order.shuffle(rng);
        let mut moves = 0usize;
        for &vu in &order {
            let v = vu as usize;
            let a = part[v] as usize;
            let vw = g.vwgt[v];
            // Moving v out must not drop its part below the window.
            if weights[a] < vw || weights[a] - vw < bounds.lower {
                continue;
            }
            for (w, wt) in g.neighbors(v) {
                let c = part[w as usize] as usize;
                if w_to[c] == 0.0 {
                    touched.push(c as u32);
                }
                w_to[c] += wt;
            }
            let internal = w_to[a];
            let mut best: Option<(usize, f64)> = None;
            for &cu in &touched {
                let b = cu as usize;
                if b == a || weights[b] + vw > bounds.upper {
                    continue;
                }
                let gain = w_to[b] - internal;
                let replace = match best {
                    None => true,
                    Some((b0, g0)) => gain > g0 || (gain == g0 && weights[b] < weights[b0]),
                };
                if replace {
                    best = Some((b, gain));
                }
            }
            if let Some((b, gain)) = best {
                if gain > 0.0 || (gain == 0.0 && weights[a] > weights[b] + vw) {
                    weights[a] -= vw;
                    weights[b] += vw;
                    part[v] = b as u32;
                    moves += 1;
                }
            }
            for &cu in &touched {
                w_to[cu as usize] = 0.0;
            }
            touched.clear();
        }
        if moves == 0 {
            break;
        }
    }
}

/// Total cut weight and heaviest part weight.
fn score(g: &CoarseGraph, part: &[u32], clusters: usize) -> (f64, u64) {
    let mut cut = 0.0;
    let mut weights = vec![0u64; clusters];
    for v in 0..g.node_count() {
        weights[part[v] as usize] += g.vwgt[v];
        for (w, wt) in g.neighbors(v) {
            if part[w as usize] != part[v] {
                cut += wt;
            }
        }
    }
    (cut / 2.0, weights.iter().copied().max().unwrap_or(0))
}

/// Force every part back inside the balance window (unit vertex weights
/// assumed feasible, i.e. the finest level). Picks the least damaging
/// boundary move each step; bounded iteration count.
fn repair_balance(g: &CoarseGraph, part: &mut [u32], clusters: usize, bounds: &Balance) {
    let n = g.node_count();
    let mut weights = vec![0u64; clusters];
    for v in 0..n {
        weights[part[v] as usize] += g.vwgt[v];
    }
    let mut w_to = vec![0.0f64; clusters];
    let mut touched: Vec<u32> = Vec::new();

    for _ in 0..2 * n {
        let over = (0..clusters).max_by_key(|&p| weights[p]).unwrap();
        let under = (0..clusters).min_by_key(|&p| weights[p]).unwrap();
        let fix_over = weights[over] > bounds.upper;
        let fix_under = weights[under] < bounds.lower;
        if !fix_over && !fix_under {
            break;
        }
        // Drain the heaviest part; when a part is underweight it is the
        // designated sink, otherwise any part with room may receive.
        let source = over;
        let sink = if fix_over { usize::MAX } else { under };
        let mut best: Option<(usize, usize, f64)> = None; // (node, dest, damage)
        for v in 0..n {
            if part[v] as usize != source {
                continue;
            }
            let vw = g.vwgt[v];
            if weights[source] < vw || weights[source] - vw < 1 {
                continue;
            }
            for (w, wt) in g.neighbors(v) {
                let c = part[w as usize] as usize;
                if w_to[c] == 0.0 {
                    touched.push(c as u32);
                }
                w_to[c] += wt;
            }
            let internal = w_to[source];
            let candidates: Vec<usize> = if fix_over {
                (0..clusters)
                    .filter(|&b| b != source && weights[b] + vw <= bounds.upper)
                    .collect()
            } else {
                vec![sink]
            };
            for b in candidates {
                let damage = internal - w_to[b];
                let replace = match best {
                    None => true,
                    Some((_, b0, d0)) => damage < d0 || (damage == d0 && weights[b] < weights[b0]),
                };
                if replace {
                    best = Some((v, b, damage));
                }
            }
            for &cu in &touched {
                w_to[cu as usize] = 0.0;
            }
            touched.clear();
        }
        match best {
            Some((v, b, _)) => {
                let vw = g.vwgt[v];
                weights[part[v] as usize] -= vw;
                weights[b] += vw;
                part[v] = b as u32;
            }
            None => break,
        }
    }
}

//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! Graphs are built from raw edge lists by discarding edge directions,
//! duplicate edges and self-loops; nodes left without any edge are dropped.
//! Node identifiers are arbitrary tokens mapped to dense 0-based indices at
//! build time; all computation runs on the indices.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::rng_from;

/// Simple undirected unweighted graph.
///
/// Adjacency is stored CSR-style: `neighbors[offsets[v]..offsets[v + 1]]`
/// holds the sorted neighbor indices of `v`. Invariants maintained by every
/// constructor: no self-loops, no duplicate edges, symmetric adjacency, and
/// every node has degree ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    external_ids: Vec<String>,
    edge_count: usize,
}

/// Summary statistics of a freshly built graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    /// Nodes surviving the cleaning rules.
    pub node_count: usize,
    /// Undirected edges after deduplication.
    pub edge_count: usize,
    /// Average degree 2m/n.
    pub average_degree: f64,
    /// Fraction of nodes in the largest connected component.
    pub lcc_fraction: f64,
    /// Input identifiers removed because they kept no edge.
    pub dropped_nodes: usize,
}

/// Result of a degree-preserving rewire.
#[derive(Debug, Clone)]
pub struct RewireOutcome {
    pub graph: Graph,
    /// Swap count implied by alpha: ceil(alpha * m / 2).
    pub swaps_requested: usize,
    /// Swaps actually performed before the retry budget ran out.
    pub swaps_performed: usize,
}

/// Index translation between a subgraph and its parent graph.
#[derive(Debug, Clone)]
pub struct SubgraphMap {
    to_parent: Vec<u32>,
}

impl SubgraphMap {
    /// Parent index of subgraph node `sub`.
    pub fn parent_of(&self, sub: usize) -> u32 {
        self.to_parent[sub]
    }

    /// Subgraph index of parent node `parent`, if it is part of the subgraph.
    pub fn sub_of(&self, parent: u32) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok()
    }

    /// Subgraph-index → parent-index table (sorted by parent index).
    pub fn to_parent(&self) -> &[u32] {
        &self.to_parent
    }
}

/// Retry budget multiplier for rejected double-edge swaps.
const SWAP_RETRY_FACTOR: usize = 100;

impl Graph {
    /// Build a clean graph from raw (source, destination) identifier pairs.
    ///
    /// Directions are dropped, `(u,v)`/`(v,u)`/repeats collapse to one edge,
    /// self-loops are removed, and identifiers that keep no edge are
    /// discarded. Returns the graph plus the statistics of the final result.
    pub fn from_edges<I, S>(raw: I) -> Result<(Graph, DegreeStats)>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut index: BTreeMap<String, u32> = BTreeMap::new();
        let mut ids: Vec<String> = Vec::new();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let intern = |token: &str, ids: &mut Vec<String>, index: &mut BTreeMap<String, u32>| {
            if let Some(&i) = index.get(token) {
                i
            } else {
                let i = ids.len() as u32;
                ids.push(token.to_string());
                index.insert(token.to_string(), i);
                i
            }
        };
        for (a, b) in raw {
            let ia = intern(a.as_ref(), &mut ids, &mut index);
            let ib = intern(b.as_ref(), &mut ids, &mut index);
            if ia != ib {
                pairs.push((ia.min(ib), ia.max(ib)));
            }
        }
        let (graph, stats, _) = build_cleaned(ids, pairs)?;
        Ok((graph, stats))
    }

    /// Build from index pairs over nodes `0..node_count`; external ids are
    /// the decimal indices. Applies the same cleaning rules as
    /// [`Graph::from_edges`].
    pub fn from_index_edges(
        node_count: usize,
        pairs: &[(u32, u32)],
    ) -> Result<(Graph, DegreeStats)> {
        let (graph, stats, _) = build_from_indices(node_count, pairs)?;
        Ok((graph, stats))
    }

    pub fn node_count(&self) -> usize {
        self.external_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn external_id(&self, v: usize) -> &str {
        &self.external_ids[v]
    }

    /// Average degree k = 2m/n.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.node_count() as f64
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Iterate undirected edges as (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    /// Nodes of the largest connected component, sorted by index.
    ///
    /// Ties between equal-sized components go to the one containing the
    /// smallest node index.
    pub fn largest_connected_component(&self) -> Vec<u32> {
        let n = self.node_count();
        let mut comp = vec![u32::MAX; n];
        let mut best_start = 0usize;
        let mut best_size = 0usize;
        let mut queue = VecDeque::new();
        let mut next = 0u32;
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            let id = next;
            next += 1;
            comp[start] = id;
            queue.push_back(start as u32);
            let mut size = 0usize;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in self.neighbors(u as usize) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = id;
                        queue.push_back(v);
                    }
                }
            }
            // Strict inequality keeps the earliest component on ties.
            if size > best_size {
                best_size = size;
                best_start = start;
            }
        }
        let best_id = comp[best_start];
        (0..n as u32)
            .filter(|&v| comp[v as usize] == best_id)
            .collect()
    }

    /// Subgraph induced by `nodes` plus the index translation map.
    ///
    /// Nodes isolated inside the subgraph are kept so they stay assignable
    /// to clusters. `nodes` may be unsorted; duplicates are ignored.
    pub fn induced_subgraph(&self, nodes: &[u32]) -> Result<(Graph, SubgraphMap)> {
        let n = self.node_count();
        let mut selected: Vec<u32> = nodes.to_vec();
        selected.sort_unstable();
        selected.dedup();
        if let Some(&bad) = selected.last() {
            if bad as usize >= n {
                return Err(Error::NodeOutOfRange {
                    node: bad as usize,
                    node_count: n,
                });
            }
        }
        let mut to_sub = vec![u32::MAX; n];
        for (si, &p) in selected.iter().enumerate() {
            to_sub[p as usize] = si as u32;
        }
        let sub_n = selected.len();
        let mut offsets = vec![0usize; sub_n + 1];
        for (si, &p) in selected.iter().enumerate() {
            let deg = self
                .neighbors(p as usize)
                .iter()
                .filter(|&&w| to_sub[w as usize] != u32::MAX)
                .count();
            offsets[si + 1] = offsets[si] + deg;
        }
        let mut neighbors = Vec::with_capacity(offsets[sub_n]);
        for &p in &selected {
            for &w in self.neighbors(p as usize) {
                let sw = to_sub[w as usize];
                if sw != u32::MAX {
                    neighbors.push(sw);
                }
            }
        }
        let edge_count = neighbors.len() / 2;
        let external_ids = selected
            .iter()
            .map(|&p| self.external_ids[p as usize].clone())
            .collect();
        let graph = Graph {
            offsets,
            neighbors,
            external_ids,
            edge_count,
        };
        Ok((
            graph,
            SubgraphMap {
                to_parent: selected,
            },
        ))
    }

    /// Degree-preserving perturbation via uniform double-edge swaps.
    ///
    /// Performs ceil(alpha·m/2) accepted swaps — roughly alpha·m edge
    /// endpoints change — rejecting swaps that would create self-loops or
    /// duplicate edges. If the retry budget runs out on a degenerate graph,
    /// the best effort so far is returned with the actual swap count.
    pub fn rewire(&self, alpha: f64, seed: u64) -> RewireOutcome {
        let m = self.edge_count;
        let requested = math::ceil(alpha * m as f64 / 2.0) as usize;
        if requested == 0 || m < 2 {
            return RewireOutcome {
                graph: self.clone(),
                swaps_requested: requested,
                swaps_performed: 0,
            };
        }
        let mut edges: Vec<(u32, u32)> = self.edges().collect();
        let mut present: BTreeSet<(u32, u32)> = edges.iter().copied().collect();
        let mut rng = rng_from(seed);
        let budget = SWAP_RETRY_FACTOR * requested;
        let mut performed = 0usize;
        let mut attempts = 0usize;
        while performed < requested && attempts < budget {
            attempts += 1;
            let i = rng.gen_range(0..m);
            let j = rng.gen_range(0..m);
            if i == j {
                continue;
            }
            let (a, b) = edges[i];
            let (mut c, mut d) = edges[j];
            // Random orientation makes the swap uniform over both pairings.
            if rng.gen::<bool>() {
                core::mem::swap(&mut c, &mut d);
            }
            // (a,b),(c,d) -> (a,d),(c,b); all four endpoints must differ.
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let e1 = (a.min(d), a.max(d));
            let e2 = (c.min(b), c.max(b));
            if present.contains(&e1) || present.contains(&e2) {
                continue;
            }
            present.remove(&edges[i]);
            present.remove(&edges[j]);
            present.insert(e1);
            present.insert(e2);
            edges[i] = e1;
            edges[j] = e2;
            performed += 1;
        }
        let graph = rebuild_same_nodes(self, &edges);
        RewireOutcome {
            graph,
            swaps_requested: requested,
            swaps_performed: performed,
        }
    }
}

/// Rebuild a graph over the same node set (ids and indices unchanged) from a
/// clean edge list.
fn rebuild_same_nodes(original: &Graph, edges: &[(u32, u32)]) -> Graph {
    let n = original.node_count();
    let mut degree = vec![0usize; n];
    for &(u, v) in edges {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + degree[v];
    }
    let mut cursor = offsets.clone();
    let mut neighbors = vec![0u32; offsets[n]];
    for &(u, v) in edges {
        neighbors[cursor[u as usize]] = v;
        cursor[u as usize] += 1;
        neighbors[cursor[v as usize]] = u;
        cursor[v as usize] += 1;
    }
    for v in 0..n {
        neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
    }
    Graph {
        offsets,
        neighbors,
        external_ids: original.external_ids.clone(),
        edge_count: edges.len(),
    }
}

/// Shared cleaning pipeline. `pairs` must already be normalized (u < v) and
/// free of self-loops; `ids` covers every index mentioned. Returns the graph,
/// its statistics, and the old-index → new-index map (None = dropped).
pub(crate) fn build_cleaned(
    ids: Vec<String>,
    mut pairs: Vec<(u32, u32)>,
) -> Result<(Graph, DegreeStats, Vec<Option<u32>>)> {
    let seen = ids.len();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut degree = vec![0usize; seen];
    for &(u, v) in &pairs {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut old_to_new: Vec<Option<u32>> = vec![None; seen];
    let mut external_ids = Vec::new();
    for (old, id) in ids.into_iter().enumerate() {
        if degree[old] > 0 {
            old_to_new[old] = Some(external_ids.len() as u32);
            external_ids.push(id);
        }
    }
    let n = external_ids.len();
    let dropped = seen - n;
    let mut offsets = vec![0usize; n + 1];
    {
        let mut acc = 0usize;
        let mut new_index = 0usize;
        for old in 0..seen {
            if old_to_new[old].is_some() {
                offsets[new_index] = acc;
                acc += degree[old];
                new_index += 1;
            }
        }
        offsets[n] = acc;
    }
    let mut cursor: Vec<usize> = offsets[..n].to_vec();
    let mut neighbors = vec![0u32; offsets[n]];
    for &(u, v) in &pairs {
        let nu = old_to_new[u as usize].expect("endpoint has degree > 0");
        let nv = old_to_new[v as usize].expect("endpoint has degree > 0");
        neighbors[cursor[nu as usize]] = nv;
        cursor[nu as usize] += 1;
        neighbors[cursor[nv as usize]] = nu;
        cursor[nv as usize] += 1;
    }
    for v in 0..n {
        neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
    }
    let graph = Graph {
        offsets,
        neighbors,
        external_ids,
        edge_count: pairs.len(),
    };
    let lcc = graph.largest_connected_component().len();
    let stats = DegreeStats {
        node_count: n,
        edge_count: graph.edge_count,
        average_degree: graph.average_degree(),
        lcc_fraction: lcc as f64 / n as f64,
        dropped_nodes: dropped,
    };
    Ok((graph, stats, old_to_new))
}

/// Index-pair entry point shared with the benchmark generator.
pub(crate) fn build_from_indices(
    node_count: usize,
    pairs: &[(u32, u32)],
) -> Result<(Graph, DegreeStats, Vec<Option<u32>>)> {
    let ids: Vec<String> = (0..node_count).map(|i| i.to_string()).collect();
    let mut normalized = Vec::with_capacity(pairs.len());
    for &(u, v) in pairs {
        if u as usize >= node_count || v as usize >= node_count {
            return Err(Error::NodeOutOfRange {
                node: u.max(v) as usize,
                node_count,
            });
        }
        if u != v {
            normalized.push((u.min(v), u.max(v)));
        }
    }
    build_cleaned(ids, normalized)
}

//! Node partitions and partition manipulation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A partition of `n` nodes into non-empty clusters with dense 0-based ids.
///
/// Immutable once built; cluster ids are compacted by first appearance, so no
/// empty cluster is representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    labels: Vec<u32>,
    sizes: Vec<usize>,
}

impl Clustering {
    /// Build from arbitrary integer labels, remapping ids to 0..K-1 by first
    /// appearance (compact relabeling). Idempotent on already-compact input.
    pub fn from_labels(raw: &[u32]) -> Clustering {
        let n = raw.len();
        // Dense remap table when the label space is small, tree map otherwise.
        let max = raw.iter().copied().max().unwrap_or(0) as usize;
        let mut labels = Vec::with_capacity(n);
        let mut sizes: Vec<usize> = Vec::new();
        if max <= 4 * n + 1024 {
            let mut remap = vec![u32::MAX; max + 1];
            for &l in raw {
                let slot = &mut remap[l as usize];
                if *slot == u32::MAX {
                    *slot = sizes.len() as u32;
                    sizes.push(0);
                }
                sizes[*slot as usize] += 1;
                labels.push(*slot);
            }
        } else {
            let mut remap: BTreeMap<u32, u32> = BTreeMap::new();
            for &l in raw {
                let next = sizes.len() as u32;
                let id = *remap.entry(l).or_insert(next);
                if id == next {
                    sizes.push(0);
                }
                sizes[id as usize] += 1;
                labels.push(id);
            }
        }
        Clustering { labels, sizes }
    }

    /// Every node in its own cluster.
    pub fn singletons(n: usize) -> Clustering {
        Clustering {
            labels: (0..n as u32).collect(),
            sizes: vec![1; n],
        }
    }

    /// All nodes in one cluster.
    pub fn all_in_one(n: usize) -> Clustering {
        Clustering {
            labels: vec![0; n],
            sizes: vec![n],
        }
    }

    /// Assign each node to the earliest set of `cover` containing it.
    ///
    /// Errors with the offending node if the cover misses one.
    pub fn flatten_overlaps(cover: &[Vec<u32>], n: usize) -> Result<Clustering> {
        let mut owner = vec![u32::MAX; n];
        for (ci, set) in cover.iter().enumerate() {
            for &v in set {
                if v as usize >= n {
                    return Err(Error::NodeOutOfRange {
                        node: v as usize,
                        node_count: n,
                    });
                }
                if owner[v as usize] == u32::MAX {
                    owner[v as usize] = ci as u32;
                }
            }
        }
        if let Some(node) = owner.iter().position(|&o| o == u32::MAX) {
            return Err(Error::UncoveredNode { node });
        }
        Ok(Clustering::from_labels(&owner))
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn label(&self, node: usize) -> u32 {
        self.labels[node]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Cluster sizes, indexed by cluster id.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Cluster sizes in descending order.
    pub fn sizes_sorted_desc(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Member lists per cluster, nodes in index order.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (node, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(node as u32);
        }
        out
    }

    /// True when both clusterings induce the same partition, regardless of
    /// how the cluster ids are numbered.
    pub fn same_partition(&self, other: &Clustering) -> bool {
        if self.labels.len() != other.labels.len() || self.sizes.len() != other.sizes.len() {
            return false;
        }
        let mut pair_to_first = vec![u32::MAX; self.sizes.len()];
        let mut matched = vec![u32::MAX; other.sizes.len()];
        for (node, &a) in self.labels.iter().enumerate() {
            let b = other.labels[node];
            if pair_to_first[a as usize] == u32::MAX {
                if matched[b as usize] != u32::MAX {
                    return false;
                }
                pair_to_first[a as usize] = b;
                matched[b as usize] = a;
            } else if pair_to_first[a as usize] != b {
                return false;
            }
        }
        true
    }
}

/// Exact intersection counts between two clusterings of the same node set.
///
/// Stored sparsely as (row, column, count) cells sorted by (row, column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    cells: Vec<(u32, u32, u64)>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    node_count: usize,
}

impl ContingencyTable {
    /// Non-zero cells as (cluster of `c`, cluster of `d`, count), sorted.
    pub fn cells(&self) -> &[(u32, u32, u64)] {
        &self.cells
    }

    /// Row marginals = sizes of the first clustering.
    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    /// Column marginals = sizes of the second clustering.
    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn transpose(&self) -> ContingencyTable {
        let mut cells: Vec<(u32, u32, u64)> =
            self.cells.iter().map(|&(i, j, c)| (j, i, c)).collect();
        cells.sort_unstable();
        ContingencyTable {
            cells,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            node_count: self.node_count,
        }
    }
}

/// Intersection counts |C_i ∩ D_j| for two clusterings of the same nodes.
pub fn contingency(c: &Clustering, d: &Clustering) -> Result<ContingencyTable> {
    if c.node_count() != d.node_count() {
        return Err(Error::LengthMismatch {
            expected: c.node_count(),
            found: d.node_count(),
        });
    }
    let mut pairs: Vec<(u32, u32)> = c
        .labels()
        .iter()
        .zip(d.labels().iter())
        .map(|(&a, &b)| (a, b))
        .collect();
    pairs.sort_unstable();
    let mut cells: Vec<(u32, u32, u64)> = Vec::new();
    for &(a, b) in &pairs {
        match cells.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += 1,
            _ => cells.push((a, b, 1)),
        }
    }
    let row_sums = c.sizes().iter().map(|&s| s as u64).collect();
    let col_sums = d.sizes().iter().map(|&s| s as u64).collect();
    Ok(ContingencyTable {
        cells,
        row_sums,
        col_sums,
        node_count: c.node_count(),
    })
}

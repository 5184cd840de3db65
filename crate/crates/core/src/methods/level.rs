//! Weighted multigraph used internally by the multilevel optimizers.
//!
//! Aggregating a partition folds intra-cluster edges into supernode
//! self-loops, keeping the total weight 2m invariant across levels. The
//! exposed API stays unweighted; weights only exist here.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

pub(crate) struct LevelGraph {
    offsets: Vec<usize>,
    nbr: Vec<u32>,
    nbr_w: Vec<f64>,
    /// Weight of edges folded inside each node, counted once.
    pub self_w: Vec<f64>,
    /// Weighted degree: adjacency weights plus 2x the self-loop weight.
    pub degree: Vec<f64>,
    /// Sum of all degrees (constant across levels).
    pub two_m: f64,
}

impl LevelGraph {
    pub fn from_graph(g: &Graph) -> LevelGraph {
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
        let degree: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
        let two_m = 2.0 * g.edge_count() as f64;
        LevelGraph {
            offsets,
            nbr,
            nbr_w,
            self_w: vec![0.0; n],
            degree,
            two_m,
        }
    }

    pub fn node_count(&self) -> usize {
        self.self_w.len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.nbr[range.clone()]
            .iter()
            .copied()
            .zip(self.nbr_w[range].iter().copied())
    }

    /// Contract each community of `membership` (labels 0..k) to a supernode.
    pub fn aggregate(&self, membership: &[u32], k: usize) -> LevelGraph {
        let n = self.node_count();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&v| membership[v as usize]);

        let mut self_w = vec![0.0; k];
        let mut degree = vec![0.0; k];
        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0usize);
        let mut nbr: Vec<u32> = Vec::new();
        let mut nbr_w: Vec<f64> = Vec::new();

        // Scratch accumulator per coarse neighbor, reset between communities.
        let mut acc = vec![0.0f64; k];
        let mut touched: Vec<u32> = Vec::new();

        let mut i = 0usize;
        for c in 0..k as u32 {
            let mut intra_twice = 0.0;
            while i < n && membership[order[i] as usize] == c {
                let v = order[i] as usize;
                self_w[c as usize] += self.self_w[v];
                for (w, wt) in self.neighbors(v) {
                    let cw = membership[w as usize];
                    if cw == c {
                        intra_twice += wt;
                    } else {
                        if acc[cw as usize] == 0.0 {
                            touched.push(cw);
                        }
                        acc[cw as usize] += wt;
                    }
                }
                i += 1;
            }
            self_w[c as usize] += intra_twice / 2.0;
            touched.sort_unstable();
            for &t in &touched {
                nbr.push(t);
                nbr_w.push(acc[t as usize]);
                acc[t as usize] = 0.0;
            }
            touched.clear();
            offsets.push(nbr.len());
        }
        for c in 0..k {
            degree[c] = 2.0 * self_w[c] + nbr_w[offsets[c]..offsets[c + 1]].iter().sum::<f64>();
        }
        LevelGraph {
            offsets,
            nbr,
            nbr_w,
            self_w,
            degree,
            two_m: self.two_m,
        }
    }
}

//! Clustering distances and method comparison machinery.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{self, xlnx};
use crate::methods::{run_method, MethodConfig};
use crate::partition::{contingency, Clustering};
use crate::rng::{mix_seed, rng_from};

/// Variation of information between two partitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViResult {
    /// V = H(C|D) + H(D|C), natural log.
    pub vi: f64,
    /// V / ln n, in [0, 1].
    pub normalized: f64,
}

/// Variation of information V(C, D) and its normalized form V/ln n.
pub fn variation_of_information(c: &Clustering, d: &Clustering) -> Result<ViResult> {
    let n = c.node_count();
    if n < 2 {
        return Err(Error::GraphTooSmall { node_count: n });
    }
    let table = contingency(c, d)?;
    let nf = n as f64;
    // V = 2 H(C,D) − H(C) − H(D).
    let h_joint: f64 = -table
        .cells()
        .iter()
        .map(|&(_, _, cnt)| xlnx(cnt as f64 / nf))
        .sum::<f64>();
    let h_c: f64 = -table
        .row_sums()
        .iter()
        .map(|&r| xlnx(r as f64 / nf))
        .sum::<f64>();
    let h_d: f64 = -table
        .col_sums()
        .iter()
        .map(|&r| xlnx(r as f64 / nf))
        .sum::<f64>();
    let vi = (2.0 * h_joint - h_c - h_d).max(0.0);
    Ok(ViResult {
        vi,
        normalized: vi / math::ln(nf),
    })
}

/// Uncertainty U of a method: normalized VI between two runs of the same
/// configuration with the two given seeds.
pub fn uncertainty(graph: &Graph, config: &MethodConfig, seeds: (u64, u64)) -> Result<f64> {
    let mut first = config.clone();
    first.seed = seeds.0;
    let mut second = config.clone();
    second.seed = seeds.1;
    let a = run_method(graph, &first)?;
    let b = run_method(graph, &second)?;
    Ok(variation_of_information(&a, &b)?.normalized)
}

/// Seeds used for curve point `index`: (rewire seed, re-clustering seed).
///
/// Exposed so that the identity U = V(0) can be checked exactly: the curve
/// point at alpha = 0 equals `uncertainty` with the seed pair
/// `(config.seed, perturbation_seeds(seed, index).1)`.
pub fn perturbation_seeds(seed: u64, index: usize) -> (u64, u64) {
    (
        mix_seed(seed, 2 * index as u64),
        mix_seed(seed, 2 * index as u64 + 1),
    )
}

/// Robustness curve: cluster the baseline graph once with `config`, then for
/// each alpha rewire that fraction of links and re-cluster; each point is
/// the normalized VI between baseline and perturbed clustering.
pub fn robustness_curve(
    graph: &Graph,
    config: &MethodConfig,
    alphas: &[f64],
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    let baseline = run_method(graph, config)?;
    let mut curve = Vec::with_capacity(alphas.len());
    for (index, &alpha) in alphas.iter().enumerate() {
        let (rewire_seed, run_seed) = perturbation_seeds(seed, index);
        let perturbed_graph = graph.rewire(alpha, rewire_seed).graph;
        let mut rerun = config.clone();
        rerun.seed = run_seed;
        let perturbed = run_method(&perturbed_graph, &rerun)?;
        let v = variation_of_information(&baseline, &perturbed)?.normalized;
        curve.push((alpha, v));
    }
    Ok(curve)
}

/// Symmetric matrix of normalized VI distances between labeled clusterings.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Assemble from precomputed values; the matrix must be square and match
    /// the label count.
    pub fn from_parts(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<DistanceMatrix> {
        if values.len() != labels.len() || values.iter().any(|row| row.len() != labels.len()) {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: values.len(),
            });
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }
}

/// Pairwise normalized VI between all runs; all clusterings must cover the
/// same node set.
pub fn distance_matrix(runs: &[(String, Clustering)]) -> Result<DistanceMatrix> {
    let count = runs.len();
    let mut values = vec![vec![0.0f64; count]; count];
    for i in 0..count {
        for j in (i + 1)..count {
            let v = variation_of_information(&runs[i].1, &runs[j].1)?.normalized;
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    Ok(DistanceMatrix {
        labels: runs.iter().map(|(l, _)| l.clone()).collect(),
        values,
    })
}

/// One classified method with its silhouette coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedLabel {
    pub label: String,
    pub class: usize,
    pub silhouette: f64,
}

/// k-means classes of the distance-matrix rows. Classes are ordered by
/// decreasing size, members by decreasing silhouette.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodClasses {
    pub class_count: usize,
    pub members: Vec<ClassifiedLabel>,
}

impl MethodClasses {
    /// Class id of `label`, if present.
    pub fn class_of(&self, label: &str) -> Option<usize> {
        self.members
            .iter()
            .find(|m| m.label == label)
            .map(|m| m.class)
    }

    pub fn silhouette_of(&self, label: &str) -> Option<f64> {
        self.members
            .iter()
            .find(|m| m.label == label)
            .map(|m| m.silhouette)
    }
}

const KMEANS_RESTARTS: usize = 100;
const KMEANS_MAX_ITER: usize = 100;

/// Classify methods by k-means over the rows of the distance matrix, using
/// cosine dissimilarity for assignment and silhouettes; centroids are
/// arithmetic row means. Best of 100 seeded restarts by within-class
/// dissimilarity.
pub fn classify_methods(matrix: &DistanceMatrix, k: usize, seed: u64) -> Result<MethodClasses> {
    let count = matrix.len();
    if k == 0 || k > count {
        return Err(Error::BadClassCount {
            requested: k,
            labels: count,
        });
    }
    let rows: Vec<&[f64]> = (0..count).map(|i| matrix.row(i)).collect();
    let mut rng = rng_from(seed);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for _ in 0..KMEANS_RESTARTS {
        let (assignment, objective) = kmeans_once(&rows, k, &mut rng);
        if best.as_ref().is_none_or(|(_, o0)| objective < *o0) {
            best = Some((assignment, objective));
        }
    }
    let (assignment, _) = best.expect("at least one restart");
    let silhouettes = silhouettes(&rows, &assignment, k);

    // Order classes by decreasing size (first member index breaks ties),
    // members by decreasing silhouette.
    let mut class_sizes = vec![0usize; k];
    let mut class_first = vec![usize::MAX; k];
    for (i, &c) in assignment.iter().enumerate() {
        class_sizes[c] += 1;
        if class_first[c] == usize::MAX {
            class_first[c] = i;
        }
    }
    let mut class_order: Vec<usize> = (0..k).collect();
    class_order.sort_by_key(|&c| (core::cmp::Reverse(class_sizes[c]), class_first[c]));
    let mut class_rank = vec![0usize; k];
    for (rank, &c) in class_order.iter().enumerate() {
        class_rank[c] = rank;
    }
    let mut members: Vec<ClassifiedLabel> = (0..count)
        .map(|i| ClassifiedLabel {
            label: matrix.labels()[i].clone(),
            class: class_rank[assignment[i]],
            silhouette: silhouettes[i],
        })
        .collect();
    members.sort_by(|a, b| {
        a.class
            .cmp(&b.class)
            .then(b.silhouette.total_cmp(&a.silhouette))
            .then(a.label.cmp(&b.label))
    });
    Ok(MethodClasses {
        class_count: k,
        members,
    })
}

/// Cosine dissimilarity 1 − cos(u, v); zero vectors compare equal to each
/// other and maximally distant from anything else.
fn cosine_dissimilarity(u: &[f64], v: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (&a, &b) in u.iter().zip(v.iter()) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 && nv == 0.0 {
        return 0.0;
    }
    if nu == 0.0 || nv == 0.0 {
        return 1.0;
    }
    (1.0 - dot / (math::sqrt(nu) * math::sqrt(nv))).max(0.0)
}

fn kmeans_once(rows: &[&[f64]], k: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, f64) {
    let count = rows.len();
    let dim = rows[0].len();

    // k-means++-style seeding on cosine dissimilarity.
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    let first = rng.gen_range(0..count);
    centroids.push(rows[first].to_vec());
    let mut min_d: Vec<f64> = rows
        .iter()
        .map(|r| cosine_dissimilarity(r, &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = min_d.iter().map(|d| d * d).sum();
        let chosen = if total > 0.0 {
            let mut t = rng.gen::<f64>() * total;
            let mut pick = count - 1;
            for (i, d) in min_d.iter().enumerate() {
                t -= d * d;
                if t <= 0.0 {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            // All rows coincide with some centroid; any unpicked row works.
            rng.gen_range(0..count)
        };
        centroids.push(rows[chosen].to_vec());
        for (i, row) in rows.iter().enumerate() {
            let d = cosine_dissimilarity(row, centroids.last().unwrap());
            if d < min_d[i] {
                min_d[i] = d;
            }
        }
    }

    let mut assignment = vec![0usize; count];
    for _ in 0..KMEANS_MAX_ITER {
        let mut changed = false;
        for (i, row) in rows.iter().enumerate() {
            let mut best_class = assignment[i];
            let mut best_d = f64::INFINITY;
            for (c, centroid) in centroids.iter().enumerate() {
                let d = cosine_dissimilarity(row, centroid);
                if d < best_d {
                    best_d = d;
                    best_class = c;
                }
            }
            if best_class != assignment[i] {
                assignment[i] = best_class;
                changed = true;
            }
        }
        // Arithmetic-mean centroids; an emptied class steals the row
        // farthest from its centroid.
        let mut sums = vec![vec![0.0f64; dim]; k];
        let mut counts = vec![0usize; k];
        for (i, row) in rows.iter().enumerate() {
            counts[assignment[i]] += 1;
            for (s, &x) in sums[assignment[i]].iter_mut().zip(row.iter()) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                let farthest = (0..count)
                    .max_by(|&a, &b| {
                        cosine_dissimilarity(rows[a], &centroids[assignment[a]])
                            .total_cmp(&cosine_dissimilarity(rows[b], &centroids[assignment[b]]))
                    })
                    .expect("non-empty rows");
                centroids[c] = rows[farthest].to_vec();
                assignment[farthest] = c;
                changed = true;
            } else {
                for (slot, s) in centroids[c].iter_mut().zip(sums[c].iter()) {
                    *slot = s / counts[c] as f64;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let objective: f64 = rows
        .iter()
        .enumerate()
        .map(|(i, row)| cosine_dissimilarity(row, &centroids[assignment[i]]))
        .sum();
    (assignment, objective)
}

/// Silhouette (b − a) / max(a, b) per row: a = mean intra-class cosine
/// dissimilarity, b = lowest mean dissimilarity to another class. Singleton
/// classes and k = 1 score 0.
fn silhouettes(rows: &[&[f64]], assignment: &[usize], k: usize) -> Vec<f64> {
    let count = rows.len();
    let mut out = vec![0.0f64; count];
    if k <= 1 {
        return out;
    }
    for i in 0..count {
        let own = assignment[i];
        let mut sums = vec![0.0f64; k];
        let mut counts = vec![0usize; k];
        for j in 0..count {
            if j == i {
                continue;
            }
            sums[assignment[j]] += cosine_dissimilarity(rows[i], rows[j]);
            counts[assignment[j]] += 1;
        }
        if counts[own] == 0 {
            continue; // singleton class
        }
        let a = sums[own] / counts[own] as f64;
        let mut b = f64::INFINITY;
        for c in 0..k {
            if c != own && counts[c] > 0 {
                b = b.min(sums[c] / counts[c] as f64);
            }
        }
        if !b.is_finite() {
            continue;
        }
        let denom = a.max(b);
        out[i] = if denom > 0.0 { (b - a) / denom } else { 0.0 };
    }
    out
}

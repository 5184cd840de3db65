//! Shared fixtures and independent oracles for the integration tests.
//!
//! Every oracle here evaluates the textbook definition directly (pairwise
//! sums, explicit entropies, brute-force edge counting) so that it stays
//! independent of the implementation paths it checks.

#![allow(dead_code)]

use citeclust_core::{Clustering, Graph};

/// Two triangles {0,1,2} and {3,4,5} joined by the edge (2,3).
pub fn barbell() -> Graph {
    graph_from(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
}

pub fn graph_from(n: usize, edges: &[(u32, u32)]) -> Graph {
    Graph::from_index_edges(n, edges).expect("valid fixture").0
}

/// `count` disjoint cliques of `size` nodes each.
pub fn disjoint_cliques(count: usize, size: usize) -> Graph {
    let mut edges = Vec::new();
    for b in 0..count {
        let base = (b * size) as u32;
        for i in 0..size as u32 {
            for j in (i + 1)..size as u32 {
                edges.push((base + i, base + j));
            }
        }
    }
    graph_from(count * size, &edges)
}

/// All set partitions of {0..n} as label vectors (restricted growth strings).
pub fn partitions_of(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    fn rec(labels: &mut Vec<u32>, pos: usize, max_used: u32, out: &mut Vec<Vec<u32>>) {
        if pos == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max_used + 1 {
            labels[pos] = l;
            rec(labels, pos + 1, max_used.max(l), out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(&mut labels, 1, 0, &mut out);
    out
}

/// Direct pairwise-sum modularity: (1/2m) ΣΣ (A_ij − γ k_i k_j / 2m) δ.
pub fn modularity_pairwise(g: &Graph, labels: &[u32], gamma: f64) -> f64 {
    let n = g.node_count();
    let two_m = 2.0 * g.edge_count() as f64;
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] != labels[j] {
                continue;
            }
            let a = if i != j && g.has_edge(i, j) { 1.0 } else { 0.0 };
            q += a - gamma * (g.degree(i) as f64) * (g.degree(j) as f64) / two_m;
        }
    }
    q / two_m
}

/// Direct two-level map equation in bits: q H(Q) + Σ p_i H(P_i) with
/// degree-proportional visit rates and exit rates cut_i/2m.
pub fn mapeq_direct(g: &Graph, labels: &[u32]) -> f64 {
    let n = g.node_count();
    let two_m = 2.0 * g.edge_count() as f64;
    let k = 1 + *labels.iter().max().unwrap() as usize;
    let mut cut = vec![0.0f64; k];
    let mut visit = vec![Vec::<f64>::new(); k];
    for v in 0..n {
        let c = labels[v] as usize;
        visit[c].push(g.degree(v) as f64 / two_m);
        for &w in g.neighbors(v) {
            if labels[w as usize] != labels[v] {
                cut[c] += 1.0;
            }
        }
    }
    let q: Vec<f64> = cut.iter().map(|&c| c / two_m).collect();
    let q_total: f64 = q.iter().sum();
    let h = |probs: &[f64]| -> f64 {
        probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    };
    let mut length = 0.0;
    if q_total > 0.0 {
        let index_probs: Vec<f64> = q.iter().map(|&qi| qi / q_total).collect();
        length += q_total * h(&index_probs);
    }
    for c in 0..k {
        let inside = q[c] + visit[c].iter().sum::<f64>();
        if inside <= 0.0 {
            continue;
        }
        let mut probs: Vec<f64> = visit[c].iter().map(|&p| p / inside).collect();
        probs.push(q[c] / inside);
        length += inside * h(&probs);
    }
    length
}

/// Direct Bernoulli log-likelihood: brute-force intra edge counts, explicit MLE
/// densities, 0·ln 0 = 0.
pub fn logl_direct(g: &Graph, labels: &[u32]) -> f64 {
    let n = g.node_count();
    let k = 1 + *labels.iter().max().unwrap() as usize;
    let mut m_i = vec![0u64; k];
    let mut size = vec![0u64; k];
    for v in 0..n {
        size[labels[v] as usize] += 1;
    }
    let mut inter = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(i, j) {
                if labels[i] == labels[j] {
                    m_i[labels[i] as usize] += 1;
                } else {
                    inter += 1;
                }
            }
        }
    }
    let bernoulli = |edges: u64, pairs: u64| -> f64 {
        if pairs == 0 {
            return 0.0;
        }
        let theta = edges as f64 / pairs as f64;
        let mut t = 0.0;
        if edges > 0 {
            t += edges as f64 * theta.ln();
        }
        if pairs > edges {
            t += (pairs - edges) as f64 * (1.0 - theta).ln();
        }
        t
    };
    let mut log_l = 0.0;
    let mut intra_pairs = 0u64;
    for c in 0..k {
        let pairs = size[c] * (size[c] - 1) / 2;
        intra_pairs += pairs;
        log_l += bernoulli(m_i[c], pairs);
    }
    let total_pairs = (n as u64) * (n as u64 - 1) / 2;
    log_l + bernoulli(inter, total_pairs - intra_pairs)
}

/// Direct conditional-entropy VI in nats.
pub fn vi_direct(c: &[u32], d: &[u32]) -> f64 {
    let n = c.len();
    let kc = 1 + *c.iter().max().unwrap() as usize;
    let kd = 1 + *d.iter().max().unwrap() as usize;
    let mut joint = vec![vec![0u64; kd]; kc];
    let mut pc = vec![0u64; kc];
    let mut pd = vec![0u64; kd];
    for v in 0..n {
        joint[c[v] as usize][d[v] as usize] += 1;
        pc[c[v] as usize] += 1;
        pd[d[v] as usize] += 1;
    }
    let nf = n as f64;
    let mut h_c_given_d = 0.0;
    let mut h_d_given_c = 0.0;
    for i in 0..kc {
        for j in 0..kd {
            if joint[i][j] == 0 {
                continue;
            }
            let p = joint[i][j] as f64 / nf;
            h_c_given_d -= p * (joint[i][j] as f64 / pd[j] as f64).ln();
            h_d_given_c -= p * (joint[i][j] as f64 / pc[i] as f64).ln();
        }
    }
    h_c_given_d + h_d_given_c
}

/// Labels of clusters with the given sizes, in order.
pub fn labels_with_sizes(sizes: &[usize]) -> Vec<u32> {
    let mut labels = Vec::new();
    for (c, &s) in sizes.iter().enumerate() {
        labels.extend(std::iter::repeat(c as u32).take(s));
    }
    labels
}

/// The clustering {{0,1,2},{3,4,5}} on the barbell.
pub fn barbell_triangles() -> Clustering {
    Clustering::from_labels(&[0, 0, 0, 1, 1, 1])
}

/// Undirected edge set of a graph, canonical (u < v).
pub fn edge_set(g: &Graph) -> std::collections::BTreeSet<(u32, u32)> {
    g.edges().collect()
}

/// Visit `total` Bernoulli(p) trials via geometric skips; calls `emit` for
/// each success index.
pub fn sparse_pairs<R: rand::Rng, F: FnMut(usize)>(rng: &mut R, total: usize, p: f64, mut emit: F) {
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(emit);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut t: i64 = -1;
    loop {
        let u: f64 = rng.gen();
        t += ((1.0 - u).ln() / log_q).floor() as i64 + 1;
        if t < 0 || t as usize >= total {
            return;
        }
        emit(t as usize);
    }
}

/// Citation-network-like benchmark: planted blocks with power-law-ish sizes,
/// intra densities tuned for a fixed internal degree, sparse global noise.
/// Returns the graph and the block assignment of the surviving nodes.
pub fn synthetic_citation_graph(target_nodes: usize, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut sizes: Vec<usize> = Vec::new();
    let mut total = 0usize;
    while total < target_nodes {
        let u: f64 = rng.gen();
        // Pareto(alpha = 1.0) sizes clipped to [20, 3000].
        let s = (20.0 * (1.0 - u).powf(-1.0)).min(3000.0) as usize;
        let s = s.min(target_nodes - total).max(2);
        sizes.push(s);
        total += s;
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut base = 0usize;
    for &s in &sizes {
        // About six intra neighbors per node.
        let p = (6.0 / (s as f64 - 1.0)).min(1.0);
        sparse_pairs(&mut rng, s * (s - 1) / 2, p, |t| {
            let (r, c) = triangular_pair(t, s);
            edges.push(((base + r) as u32, (base + c) as u32));
        });
        base += s;
    }
    // About two random cross links per node.
    let n = total;
    let cross = n; // n edges = 2 endpoints per node on average
    for _ in 0..cross {
        let a = rng.gen_range(0..n) as u32;
        let b = rng.gen_range(0..n) as u32;
        if a != b {
            edges.push((a.min(b), a.max(b)));
        }
    }
    Graph::from_index_edges(n, &edges)
        .expect("non-empty synthetic graph")
        .0
}

/// Flat upper-triangle index to (row, col) with row < col.
pub fn triangular_pair(t: usize, s: usize) -> (usize, usize) {
    let mut r = 0usize;
    let mut offset = 0usize;
    loop {
        let row_len = s - 1 - r;
        if t < offset + row_len {
            return (r, r + 1 + (t - offset));
        }
        offset += row_len;
        r += 1;
    }
}

/// Exhaustive component labeling (independent of the BFS under test).
pub fn components_naive(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if comp[start].is_some() {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = Some(id);
        while let Some(v) = stack.pop() {
            members.push(v as u32);
            for &w in g.neighbors(v) {
                if comp[w as usize].is_none() {
                    comp[w as usize] = Some(id);
                    stack.push(w as usize);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

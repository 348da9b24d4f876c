//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. Each one recomputes a quantity from first principles without
//! touching the code it checks.
#![allow(dead_code)]

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use outbreak_opt::Graph;

/// BFS distances and shortest-path counts from `s`. Unreachable nodes get
/// distance `usize::MAX` and count 0.
pub fn bfs_counts(g: &Graph, s: usize) -> (Vec<usize>, Vec<f64>) {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0; n];
    dist[s] = 0;
    sigma[s] = 1.0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    (dist, sigma)
}

/// Betweenness by explicit pair enumeration: for every unordered pair
/// `{s, t}` and every other node `v` on some shortest path,
/// `σ_sv σ_vt / σ_st`.
pub fn naive_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let all: Vec<_> = (0..n).map(|s| bfs_counts(g, s)).collect();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let (ds, ss) = &all[s];
            let dst = ds[t];
            if dst == usize::MAX {
                continue;
            }
            let (dt, st) = &all[t];
            for v in 0..n {
                if v == s || v == t || ds[v] == usize::MAX {
                    continue;
                }
                if ds[v] + dt[v] == dst {
                    score[v] += ss[v] * st[v] / ss[t];
                }
            }
        }
    }
    score
}

/// Size of the connected component of every node.
pub fn component_sizes(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut size = vec![0; n];
    for s in 0..n {
        if size[s] > 0 {
            continue;
        }
        let (dist, _) = bfs_counts(g, s);
        let members: Vec<_> = (0..n).filter(|&v| dist[v] != usize::MAX).collect();
        for &v in &members {
            size[v] = members.len();
        }
    }
    size
}

/// Expected size of the component of a uniformly random node.
pub fn mean_component_size(g: &Graph) -> f64 {
    let sizes = component_sizes(g);
    sizes.iter().sum::<usize>() as f64 / sizes.len() as f64
}

/// Where power iteration from the uniform vector over non-isolated nodes
/// must land: that vector projected onto the eigenspace of the largest
/// adjacency eigenvalue, normalized. Returns the vector and the eigenvalue.
pub fn dense_dominant_eigenvector(g: &Graph) -> (Vec<f64>, f64) {
    let n = g.node_count();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let eig = SymmetricEigen::new(a);
    let top = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let start: Vec<f64> = (0..n).map(|v| if g.degree(v) > 0 { 1.0 } else { 0.0 }).collect();
    let mut x = vec![0.0; n];
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if (lambda - top).abs() > 1e-9 {
            continue;
        }
        let col = eig.eigenvectors.column(i);
        let coeff: f64 = col.iter().zip(&start).map(|(c, s)| c * s).sum();
        for (xv, c) in x.iter_mut().zip(col.iter()) {
            *xv += coeff * c;
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    (x.iter().map(|v| v / norm).collect(), top)
}

/// `1 - |cos|` between two vectors.
pub fn cosine_distance(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    1.0 - (dot / (na * nb)).abs()
}

/// `max_v |(Ax)_v - λ x_v|`.
pub fn eigen_residual(g: &Graph, x: &[f64], lambda: f64) -> f64 {
    (0..g.node_count())
        .map(|v| {
            let ax: f64 = g.neighbors(v).iter().map(|&w| x[w]).sum();
            (ax - lambda * x[v]).abs()
        })
        .fold(0.0, f64::max)
}

/// `true` when `hits` successes out of `trials` lie within `z` binomial
/// standard deviations of `p`.
pub fn within_binomial(hits: usize, trials: usize, p: f64, z: f64) -> bool {
    let sd = (trials as f64 * p * (1.0 - p)).sqrt();
    (hits as f64 - trials as f64 * p).abs() <= z * sd
}

//! Node centralities, rankings and the reduced candidate pool.
//!
//! Three measures are supported: degree, shortest-path betweenness (Brandes'
//! algorithm, summed over unordered node pairs) and eigenvector centrality
//! (power iteration). Each score vector can be turned into a
//! [`CentralityRanking`], a total order of the nodes from most to least
//! central with ties broken by ascending node id. The optimizer only searches
//! the union of the top-`l` prefixes of the three rankings, the
//! [`ReducedPool`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralityKind {
    Degree,
    Betweenness,
    Eigenvector,
}

impl CentralityKind {
    pub const ALL: [CentralityKind; 3] = [
        CentralityKind::Degree,
        CentralityKind::Betweenness,
        CentralityKind::Eigenvector,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CentralityKind::Degree => "degree",
            CentralityKind::Betweenness => "betweenness",
            CentralityKind::Eigenvector => "eigenvector",
        }
    }
}

impl fmt::Display for CentralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `C_D(v) = deg(v)`.
pub fn degree_centrality(g: &Graph) -> Vec<f64> {
    (0..g.node_count()).map(|v| g.degree(v) as f64).collect()
}

// Sources handled per rayon task. Partial sums are formed within a block in
// source order and blocks are added in block order, so the floating-point
// result does not depend on the number of worker threads.
const BRANDES_BLOCK: usize = 32;

/// Shortest-path betweenness over unordered pairs `{s, t}` with `s != v != t`.
///
/// Pairs in different components contribute nothing. Runs in `O(|V||E|)`.
pub fn betweenness_centrality(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BRANDES_BLOCK)
        .map(|block| {
            let mut scratch = BrandesScratch::new(n);
            let mut acc = vec![0.0; n];
            for &s in block {
                scratch.accumulate_source(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut scores = vec![0.0; n];
    for part in &partials {
        for (total, x) in scores.iter_mut().zip(part) {
            *total += x;
        }
    }
    // every unordered pair was visited from both endpoints
    for x in &mut scores {
        *x /= 2.0;
    }
    scores
}

struct BrandesScratch {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        BrandesScratch {
            sigma: vec![0.0; n],
            dist: vec![usize::MAX; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    fn accumulate_source(&mut self, g: &Graph, s: NodeId, acc: &mut [f64]) {
        self.sigma.fill(0.0);
        self.dist.fill(usize::MAX);
        self.delta.fill(0.0);
        self.order.clear();

        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.order.push(s);
        // `order` doubles as the BFS queue; it ends up sorted by distance
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let next = self.dist[v] + 1;
            for &w in g.neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = next;
                    self.order.push(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }

        for &w in self.order.iter().rev() {
            let dw = self.dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if self.dist[v] + 1 == dw {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            acc[w] += self.delta[w];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Bound on `max_v |(Ax)_v - λ x_v|` for the returned unit vector.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-10,
            max_iters: 10_000,
        }
    }
}

/// Result of [`eigenvector_centrality`].
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Nonnegative, unit L2 norm.
    pub scores: Vec<f64>,
    /// Rayleigh-quotient estimate of the dominant eigenvalue of `A`.
    pub eigenvalue: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Dominant eigenvector of the adjacency matrix by power iteration.
///
/// Iterates with `A + I` rather than `A`: the eigenvectors are the same, but
/// the shift keeps bipartite graphs (stars, trees, even cycles) from
/// oscillating between `λ` and `-λ`. The start vector is uniform over the
/// non-isolated nodes; isolated nodes score exactly 0.
pub fn eigenvector_centrality(g: &Graph, opts: EigenOptions) -> Result<EigenResult> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(Error::EigenvectorUndefined);
    }

    let active = (0..n).filter(|&v| g.degree(v) > 0).count();
    let start = 1.0 / (active as f64).sqrt();
    let mut x: Vec<f64> = (0..n)
        .map(|v| if g.degree(v) > 0 { start } else { 0.0 })
        .collect();
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iteration in 0..=opts.max_iters {
        multiply_adjacency(g, &x, &mut ax);
        let lambda: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        residual = x
            .iter()
            .zip(&ax)
            .map(|(xv, axv)| (axv - lambda * xv).abs())
            .fold(0.0, f64::max);
        if residual <= opts.tol {
            return Ok(EigenResult {
                scores: x,
                eigenvalue: lambda,
                residual,
                iterations: iteration,
            });
        }
        if iteration == opts.max_iters {
            break;
        }
        for (xv, axv) in x.iter_mut().zip(&ax) {
            *xv += axv;
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        for xv in &mut x {
            *xv /= norm;
        }
    }

    Err(Error::NotConverged {
        iterations: opts.max_iters,
        residual,
    })
}

fn multiply_adjacency(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = g.neighbors(v).iter().map(|&w| x[w]).sum();
    }
}

/// Nodes ordered from most to least central.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityRanking {
    pub kind: CentralityKind,
    pub scores: Vec<f64>,
    /// Permutation of `0..n`: descending score, ascending id among ties.
    pub order: Vec<NodeId>,
}

impl CentralityRanking {
    /// The first `k` nodes of the ranking.
    pub fn top(&self, k: usize) -> &[NodeId] {
        &self.order[..k.min(self.order.len())]
    }
}

pub fn build_ranking(kind: CentralityKind, scores: Vec<f64>) -> CentralityRanking {
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    CentralityRanking {
        kind,
        scores,
        order,
    }
}

/// All three centralities of one graph.
#[derive(Debug, Clone)]
pub struct Centralities {
    pub degree: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub eigenvector: Vec<f64>,
}

impl Centralities {
    pub fn compute(g: &Graph, eigen: EigenOptions) -> Result<Self> {
        Ok(Centralities {
            degree: degree_centrality(g),
            betweenness: betweenness_centrality(g),
            eigenvector: eigenvector_centrality(g, eigen)?.scores,
        })
    }

    pub fn scores(&self, kind: CentralityKind) -> &[f64] {
        match kind {
            CentralityKind::Degree => &self.degree,
            CentralityKind::Betweenness => &self.betweenness,
            CentralityKind::Eigenvector => &self.eigenvector,
        }
    }

    /// Rankings in the order degree, betweenness, eigenvector.
    pub fn rankings(&self) -> [CentralityRanking; 3] {
        CentralityKind::ALL.map(|kind| build_ranking(kind, self.scores(kind).to_vec()))
    }
}

/// Union of the top-`l` prefixes of several rankings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedPool {
    /// Distinct node ids, ascending.
    pub members: Vec<NodeId>,
    pub l: usize,
}

impl ReducedPool {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

pub fn reduced_pool(rankings: &[CentralityRanking], l: usize) -> Result<ReducedPool> {
    let n = rankings.first().map_or(0, |r| r.order.len());
    if l >= n {
        return Err(Error::InvalidTruncation { l, n });
    }
    let set: NodeSet = rankings
        .iter()
        .flat_map(|r| r.top(l).iter().copied())
        .collect();
    Ok(ReducedPool {
        members: set.members().to_vec(),
        l,
    })
}

/// Coefficient of determination of the least-squares line of `ys` on `xs`.
///
/// For simple regression with an intercept this is the squared Pearson
/// correlation.
pub fn correlation_r2(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "regression needs two equal-length samples of size >= 2 (got {} and {})",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // spread indistinguishable from rounding noise counts as zero variance
    let xx: f64 = xs.iter().map(|x| x * x).sum();
    let yy: f64 = ys.iter().map(|y| y * y).sum();
    if sxx <= f64::EPSILON * xx || syy <= f64::EPSILON * yy {
        return Err(Error::DegenerateRegression);
    }
    Ok(((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        graph(n, &edges)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_centrality(&graph(3, &[(0, 1), (1, 2)])), [1.0, 2.0, 1.0]);
        assert_eq!(degree_centrality(&complete(4)), [3.0; 4]);
        assert_eq!(degree_centrality(&graph(3, &[])), [0.0; 3]);
    }

    #[test]
    fn betweenness_paths() {
        assert_eq!(betweenness_centrality(&graph(3, &[(0, 1), (1, 2)])), [0.0, 1.0, 0.0]);
        assert_eq!(
            betweenness_centrality(&graph(4, &[(0, 1), (1, 2), (2, 3)])),
            [0.0, 2.0, 2.0, 0.0]
        );
    }

    #[test]
    fn betweenness_complete_and_isolated() {
        for n in 2..8 {
            assert!(betweenness_centrality(&complete(n)).iter().all(|&b| b == 0.0));
        }
        let g = graph(5, &[(0, 1), (1, 2)]);
        assert_eq!(betweenness_centrality(&g), [0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn betweenness_splits_between_parallel_paths() {
        // 4-cycle: each pair of opposite corners has two shortest paths
        let b = betweenness_centrality(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        assert_eq!(b, [0.5; 4]);
    }

    #[test]
    fn eigenvector_cycle_is_uniform() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let res = eigenvector_centrality(&c5, EigenOptions::default()).unwrap();
        for x in res.scores {
            assert!((x - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        }
        assert!((res.eigenvalue - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvector_star_converges_despite_bipartiteness() {
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let res = eigenvector_centrality(&star, EigenOptions::default()).unwrap();
        assert!((res.scores[0] / res.scores[1] - 3f64.sqrt()).abs() < 1e-9);
        assert!(res.residual <= 1e-10);
    }

    #[test]
    fn eigenvector_errors() {
        assert!(matches!(
            eigenvector_centrality(&graph(3, &[]), EigenOptions::default()),
            Err(Error::EigenvectorUndefined)
        ));
        let path: Vec<_> = (0..199).map(|i| (i, i + 1)).collect();
        let long_path = graph(200, &path);
        let opts = EigenOptions {
            tol: 1e-12,
            max_iters: 50,
        };
        assert!(matches!(
            eigenvector_centrality(&long_path, opts),
            Err(Error::NotConverged { iterations: 50, .. })
        ));
    }

    #[test]
    fn eigenvector_isolated_nodes_score_zero() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 0)]);
        let res = eigenvector_centrality(&g, EigenOptions::default()).unwrap();
        assert_eq!(&res.scores[3..], [0.0, 0.0]);
    }

    #[test]
    fn ranking_ties() {
        assert_eq!(build_ranking(CentralityKind::Degree, vec![1.0, 2.0, 1.0]).order, [1, 0, 2]);
        assert_eq!(build_ranking(CentralityKind::Degree, vec![5.0; 3]).order, [0, 1, 2]);
    }

    fn ranking(order: Vec<usize>) -> CentralityRanking {
        let n = order.len();
        let mut scores = vec![0.0; n];
        for (rank, &v) in order.iter().enumerate() {
            scores[v] = (n - rank) as f64;
        }
        let r = build_ranking(CentralityKind::Degree, scores);
        assert_eq!(r.order, order);
        r
    }

    #[test]
    fn pool_overlap_extremes() {
        let same = ranking((0..20).collect());
        let pool = reduced_pool(&[same.clone(), same.clone(), same], 5).unwrap();
        assert_eq!(pool.members, [0, 1, 2, 3, 4]);

        let rotate = |shift: usize| ranking((0..15).map(|i| (i + shift) % 15).collect());
        let pool = reduced_pool(&[rotate(0), rotate(5), rotate(10)], 5).unwrap();
        assert_eq!(pool.len(), 15);
    }

    #[test]
    fn pool_requires_l_below_n() {
        let r = ranking((0..4).collect());
        assert!(matches!(
            reduced_pool(&[r.clone(), r.clone(), r], 4),
            Err(Error::InvalidTruncation { l: 4, n: 4 })
        ));
    }

    #[test]
    fn r2_examples() {
        let xs = [0.0, 1.0, 2.0, 3.0, 7.5];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 3.0).collect();
        assert!((correlation_r2(&xs, &ys).unwrap() - 1.0).abs() < 1e-12);
        let r2 = correlation_r2(&[0.0, 1.0, 2.0, 3.0], &[0.0, 1.0, 0.0, 1.0]).unwrap();
        assert!((r2 - 0.2).abs() < 1e-12);
        assert!(matches!(
            correlation_r2(&[1.0, 1.0, 1.0], &[0.0, 1.0, 2.0]),
            Err(Error::DegenerateRegression)
        ));
        assert!(correlation_r2(&[1.0], &[1.0]).is_err());
    }
}

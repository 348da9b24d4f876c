//! Small graph families and random graph models.
//!
//! Used by the test suites, the book and as a stand-in network when a real
//! contact network is not at hand.

use rand::Rng;

use crate::graph::{Graph, NodeId};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 nodes");
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, &clique_edges(0, n)).expect("valid clique")
}

/// Node 0 joined to `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("valid star")
}

/// Disjoint union; node ids of later parts are shifted past earlier ones.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut offset = 0;
    let mut edges = Vec::new();
    for g in parts {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.node_count();
    }
    Graph::from_edges(offset, &edges).expect("valid union")
}

/// Two cliques of `size` nodes (ids `0..size` and `size+1..2 size+1`) whose
/// only connection is the bridge node `size`, adjacent to node `size - 1` of
/// the first clique and node `size + 1` of the second.
pub fn two_cliques_with_bridge(size: usize) -> Graph {
    assert!(size >= 2);
    let bridge = size;
    let mut edges = clique_edges(0, size);
    edges.extend(clique_edges(size + 1, size));
    edges.push((size - 1, bridge));
    edges.push((bridge, size + 1));
    Graph::from_edges(2 * size + 1, &edges).expect("valid fixture")
}

/// A 14-node graph of two loosely joined 7-node clusters.
///
/// Each cluster is a 7-cycle with three chords; the clusters touch through
/// the edges 3–10 and 6–12.
pub fn two_clusters_14() -> Graph {
    let cluster = |o: NodeId| {
        let mut e: Vec<(NodeId, NodeId)> = (0..7).map(|i| (o + i, o + (i + 1) % 7)).collect();
        e.extend([(o, o + 3), (o + 1, o + 5), (o + 2, o + 6)]);
        e
    };
    let mut edges = cluster(0);
    edges.extend(cluster(7));
    edges.extend([(3, 10), (6, 12)]);
    Graph::from_edges(14, &edges).expect("valid fixture")
}

/// G(n, p): every pair is joined independently with probability `p`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid G(n, p)")
}

/// Random recursive tree: node `v` attaches to a uniform earlier node.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_edges(n, &edges).expect("valid tree")
}

/// Parameters of [`modular_scale_free`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularScaleFree {
    pub nodes: usize,
    pub communities: usize,
    /// Mean of the expected degrees before the per-pair probabilities are
    /// capped at 1; with a heavy tail the realized mean is noticeably lower.
    pub mean_degree: f64,
    /// Exponent of the power-law degree sequence (`P(d) ~ d^-exponent`).
    pub exponent: f64,
    /// Fraction of each node's expected degree that leaves its community.
    pub mixing: f64,
}

impl Default for ModularScaleFree {
    /// A hub-and-spoke network of 500 nodes and about 2100 edges whose
    /// largest hubs reach degree 120 or more, loosely modeled on an air
    /// transport network.
    fn default() -> Self {
        ModularScaleFree {
            nodes: 500,
            communities: 8,
            mean_degree: 32.0,
            exponent: 1.9,
            mixing: 0.02,
        }
    }
}

/// Degree-corrected block model with power-law expected degrees.
///
/// Node `i` gets weight `~ (i + 1)^(-1 / (exponent - 1))` scaled to the
/// requested mean degree and joins community `i mod communities`, so every
/// community has its own hubs. Pairs are linked independently with
/// probability `w_u w_v / W` times the community mixing factor, capped at 1.
/// Nodes left isolated are attached to the heaviest node of their community.
pub fn modular_scale_free<R: Rng + ?Sized>(spec: &ModularScaleFree, rng: &mut R) -> Graph {
    let n = spec.nodes;
    let c = spec.communities.max(1);
    let raw: Vec<f64> = (0..n)
        .map(|i| ((i + 1) as f64).powf(-1.0 / (spec.exponent - 1.0)))
        .collect();
    let scale = spec.mean_degree * n as f64 / raw.iter().sum::<f64>();
    let w: Vec<f64> = raw.iter().map(|x| x * scale).collect();
    let total: f64 = w.iter().sum();

    let (inside, outside) = if c == 1 {
        (1.0, 0.0)
    } else {
        ((1.0 - spec.mixing) * c as f64, spec.mixing * c as f64 / (c - 1) as f64)
    };

    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mix = if u % c == v % c { inside } else { outside };
            let p = (w[u] * w[v] / total * mix).min(1.0);
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }

    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    for v in 0..n {
        // the heaviest node of v's community is its lowest id, v % c
        let hub = v % c;
        if degree[v] == 0 && hub != v {
            edges.push((hub, v));
            degree[v] += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("valid block model")
}

fn clique_edges(offset: NodeId, size: usize) -> Vec<(NodeId, NodeId)> {
    (0..size)
        .flat_map(|u| (u + 1..size).map(move |v| (offset + u, offset + v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::StreamKey;

    #[test]
    fn fixed_families() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(6).edge_count(), 15);
        assert_eq!(star(4).degree(0), 4);
        let u = disjoint_union(&[complete(4), complete(3)]);
        assert_eq!((u.node_count(), u.edge_count()), (7, 9));
        assert!(u.has_edge(4, 6) && !u.has_edge(3, 4));
    }

    #[test]
    fn bridge_fixture_shape() {
        let g = two_cliques_with_bridge(6);
        assert_eq!(g.node_count(), 13);
        assert_eq!(g.edge_count(), 2 * 15 + 2);
        assert_eq!(g.neighbors(6), [5, 7]);
    }

    #[test]
    fn two_cluster_fixture_shape() {
        let g = two_clusters_14();
        assert_eq!(g.node_count(), 14);
        assert_eq!(g.edge_count(), 2 * 10 + 2);
    }

    #[test]
    fn random_tree_is_a_tree() {
        let mut rng = StreamKey::new(1).rng();
        let t = random_tree(30, &mut rng);
        assert_eq!(t.edge_count(), 29);
    }

    #[test]
    fn surrogate_has_requested_size() {
        let mut rng = StreamKey::new(7).rng();
        let g = modular_scale_free(&ModularScaleFree::default(), &mut rng);
        assert_eq!(g.node_count(), 500);
        let mean = 2.0 * g.edge_count() as f64 / 500.0;
        assert!((7.0..11.0).contains(&mean), "mean degree {mean}");
        let hub = (0..500).map(|v| g.degree(v)).max().unwrap();
        assert!(hub > 100, "largest degree {hub}");
        assert!((0..500).all(|v| g.degree(v) > 0));
    }
}

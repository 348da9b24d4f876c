mod common;

use outbreak_opt::centrality::{
    betweenness_centrality, build_ranking, degree_centrality, eigenvector_centrality, reduced_pool,
    Centralities, EigenOptions,
};
use outbreak_opt::{generators, CentralityKind, Graph, StreamKey};
use proptest::prelude::*;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    generators::erdos_renyi(n, p, &mut StreamKey::new(seed).rng())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brandes_matches_pair_enumeration(n in 1usize..=25, p in 0.05f64..0.6, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let fast = betweenness_centrality(&g);
        let slow = common::naive_betweenness(&g);
        for v in 0..n {
            prop_assert!((fast[v] - slow[v]).abs() <= 1e-9, "node {v}: {} vs {}", fast[v], slow[v]);
        }
    }

    #[test]
    fn tree_betweenness_counts_interior_nodes(n in 2usize..40, seed in any::<u64>()) {
        let g = generators::random_tree(n, &mut StreamKey::new(seed).rng());
        // walk every unique s-t path and credit its interior nodes
        let mut interior = vec![0.0; n];
        for s in 0..n {
            let (dist, _) = common::bfs_counts(&g, s);
            for t in s + 1..n {
                let mut v = t;
                while dist[v] > 1 {
                    v = *g.neighbors(v).iter().find(|&&w| dist[w] + 1 == dist[v]).unwrap();
                    interior[v] += 1.0;
                }
            }
        }
        let b = betweenness_centrality(&g);
        for v in 0..n {
            prop_assert_eq!(b[v], interior[v]);
        }
        let total_interior: usize = (0..n)
            .flat_map(|s| {
                let (dist, _) = common::bfs_counts(&g, s);
                (s + 1..n).map(move |t| dist[t] - 1)
            })
            .sum();
        prop_assert_eq!(b.iter().sum::<f64>(), total_interior as f64);
    }

    #[test]
    fn eigenvector_matches_dense_solver(n in 2usize..=25, p in 0.1f64..0.6, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        prop_assume!(g.edge_count() > 0);
        let r = eigenvector_centrality(&g, EigenOptions::default()).unwrap();
        prop_assert!(r.residual <= 1e-10);
        prop_assert!(common::eigen_residual(&g, &r.scores, r.eigenvalue) <= 1e-8);
        let (oracle, lambda) = common::dense_dominant_eigenvector(&g);
        prop_assert!((r.eigenvalue - lambda).abs() <= 1e-8);
        prop_assert!(common::cosine_distance(&r.scores, &oracle) <= 1e-6);
        prop_assert!(r.scores.iter().all(|&x| x >= 0.0));
        let norm: f64 = r.scores.iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rankings_are_sorted_permutations(scores in prop::collection::vec(0u8..5, 1..60)) {
        let scores: Vec<f64> = scores.into_iter().map(f64::from).collect();
        let r = build_ranking(CentralityKind::Degree, scores.clone());
        let mut seen = r.order.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
        for w in r.order.windows(2) {
            let (a, b) = (w[0], w[1]);
            prop_assert!(scores[a] > scores[b] || (scores[a] == scores[b] && a < b));
        }
    }

    #[test]
    fn pool_is_monotone_in_l(n in 3usize..40, seed in any::<u64>(), l1 in 1usize..40, l2 in 1usize..40) {
        let g = random_graph(n, 0.2, seed);
        prop_assume!(g.edge_count() > 0);
        let (a, b) = (l1 % n, l2 % n);
        let (l1, l2) = (a.min(b), a.max(b));
        let rankings = Centralities::compute(&g, EigenOptions::default()).unwrap().rankings();
        let small = reduced_pool(&rankings, l1).unwrap();
        let big = reduced_pool(&rankings, l2).unwrap();
        prop_assert!(small.members.iter().all(|&v| big.contains(v)));
        prop_assert!(l2 <= big.len() && big.len() <= 3 * l2);
        prop_assert!(big.members.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn star_ratio_and_clique_pair_against_dense_solver() {
    let star = generators::star(3);
    let r = eigenvector_centrality(&star, EigenOptions::default()).unwrap();
    let (oracle, _) = common::dense_dominant_eigenvector(&star);
    assert!((r.scores[0] / r.scores[1] - oracle[0] / oracle[1]).abs() < 1e-8);
    assert!((r.scores[0] / r.scores[1] - 3f64.sqrt()).abs() < 1e-8);

    let pair = generators::disjoint_union(&[generators::complete(4), generators::complete(3)]);
    let r = eigenvector_centrality(&pair, EigenOptions::default()).unwrap();
    let (oracle, lambda) = common::dense_dominant_eigenvector(&pair);
    assert!((lambda - 3.0).abs() < 1e-12);
    assert!(common::cosine_distance(&r.scores, &oracle) < 1e-12);
    assert!(r.scores[4..].iter().all(|&x| x <= 1e-10));
}

#[test]
fn rankings_do_not_depend_on_thread_count() {
    let g = random_graph(200, 0.05, 11);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| Centralities::compute(&g, EigenOptions::default()).unwrap().rankings())
    };
    let one = run(1);
    let four = run(4);
    for (a, b) in one.iter().zip(&four) {
        assert_eq!(a.order, b.order);
        assert_eq!(
            a.scores.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.scores.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn degree_ranking_leads_with_a_maximum_degree_node() {
    let g = random_graph(147, 0.04, 3);
    let r = build_ranking(CentralityKind::Degree, degree_centrality(&g));
    let max = (0..147).map(|v| g.degree(v)).max().unwrap();
    assert_eq!(g.degree(r.order[0]), max);
    let rankings = Centralities::compute(&g, EigenOptions::default()).unwrap().rankings();
    let pool = reduced_pool(&rankings, 100).unwrap();
    assert!((100..=147).contains(&pool.len()));
}

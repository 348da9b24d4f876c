//! Immunization strategies and their head-to-head comparison.
//!
//! Every strategy protects exactly `k` nodes: the top-`k` of one centrality
//! ranking, the genetic algorithm's best set, or nothing at all. Each
//! protected graph is then hit by `runs` outbreaks from uniformly random
//! seeds and the casualty counts are summarized as a boxplot.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::centrality::{reduced_pool, Centralities, CentralityRanking, EigenOptions};
use crate::epidemic::{sample_casualties, SirParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::optimizer::{evolve, GaConfig};
use crate::rng::StreamKey;
use crate::stats::BoxplotStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "degree")]
    DegreeTopK,
    #[serde(rename = "betweenness")]
    BetweennessTopK,
    #[serde(rename = "eigenvector")]
    EigenvectorTopK,
    #[serde(rename = "ga")]
    GeneticAlgorithm,
    #[serde(rename = "no_protection")]
    NoProtection,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::DegreeTopK,
        Strategy::BetweennessTopK,
        Strategy::EigenvectorTopK,
        Strategy::GeneticAlgorithm,
        Strategy::NoProtection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::DegreeTopK => "degree",
            Strategy::BetweennessTopK => "betweenness",
            Strategy::EigenvectorTopK => "eigenvector",
            Strategy::GeneticAlgorithm => "ga",
            Strategy::NoProtection => "no_protection",
        }
    }

    pub fn from_name(name: &str) -> Option<Strategy> {
        Strategy::ALL.into_iter().find(|s| s.name() == name)
    }

    fn index(self) -> u64 {
        Strategy::ALL.iter().position(|&s| s == self).unwrap() as u64
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Casualties observed for one protected set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtectionReport {
    /// Labels of the immunized nodes, in node-id order.
    pub protected_nodes: Vec<String>,
    /// One entry per outbreak, in run order.
    pub casualties: Vec<usize>,
    pub stats: BoxplotStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    #[serde(flatten)]
    pub report: ProtectionReport,
}

/// The first `k` nodes of `ranking`.
pub fn top_k_nodes(ranking: &CentralityRanking, k: usize) -> Result<NodeSet> {
    let n = ranking.order.len();
    if k > n {
        return Err(Error::InvalidConfig(format!("k = {k} exceeds the node count {n}")));
    }
    Ok(ranking.top(k).iter().copied().collect())
}

/// Immunizes `protect` once, then runs `runs` outbreaks seeded uniformly at
/// random among the remaining nodes.
pub fn evaluate_protection(
    g: &Graph,
    protect: &NodeSet,
    params: SirParams,
    runs: usize,
    key: StreamKey,
) -> Result<ProtectionReport> {
    if runs == 0 {
        return Err(Error::InvalidConfig("at least one evaluation run is required".into()));
    }
    let residual = g.remove_nodes(protect)?;
    let casualties = sample_casualties(&residual.graph, params, runs, key)?;
    let stats = BoxplotStats::from_counts(&casualties).expect("runs > 0");
    Ok(ProtectionReport {
        protected_nodes: protect.members().iter().map(|&v| g.label(v).into_owned()).collect(),
        casualties,
        stats,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub params: SirParams,
    /// Outbreaks per strategy.
    pub runs: usize,
    pub master_seed: u64,
    /// `k`, `l` and the GA settings. Its `master_seed` is ignored; the GA
    /// receives a seed derived from `master_seed` above.
    pub ga: GaConfig,
}

/// Nodes chosen by the GA versus the degree strategy.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    pub both: Vec<String>,
    pub ga_only: Vec<String>,
    pub degree_only: Vec<String>,
}

/// One bar of the degree histogram, with the GA's picks at that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOverlayRow {
    pub degree: usize,
    pub nodes: usize,
    pub ga_selected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub config: CompareConfig,
    pub pool_size: usize,
    pub ga_fitness: Option<f64>,
    pub reports: Vec<StrategyReport>,
    pub overlap: Overlap,
    pub degree_overlay: Vec<DegreeOverlayRow>,
}

impl Comparison {
    pub fn report(&self, strategy: Strategy) -> &StrategyReport {
        self.reports
            .iter()
            .find(|r| r.strategy == strategy)
            .expect("every strategy is reported")
    }
}

const STREAM_GA: u64 = 0;
const STREAM_EVALUATE: u64 = 1;

/// Builds the four protected sets plus the empty one and evaluates each with
/// `runs` outbreaks on its own sub-stream.
pub fn compare_strategies(g: &Graph, cfg: &CompareConfig) -> Result<Comparison> {
    let k = cfg.ga.k;
    let root = StreamKey::new(cfg.master_seed);

    let rankings = Centralities::compute(g, EigenOptions::default())?.rankings();
    let pool = reduced_pool(&rankings, cfg.ga.l)?;

    let (ga_set, ga_fitness) = if k == 0 {
        (NodeSet::new(), None)
    } else {
        let mut ga_cfg = cfg.ga.clone();
        ga_cfg.master_seed = root.child(STREAM_GA).seed();
        let (best, _) = evolve(g, &pool, &rankings, cfg.params, &ga_cfg)?;
        (best.chromosome.to_node_set(), Some(best.fitness))
    };
    let degree_set = top_k_nodes(&rankings[0], k)?;

    let mut reports = Vec::with_capacity(Strategy::ALL.len());
    for strategy in Strategy::ALL {
        let protect = match strategy {
            Strategy::DegreeTopK => degree_set.clone(),
            Strategy::BetweennessTopK => top_k_nodes(&rankings[1], k)?,
            Strategy::EigenvectorTopK => top_k_nodes(&rankings[2], k)?,
            Strategy::GeneticAlgorithm => ga_set.clone(),
            Strategy::NoProtection => NodeSet::new(),
        };
        let key = root.path(&[STREAM_EVALUATE, strategy.index()]);
        let report = evaluate_protection(g, &protect, cfg.params, cfg.runs, key)?;
        reports.push(StrategyReport { strategy, report });
    }

    let labels = |set: NodeSet| -> Vec<String> {
        set.members().iter().map(|&v| g.label(v).into_owned()).collect()
    };
    let overlap = Overlap {
        both: labels(ga_set.intersection(&degree_set)),
        ga_only: labels(ga_set.difference(&degree_set)),
        degree_only: labels(degree_set.difference(&ga_set)),
    };

    let degree_overlay = g
        .degree_distribution()
        .into_iter()
        .map(|(degree, nodes)| DegreeOverlayRow {
            degree,
            nodes,
            ga_selected: ga_set.members().iter().filter(|&&v| g.degree(v) == degree).count(),
        })
        .collect();

    Ok(Comparison {
        config: cfg.clone(),
        pool_size: pool.len(),
        ga_fitness,
        reports,
        overlap,
        degree_overlay,
    })
}

//! Choosing whom to immunize on a contact network.
//!
//! The crate simulates discrete-time SIR outbreaks on undirected graphs and
//! searches for the `k` nodes whose removal minimizes the expected number
//! of casualties when the outbreak starts at a random node. The search is a
//! genetic algorithm restricted to nodes that rank high on at least one of
//! degree, betweenness or eigenvector centrality; single-centrality top-`k`
//! strategies are provided as baselines.
//!
//! ```
//! use outbreak_opt::{generators, NodeSet, SirParams, StreamKey};
//! use outbreak_opt::epidemic::estimate_fitness;
//!
//! // two 6-cliques joined through node 6
//! let g = generators::two_cliques_with_bridge(6);
//! let certain = SirParams::new(1.0, 1.0)?;
//! let key = StreamKey::new(7);
//! let cut = estimate_fitness(&g, &NodeSet::from([6]), certain, 100, key)?;
//! assert_eq!(cut, 6.0);
//! # Ok::<(), outbreak_opt::Error>(())
//! ```
//!
//! Module map:
//!
//! * [`graph`]: graph type, edge-list loading, node removal;
//! * [`centrality`]: the three centralities, rankings, the reduced pool;
//! * [`epidemic`]: SIR dynamics and Monte-Carlo fitness;
//! * [`optimizer`]: the genetic algorithm;
//! * [`strategies`]: baselines and the five-way comparison;
//! * [`stats`], [`export`], [`generators`], [`rng`]: supporting pieces.

pub mod centrality;
pub mod epidemic;
pub mod error;
pub mod export;
pub mod generators;
pub mod graph;
pub mod optimizer;
pub mod rng;
pub mod stats;
pub mod strategies;

pub use centrality::{CentralityKind, CentralityRanking, ReducedPool};
pub use epidemic::{OutbreakResult, SirParams};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId, NodeSet};
pub use optimizer::{Chromosome, EvaluatedIndividual, GaConfig, GaHistory};
pub use rng::StreamKey;
pub use strategies::{Strategy, StrategyReport};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/centrality.md")]
    mod centrality {}
    #[doc = include_str!("../../../book/src/epidemics.md")]
    mod epidemics {}
    #[doc = include_str!("../../../book/src/optimizer.md")]
    mod optimizer {}
    #[doc = include_str!("../../../book/src/strategies.md")]
    mod strategies {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

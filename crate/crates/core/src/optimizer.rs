//! Genetic search for the immunization set with the fewest expected
//! casualties.
//!
//! Individuals are `k`-subsets of the [`ReducedPool`], kept sorted. Fitness
//! is [`estimate_fitness`] (lower is better). Each generation keeps the
//! `elite_count` best individuals unchanged and fills the rest with children
//! bred by tournament selection, sorted-merge crossover and per-gene
//! mutation. Three individuals of the first generation are the top-`k`
//! prefixes of the degree, betweenness and eigenvector rankings.
//!
//! Randomness is split into sub-streams of the master seed (initial
//! population; each generation's breeding; each individual's fitness runs),
//! so a run is reproducible independently of the worker count.

use log::warn;
use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityRanking, ReducedPool};
use crate::epidemic::{estimate_fitness, SirParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::rng::StreamKey;

/// A candidate immunization set: distinct node ids in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chromosome {
    genes: Vec<NodeId>,
}

impl Chromosome {
    /// Sorts `genes`; fails if any id repeats.
    pub fn new(mut genes: Vec<NodeId>) -> Result<Self> {
        genes.sort_unstable();
        if genes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(format!("duplicate gene in {genes:?}")));
        }
        Ok(Chromosome { genes })
    }

    pub fn genes(&self) -> &[NodeId] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn to_node_set(&self) -> NodeSet {
        self.genes.iter().copied().collect()
    }

    /// Size `k`, sorted, duplicate-free and inside `pool`.
    pub fn is_valid(&self, k: usize, pool: &ReducedPool) -> bool {
        self.genes.len() == k
            && self.genes.windows(2).all(|w| w[0] < w[1])
            && self.genes.iter().all(|&g| pool.contains(g))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedIndividual {
    pub chromosome: Chromosome,
    /// Estimated expected casualties.
    pub fitness: f64,
    /// Generation in which `fitness` was measured.
    pub eval_generation: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub elite_count: usize,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    pub k: usize,
    pub l: usize,
    /// Outbreaks per fitness evaluation.
    pub m: usize,
    pub master_seed: u64,
    /// Re-measure the fitness of carried-over elites every generation.
    pub reevaluate_elites: bool,
}

impl GaConfig {
    /// Defaults: population 100, 100 generations, tournaments of 4, 10
    /// elites, mutation rate `1/k`, 100 outbreaks per evaluation.
    pub fn new(k: usize, l: usize) -> Self {
        GaConfig {
            population_size: 100,
            generations: 100,
            tournament_size: 4,
            elite_count: 10,
            mutation_rate: if k == 0 { 0.0 } else { 1.0 / k as f64 },
            k,
            l,
            m: 100,
            master_seed: 0,
            reevaluate_elites: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.population_size < 3 {
            return fail(format!("population size {} is below 3", self.population_size));
        }
        if self.elite_count >= self.population_size {
            return fail(format!(
                "elite count {} must be below the population size {}",
                self.elite_count, self.population_size
            ));
        }
        if self.tournament_size == 0 {
            return fail("tournament size must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return fail(format!("mutation rate {} is not a probability", self.mutation_rate));
        }
        if self.generations == 0 {
            return fail("at least one generation is required".into());
        }
        if self.m == 0 {
            return fail("fitness needs at least one run".into());
        }
        if self.k > self.l {
            return fail(format!("k = {} exceeds the ranking truncation l = {}", self.k, self.l));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Lowest fitness in this generation's population.
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_chromosome: Chromosome,
    /// Lowest fitness seen in this or any earlier generation.
    pub best_ever_fitness: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GaHistory {
    pub records: Vec<GenerationRecord>,
}

/// Individuals 0, 1 and 2 are the top-`k` nodes of `rankings[0..3]`; the
/// others are uniform `k`-subsets of the pool.
pub fn seed_population<R: Rng + ?Sized>(
    pool: &ReducedPool,
    rankings: &[CentralityRanking],
    cfg: &GaConfig,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    let k = cfg.k;
    if k > pool.len() {
        return Err(Error::InvalidConfig(format!(
            "k = {k} exceeds the pool size {}",
            pool.len()
        )));
    }
    if k > pool.l {
        return Err(Error::InvalidConfig(format!("k = {k} exceeds l = {}", pool.l)));
    }
    if cfg.population_size < rankings.len() {
        return Err(Error::InvalidConfig(format!(
            "population size {} cannot hold the {} ranking-seeded individuals",
            cfg.population_size,
            rankings.len()
        )));
    }

    let mut population = Vec::with_capacity(cfg.population_size);
    for ranking in rankings {
        population.push(Chromosome::new(ranking.top(k).to_vec())?);
    }
    while population.len() < cfg.population_size {
        let genes = index::sample(rng, pool.len(), k)
            .into_iter()
            .map(|i| pool.members[i])
            .collect();
        population.push(Chromosome::new(genes)?);
    }
    Ok(population)
}

/// Index of the fittest (lowest-fitness) of `size` individuals drawn
/// uniformly with replacement. Ties go to the lower index.
pub fn tournament_select<R: Rng + ?Sized>(
    population: &[EvaluatedIndividual],
    size: usize,
    rng: &mut R,
) -> usize {
    assert!(!population.is_empty(), "tournament over an empty population");
    let mut best = rng.random_range(0..population.len());
    for _ in 1..size {
        let challenger = rng.random_range(0..population.len());
        let (fb, fc) = (population[best].fitness, population[challenger].fitness);
        if fc < fb || (fc == fb && challenger < best) {
            best = challenger;
        }
    }
    best
}

/// Merges both parents' genes in sorted order and deals them out
/// alternately: the first child takes positions 1, 3, 5, … and the second
/// 2, 4, 6, …. A gene shared by both parents sits in two adjacent slots and
/// so goes to both children once; no child can receive a duplicate.
pub fn crossover(p1: &Chromosome, p2: &Chromosome) -> (Chromosome, Chromosome) {
    debug_assert_eq!(p1.len(), p2.len());
    let mut merged = Vec::with_capacity(p1.len() + p2.len());
    merged.extend_from_slice(&p1.genes);
    merged.extend_from_slice(&p2.genes);
    merged.sort_unstable();
    let first = merged.iter().step_by(2).copied().collect();
    let second = merged.iter().skip(1).step_by(2).copied().collect();
    (Chromosome { genes: first }, Chromosome { genes: second })
}

/// Replaces each gene with probability `rate` by a pool node not currently
/// in the chromosome. Genes are visited in ascending order and the exclusion
/// set reflects replacements already made.
pub fn mutate<R: Rng + ?Sized>(c: &Chromosome, pool: &ReducedPool, rate: f64, rng: &mut R) -> Chromosome {
    if rate <= 0.0 || c.is_empty() {
        return c.clone();
    }
    if c.len() >= pool.len() {
        warn!(
            "mutation skipped: chromosome of {} genes already covers the pool of {}",
            c.len(),
            pool.len()
        );
        return c.clone();
    }

    let mut genes = c.genes.clone();
    let mut candidates = Vec::with_capacity(pool.len());
    for i in 0..genes.len() {
        if rng.random::<f64>() >= rate {
            continue;
        }
        candidates.clear();
        candidates.extend(pool.members.iter().copied().filter(|v| !genes.contains(v)));
        genes[i] = candidates[rng.random_range(0..candidates.len())];
    }
    genes.sort_unstable();
    Chromosome { genes }
}

const STREAM_INIT: u64 = 0;
const STREAM_FITNESS: u64 = 1;
const STREAM_BREED: u64 = 2;

struct Slot {
    chromosome: Chromosome,
    fitness: Option<(f64, usize)>,
}

/// Runs the genetic algorithm and returns the best individual ever
/// evaluated together with the per-generation history.
pub fn evolve(
    g: &Graph,
    pool: &ReducedPool,
    rankings: &[CentralityRanking],
    params: SirParams,
    cfg: &GaConfig,
) -> Result<(EvaluatedIndividual, GaHistory)> {
    cfg.validate()?;
    params.validate()?;
    if cfg.l != pool.l {
        return Err(Error::InvalidConfig(format!(
            "config l = {} does not match the pool's l = {}",
            cfg.l, pool.l
        )));
    }

    let root = StreamKey::new(cfg.master_seed);
    let mut population: Vec<Slot> = seed_population(pool, rankings, cfg, &mut root.child(STREAM_INIT).rng())?
        .into_iter()
        .map(|chromosome| Slot {
            chromosome,
            fitness: None,
        })
        .collect();

    let mut history = GaHistory::default();
    let mut best: Option<EvaluatedIndividual> = None;

    for generation in 0..cfg.generations {
        debug_assert!(population.iter().all(|s| s.chromosome.is_valid(cfg.k, pool)));

        let fitness_key = root.path(&[STREAM_FITNESS, generation as u64]);
        let pending: Vec<usize> = (0..population.len())
            .filter(|&i| population[i].fitness.is_none())
            .collect();
        let scores: Vec<f64> = pending
            .par_iter()
            .map(|&i| {
                let protect = population[i].chromosome.to_node_set();
                estimate_fitness(g, &protect, params, cfg.m, fitness_key.child(i as u64))
            })
            .collect::<Result<_>>()?;
        for (&i, score) in pending.iter().zip(scores) {
            population[i].fitness = Some((score, generation));
        }

        let evaluated: Vec<EvaluatedIndividual> = population
            .iter()
            .map(|s| {
                let (fitness, eval_generation) = s.fitness.expect("evaluated above");
                EvaluatedIndividual {
                    chromosome: s.chromosome.clone(),
                    fitness,
                    eval_generation,
                }
            })
            .collect();

        let mut ranked: Vec<usize> = (0..evaluated.len()).collect();
        ranked.sort_by(|&a, &b| evaluated[a].fitness.total_cmp(&evaluated[b].fitness).then(a.cmp(&b)));
        let leader = &evaluated[ranked[0]];
        if best.as_ref().is_none_or(|b| leader.fitness < b.fitness) {
            best = Some(leader.clone());
        }
        let mean = evaluated.iter().map(|e| e.fitness).sum::<f64>() / evaluated.len() as f64;
        history.records.push(GenerationRecord {
            generation,
            best_fitness: leader.fitness,
            mean_fitness: mean,
            best_chromosome: leader.chromosome.clone(),
            best_ever_fitness: best.as_ref().map_or(leader.fitness, |b| b.fitness),
        });

        if generation + 1 == cfg.generations {
            break;
        }

        let mut rng = root.path(&[STREAM_BREED, generation as u64]).rng();
        let mut next: Vec<Slot> = ranked[..cfg.elite_count]
            .iter()
            .map(|&i| Slot {
                chromosome: evaluated[i].chromosome.clone(),
                fitness: if cfg.reevaluate_elites {
                    None
                } else {
                    Some((evaluated[i].fitness, evaluated[i].eval_generation))
                },
            })
            .collect();
        while next.len() < cfg.population_size {
            let a = tournament_select(&evaluated, cfg.tournament_size, &mut rng);
            let b = tournament_select(&evaluated, cfg.tournament_size, &mut rng);
            let (c1, c2) = crossover(&evaluated[a].chromosome, &evaluated[b].chromosome);
            let c1 = mutate(&c1, pool, cfg.mutation_rate, &mut rng);
            let c2 = mutate(&c2, pool, cfg.mutation_rate, &mut rng);
            next.push(Slot {
                chromosome: c1,
                fitness: None,
            });
            if next.len() < cfg.population_size {
                next.push(Slot {
                    chromosome: c2,
                    fitness: None,
                });
            }
        }
        population = next;
    }

    Ok((best.expect("at least one generation"), history))
}

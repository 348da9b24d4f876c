//! Discrete-time SIR outbreaks on a contact graph.
//!
//! All nodes update synchronously from the state at time `t`:
//!
//! * a susceptible node with `d` infectious neighbors becomes infectious with
//!   probability `1 - (1 - beta)^d`;
//! * an infectious node is removed with probability `gamma`;
//! * removed nodes never change again.
//!
//! An outbreak ends when no infectious node is left; its casualties are the
//! nodes in `R` at that point (the seed included).
//!
//! Random draws happen in a fixed order each step: one uniform per exposed
//! susceptible node in ascending id order, then one uniform per infectious
//! node in ascending id order. Stepping a [`SirState`] with [`sir_step`] and
//! running [`Simulator`] directly therefore consume identical streams.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::rng::StreamKey;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SirParams {
    /// Infection probability per infectious neighbor per step.
    pub beta: f64,
    /// Removal probability per step.
    pub gamma: f64,
}

impl Default for SirParams {
    fn default() -> Self {
        SirParams {
            beta: 0.3,
            gamma: 0.3,
        }
    }
}

impl SirParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        let params = SirParams { beta, gamma };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("beta", self.beta), ("gamma", self.gamma)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }

    /// `1 - (1 - beta)^d`.
    pub fn infection_probability(&self, infectious_neighbors: usize) -> f64 {
        1.0 - (1.0 - self.beta).powi(infectious_neighbors as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Compartment {
    Susceptible,
    Infectious,
    Removed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SirState {
    pub compartments: Vec<Compartment>,
    pub t: usize,
}

impl SirState {
    /// Everyone susceptible except `seeds`.
    pub fn seeded(n: usize, seeds: &[NodeId]) -> Self {
        let mut compartments = vec![Compartment::Susceptible; n];
        for &s in seeds {
            compartments[s] = Compartment::Infectious;
        }
        SirState { compartments, t: 0 }
    }

    pub fn counts(&self) -> SirCounts {
        let mut c = SirCounts {
            t: self.t,
            ..SirCounts::default()
        };
        for comp in &self.compartments {
            match comp {
                Compartment::Susceptible => c.susceptible += 1,
                Compartment::Infectious => c.infectious += 1,
                Compartment::Removed => c.removed += 1,
            }
        }
        c
    }
}

/// Compartment sizes at one time step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SirCounts {
    pub t: usize,
    pub susceptible: usize,
    pub infectious: usize,
    pub removed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutbreakResult {
    pub casualties: usize,
    pub duration: usize,
    pub seed_node: NodeId,
}

/// Outbreaks are cut off after `max(10 n, STEP_CAP_FLOOR)` steps.
pub const STEP_CAP_FLOOR: usize = 1_000;

pub fn step_cap(n: usize) -> usize {
    (10 * n).max(STEP_CAP_FLOOR)
}

/// Reusable SIR engine bound to one graph.
///
/// Only the infectious frontier and its neighborhood are touched per step,
/// so a step costs `O(sum of infectious degrees)` rather than `O(n)`.
pub struct Simulator<'g> {
    graph: &'g Graph,
    params: SirParams,
    state: Vec<Compartment>,
    infectious: Vec<NodeId>,
    pressure: Vec<u32>,
    exposed: Vec<NodeId>,
    newly_infected: Vec<NodeId>,
    survivors: Vec<NodeId>,
    infect_prob: Vec<f64>,
    removed: usize,
    t: usize,
}

impl<'g> Simulator<'g> {
    pub fn new(graph: &'g Graph, params: SirParams) -> Self {
        let n = graph.node_count();
        let max_degree = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0);
        let infect_prob = (0..=max_degree)
            .map(|d| params.infection_probability(d))
            .collect();
        Simulator {
            graph,
            params,
            state: vec![Compartment::Susceptible; n],
            infectious: Vec::new(),
            pressure: vec![0; n],
            exposed: Vec::new(),
            newly_infected: Vec::new(),
            survivors: Vec::new(),
            infect_prob,
            removed: 0,
            t: 0,
        }
    }

    /// Resets to `t = 0` with `seed` infectious and everyone else susceptible.
    pub fn reset(&mut self, seed: NodeId) {
        self.state.fill(Compartment::Susceptible);
        self.state[seed] = Compartment::Infectious;
        self.infectious.clear();
        self.infectious.push(seed);
        self.removed = 0;
        self.t = 0;
    }

    pub fn load_state(&mut self, state: &SirState) {
        assert_eq!(state.compartments.len(), self.graph.node_count());
        self.state.copy_from_slice(&state.compartments);
        self.infectious.clear();
        self.removed = 0;
        for (v, c) in state.compartments.iter().enumerate() {
            match c {
                Compartment::Infectious => self.infectious.push(v),
                Compartment::Removed => self.removed += 1,
                Compartment::Susceptible => {}
            }
        }
        self.t = state.t;
    }

    pub fn state(&self) -> SirState {
        SirState {
            compartments: self.state.clone(),
            t: self.t,
        }
    }

    pub fn counts(&self) -> SirCounts {
        let i = self.infectious.len();
        SirCounts {
            t: self.t,
            susceptible: self.state.len() - i - self.removed,
            infectious: i,
            removed: self.removed,
        }
    }

    pub fn is_active(&self) -> bool {
        !self.infectious.is_empty()
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for &v in &self.infectious {
            for &w in self.graph.neighbors(v) {
                if self.state[w] == Compartment::Susceptible {
                    if self.pressure[w] == 0 {
                        self.exposed.push(w);
                    }
                    self.pressure[w] += 1;
                }
            }
        }
        self.exposed.sort_unstable();

        self.newly_infected.clear();
        for &w in &self.exposed {
            let p = self.infect_prob[self.pressure[w] as usize];
            self.pressure[w] = 0;
            if rng.random::<f64>() < p {
                self.newly_infected.push(w);
            }
        }
        self.exposed.clear();

        self.survivors.clear();
        for &v in &self.infectious {
            if rng.random::<f64>() < self.params.gamma {
                self.state[v] = Compartment::Removed;
                self.removed += 1;
            } else {
                self.survivors.push(v);
            }
        }
        for &w in &self.newly_infected {
            self.state[w] = Compartment::Infectious;
        }

        // merge two ascending lists into the next infectious frontier
        self.infectious.clear();
        let (mut a, mut b) = (0, 0);
        while a < self.survivors.len() && b < self.newly_infected.len() {
            if self.survivors[a] < self.newly_infected[b] {
                self.infectious.push(self.survivors[a]);
                a += 1;
            } else {
                self.infectious.push(self.newly_infected[b]);
                b += 1;
            }
        }
        self.infectious.extend_from_slice(&self.survivors[a..]);
        self.infectious.extend_from_slice(&self.newly_infected[b..]);
        self.t += 1;
    }

    /// Runs a full outbreak from `seed`.
    pub fn run<R: Rng + ?Sized>(&mut self, seed: NodeId, rng: &mut R) -> Result<OutbreakResult> {
        self.run_with(seed, rng, |_| {})
    }

    /// As [`Simulator::run`], calling `observe` with the counts at `t = 0`
    /// and after every step.
    pub fn run_with<R, F>(&mut self, seed: NodeId, rng: &mut R, mut observe: F) -> Result<OutbreakResult>
    where
        R: Rng + ?Sized,
        F: FnMut(SirCounts),
    {
        let n = self.graph.node_count();
        if seed >= n {
            return Err(Error::InvalidNode { node: seed, n });
        }
        if self.params.gamma == 0.0 {
            // the seed can never leave I
            return Err(Error::NonTerminating { steps: 0 });
        }
        let cap = step_cap(n);
        self.reset(seed);
        observe(self.counts());
        while self.is_active() {
            if self.t >= cap {
                return Err(Error::NonTerminating { steps: self.t });
            }
            self.step(rng);
            observe(self.counts());
        }
        Ok(OutbreakResult {
            casualties: self.removed,
            duration: self.t,
            seed_node: seed,
        })
    }
}

/// Advances `state` by one synchronous step.
pub fn sir_step<R: Rng + ?Sized>(g: &Graph, state: &SirState, params: SirParams, rng: &mut R) -> SirState {
    let mut sim = Simulator::new(g, params);
    sim.load_state(state);
    sim.step(rng);
    sim.state()
}

pub fn run_outbreak<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    params: SirParams,
    rng: &mut R,
) -> Result<OutbreakResult> {
    Simulator::new(g, params).run(seed, rng)
}

/// Runs one outbreak and records `(t, |S|, |I|, |R|)` at every step.
pub fn run_outbreak_traced<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    params: SirParams,
    rng: &mut R,
) -> Result<(OutbreakResult, Vec<SirCounts>)> {
    let mut trace = Vec::new();
    let result = Simulator::new(g, params).run_with(seed, rng, |c| trace.push(c))?;
    Ok((result, trace))
}

/// Casualty counts of `runs` outbreaks on `g`, each seeded at a uniformly
/// random node. Run `i` draws only from `key.child(i)`, and the output is in
/// run order whatever the thread count.
pub fn sample_casualties(g: &Graph, params: SirParams, runs: usize, key: StreamKey) -> Result<Vec<usize>> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyResidualGraph);
    }
    (0..runs)
        .into_par_iter()
        .map_init(
            || Simulator::new(g, params),
            |sim, i| {
                let mut rng = key.child(i as u64).rng();
                let seed = rng.random_range(0..n);
                sim.run(seed, &mut rng).map(|r| r.casualties)
            },
        )
        .collect()
}

/// Monte-Carlo estimate of the expected casualties after immunizing
/// `protect`: the mean over `m` outbreaks on the residual graph.
pub fn estimate_fitness(g: &Graph, protect: &NodeSet, params: SirParams, m: usize, key: StreamKey) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidConfig("fitness needs at least one run".into()));
    }
    let residual = g.remove_nodes(protect)?;
    let casualties = sample_casualties(&residual.graph, params, m, key)?;
    Ok(casualties.iter().sum::<usize>() as f64 / m as f64)
}

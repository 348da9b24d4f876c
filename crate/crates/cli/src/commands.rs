use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::Args;
use outbreak_opt::centrality::{correlation_r2, reduced_pool, Centralities, EigenOptions};
use outbreak_opt::epidemic::run_outbreak_traced;
use outbreak_opt::export::{casualties_csv, centrality_csv, degree_overlay_csv, fmt_sig, history_csv, trace_csv};
use outbreak_opt::graph::{load_edge_list_with, WeightColumn};
use outbreak_opt::optimizer::evolve;
use outbreak_opt::stats::BoxplotStats;
use outbreak_opt::strategies::{compare_strategies, evaluate_protection, CompareConfig, ProtectionReport};
use outbreak_opt::{CentralityKind, GaConfig, Graph, NodeSet, SirParams, StreamKey};
use rand::Rng;
use serde::Serialize;

use crate::output::{to_json, Rendered};
use crate::settings::{Format, Settings};

fn load_graph(s: &Settings) -> Result<Graph> {
    let file = File::open(&s.input).with_context(|| format!("cannot open input graph {}", s.input.display()))?;
    let weights = if s.ignore_weights {
        WeightColumn::Ignore
    } else {
        WeightColumn::Forbid
    };
    let (g, report) =
        load_edge_list_with(BufReader::new(file), weights).with_context(|| format!("reading {}", s.input.display()))?;
    eprintln!(
        "loaded {}: {} nodes, {} edges ({} duplicate lines collapsed)",
        s.input.display(),
        report.nodes,
        report.edges,
        report.duplicates_collapsed
    );
    Ok(g)
}

fn params(s: &Settings) -> Result<SirParams> {
    Ok(SirParams::new(s.beta, s.gamma)?)
}

/// The master seed, drawn from the OS and announced when not given.
pub fn master_seed(s: &Settings) -> u64 {
    s.seed.unwrap_or_else(|| {
        let seed = rand::rng().random();
        eprintln!("seed: {seed} (pass --seed {seed} to reproduce)");
        seed
    })
}

fn ga_config(s: &Settings, seed: u64) -> GaConfig {
    let mut cfg = GaConfig::new(s.k, s.l);
    cfg.population_size = s.pop;
    cfg.generations = s.gens;
    cfg.tournament_size = s.tour;
    cfg.elite_count = s.elites;
    cfg.m = s.m;
    cfg.master_seed = seed;
    cfg
}

fn labels(g: &Graph, nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&v| g.label(v).into_owned()).collect()
}

fn stats_header() -> &'static str {
    "min,q1,median,q3,max,mean,whisker_low,whisker_high,outliers"
}

fn stats_row(s: &BoxplotStats) -> String {
    let outliers: Vec<_> = s.outliers.iter().map(|&x| fmt_sig(x)).collect();
    [s.min, s.q1, s.median, s.q3, s.max, s.mean, s.whisker_low, s.whisker_high]
        .iter()
        .map(|&x| fmt_sig(x))
        .chain([outliers.join(" ")])
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct NodeScores {
    label: String,
    degree: f64,
    betweenness: f64,
    eigenvector: f64,
}

#[derive(Serialize)]
struct CentralityOutput {
    nodes: Vec<NodeScores>,
    /// `None` where a centrality is constant and the regression degenerate.
    r2: Vec<R2Entry>,
}

#[derive(Serialize)]
struct R2Entry {
    x: CentralityKind,
    y: CentralityKind,
    r2: Option<f64>,
}

pub fn centrality(s: &Settings) -> Result<Rendered> {
    let g = load_graph(s)?;
    let c = Centralities::compute(&g, EigenOptions::default())?;
    let pairs = [
        (CentralityKind::Degree, CentralityKind::Betweenness),
        (CentralityKind::Degree, CentralityKind::Eigenvector),
        (CentralityKind::Betweenness, CentralityKind::Eigenvector),
    ];
    let r2: Vec<R2Entry> = pairs
        .iter()
        .map(|&(x, y)| R2Entry {
            x,
            y,
            r2: correlation_r2(c.scores(x), c.scores(y)).ok(),
        })
        .collect();
    for e in &r2 {
        let value = e.r2.map_or("undefined (constant scores)".into(), fmt_sig);
        eprintln!("R2 {} ~ {}: {value}", e.x, e.y);
    }

    Ok(match s.format {
        Format::Json => Rendered::Json(to_json(&CentralityOutput {
            nodes: (0..g.node_count())
                .map(|v| NodeScores {
                    label: g.label(v).into_owned(),
                    degree: c.degree[v],
                    betweenness: c.betweenness[v],
                    eigenvector: c.eigenvector[v],
                })
                .collect(),
            r2,
        })?),
        Format::Csv => {
            let mut table = String::from("x,y,r2\n");
            for e in &r2 {
                let value = e.r2.map_or(String::new(), fmt_sig);
                let _ = writeln!(table, "{},{},{value}", e.x, e.y);
            }
            Rendered::Tables(vec![
                ("centrality.csv".into(), centrality_csv(&g, &c)),
                ("r2.csv".into(), table),
            ])
        }
    })
}

/// Options only `simulate` understands.
#[derive(Debug, Clone, Default, Args)]
pub struct SimulateFlags {
    /// Comma-separated labels of nodes to immunize first.
    #[arg(long)]
    pub protect: Option<String>,
    /// Also write the per-step S/I/R counts of one outbreak to this CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Label of the node that starts the traced outbreak (random if absent).
    #[arg(long)]
    pub seed_node: Option<String>,
}

pub const SIMULATE_KEYS: &[&str] = &["protect", "trace", "seed-node"];

#[derive(Serialize)]
struct SimulateOutput {
    seed: u64,
    params: SirParams,
    runs: usize,
    #[serde(flatten)]
    report: ProtectionReport,
}

fn node_by_label(g: &Graph, label: &str) -> Result<usize> {
    g.node_by_label(label)
        .ok_or_else(|| anyhow!("no node labeled `{label}` in the input graph"))
}

/// The main result plus an optional trace file.
pub fn simulate(s: &Settings, flags: &SimulateFlags) -> Result<(Rendered, Option<(PathBuf, String)>)> {
    let g = load_graph(s)?;
    let params = params(s)?;
    let seed = master_seed(s);
    let root = StreamKey::new(seed);

    let protect: NodeSet = match s.extra(flags.protect.clone(), "protect")? {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| node_by_label(&g, l))
            .collect::<Result<_>>()?,
        None => NodeSet::new(),
    };
    let report = evaluate_protection(&g, &protect, params, s.runs, root.child(0))?;
    eprintln!(
        "{} runs, {} protected: mean casualties {}, median {}",
        s.runs,
        protect.len(),
        fmt_sig(report.stats.mean),
        fmt_sig(report.stats.median)
    );

    let trace = match s.extra(flags.trace.clone(), "trace")? {
        Some(path) => {
            let residual = g.remove_nodes(&protect)?;
            let mut rng = root.child(1).rng();
            let start = match s.extra(flags.seed_node.clone(), "seed-node")? {
                Some(label) => {
                    let v = node_by_label(&g, &label)?;
                    residual
                        .original
                        .iter()
                        .position(|&o| o == v)
                        .ok_or_else(|| anyhow!("seed node `{label}` is protected"))?
                }
                None => rng.random_range(0..residual.graph.node_count()),
            };
            let (_, counts) = run_outbreak_traced(&residual.graph, start, params, &mut rng)?;
            Some((path, trace_csv(&counts)))
        }
        None => None,
    };

    let rendered = match s.format {
        Format::Json => Rendered::Json(to_json(&SimulateOutput {
            seed,
            params,
            runs: s.runs,
            report,
        })?),
        Format::Csv => {
            let mut summary = format!("{}\n", stats_header());
            summary.push_str(&stats_row(&report.stats));
            summary.push('\n');
            Rendered::Tables(vec![
                ("casualties.csv".into(), casualties_csv(&report.casualties)),
                ("summary.csv".into(), summary),
            ])
        }
    };
    Ok((rendered, trace))
}

#[derive(Serialize)]
struct BestOutput {
    nodes: Vec<String>,
    fitness: f64,
    eval_generation: usize,
}

#[derive(Serialize)]
struct GenerationOutput {
    generation: usize,
    best_fitness: f64,
    mean_fitness: f64,
    best_ever_fitness: f64,
    best_chromosome: Vec<String>,
}

#[derive(Serialize)]
struct OptimizeOutput {
    params: SirParams,
    config: GaConfig,
    pool_size: usize,
    best: BestOutput,
    history: Vec<GenerationOutput>,
}

pub fn optimize(s: &Settings) -> Result<Rendered> {
    let g = load_graph(s)?;
    let params = params(s)?;
    let cfg = ga_config(s, master_seed(s));
    cfg.validate()?;
    let rankings = Centralities::compute(&g, EigenOptions::default())?.rankings();
    let pool = reduced_pool(&rankings, cfg.l)?;
    eprintln!("candidate pool: {} nodes", pool.len());
    let (best, history) = evolve(&g, &pool, &rankings, params, &cfg)?;
    eprintln!("best fitness {}: {}", fmt_sig(best.fitness), labels(&g, best.chromosome.genes()).join(" "));

    Ok(match s.format {
        Format::Json => Rendered::Json(to_json(&OptimizeOutput {
            params,
            pool_size: pool.len(),
            best: BestOutput {
                nodes: labels(&g, best.chromosome.genes()),
                fitness: best.fitness,
                eval_generation: best.eval_generation,
            },
            history: history
                .records
                .iter()
                .map(|r| GenerationOutput {
                    generation: r.generation,
                    best_fitness: r.best_fitness,
                    mean_fitness: r.mean_fitness,
                    best_ever_fitness: r.best_ever_fitness,
                    best_chromosome: labels(&g, r.best_chromosome.genes()),
                })
                .collect(),
            config: cfg,
        })?),
        Format::Csv => {
            let mut best_csv = String::from("node_label\n");
            for label in labels(&g, best.chromosome.genes()) {
                best_csv.push_str(&label);
                best_csv.push('\n');
            }
            Rendered::Tables(vec![
                ("best.csv".into(), best_csv),
                ("history.csv".into(), history_csv(&g, &history)),
            ])
        }
    })
}

pub fn compare(s: &Settings) -> Result<Rendered> {
    let g = load_graph(s)?;
    let seed = master_seed(s);
    let cfg = CompareConfig {
        params: params(s)?,
        runs: s.runs,
        master_seed: seed,
        ga: ga_config(s, seed),
    };
    let c = compare_strategies(&g, &cfg)?;
    for r in &c.reports {
        eprintln!(
            "{:<14} mean {:>10}  median {:>8}",
            r.strategy.name(),
            fmt_sig(r.report.stats.mean),
            fmt_sig(r.report.stats.median)
        );
    }

    Ok(match s.format {
        Format::Json => Rendered::Json(to_json(&c)?),
        Format::Csv => {
            let mut summary = format!("strategy,{},protected_nodes\n", stats_header());
            let mut files = Vec::new();
            for r in &c.reports {
                let _ = writeln!(
                    summary,
                    "{},{},{}",
                    r.strategy.name(),
                    stats_row(&r.report.stats),
                    r.report.protected_nodes.join(" ")
                );
                files.push((
                    format!("casualties_{}.csv", r.strategy.name()),
                    casualties_csv(&r.report.casualties),
                ));
            }
            let mut overlap = String::from("set,node_label\n");
            for (set, members) in [
                ("both", &c.overlap.both),
                ("ga_only", &c.overlap.ga_only),
                ("degree_only", &c.overlap.degree_only),
            ] {
                for label in members {
                    let _ = writeln!(overlap, "{set},{label}");
                }
            }
            files.insert(0, ("summary.csv".into(), summary));
            files.push(("degree_overlay.csv".into(), degree_overlay_csv(&c.degree_overlay)));
            files.push(("overlap.csv".into(), overlap));
            Rendered::Tables(files)
        }
    })
}

//! Command-line flags merged with an optional `key = value` config file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true).map_err(|e| anyhow!(e))
    }
}

/// Flags shared by every subcommand. All are optional on the command line;
/// missing ones come from `--config`, then from the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Accept and ignore a third (weight) column in the edge list.
    #[arg(long)]
    pub ignore_weights: bool,
    /// `key = value` file supplying any of these options; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Transmission probability per infectious neighbor and step.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Recovery probability per step.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Number of nodes to immunize.
    #[arg(long)]
    pub k: Option<usize>,
    /// Ranking depth of the GA's candidate pool.
    #[arg(long)]
    pub l: Option<usize>,
    /// Outbreaks per fitness evaluation.
    #[arg(long)]
    pub m: Option<usize>,
    /// Outbreaks per evaluated strategy.
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub gens: Option<usize>,
    /// Tournament size.
    #[arg(long)]
    pub tour: Option<usize>,
    #[arg(long)]
    pub elites: Option<usize>,
    /// Master seed; drawn at random and printed when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads [env: OUTBREAK_OPT_THREADS; default: all cores].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output file (json) or directory (csv); json goes to stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Fully resolved options.
#[derive(Debug, Clone)]
pub struct Settings {
    pub input: PathBuf,
    pub ignore_weights: bool,
    pub beta: f64,
    pub gamma: f64,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub runs: usize,
    pub pop: usize,
    pub gens: usize,
    pub tour: usize,
    pub elites: usize,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Config-file entries not consumed above, for subcommand-specific keys.
    pub extra: BTreeMap<String, String>,
}

const SHARED_KEYS: &[&str] = &[
    "input", "ignore-weights", "beta", "gamma", "k", "l", "m", "runs", "pop", "gens", "tour", "elites", "seed",
    "threads", "out", "format",
];

impl Flags {
    /// Merges flags over the config file over the defaults. `extra_keys`
    /// lists the additional keys the subcommand understands.
    pub fn resolve(&self, extra_keys: &[&str]) -> Result<Settings> {
        let mut file = match &self.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        if let Some(key) = file
            .keys()
            .find(|k| !SHARED_KEYS.contains(&k.as_str()) && !extra_keys.contains(&k.as_str()))
        {
            bail!("unknown config key `{key}`");
        }

        let mut take = |key: &str| file.remove(key);
        let input = match (&self.input, take("input")) {
            (Some(p), _) => p.clone(),
            (None, Some(p)) => PathBuf::from(p),
            (None, None) => bail!("no input graph: pass --input or set `input` in the config file"),
        };
        let ignore_weights = self.ignore_weights || pick(None, take("ignore-weights"), "ignore-weights", false)?;
        let threads = match self.threads {
            Some(t) => Some(t),
            None => match take("threads") {
                Some(v) => Some(parse("threads", &v)?),
                None => match std::env::var("OUTBREAK_OPT_THREADS") {
                    Ok(v) => Some(parse("OUTBREAK_OPT_THREADS", &v)?),
                    Err(_) => None,
                },
            },
        };
        let settings = Settings {
            input,
            ignore_weights,
            beta: pick(self.beta, take("beta"), "beta", 0.3)?,
            gamma: pick(self.gamma, take("gamma"), "gamma", 0.3)?,
            k: pick(self.k, take("k"), "k", 10)?,
            l: pick(self.l, take("l"), "l", 100)?,
            m: pick(self.m, take("m"), "m", 100)?,
            runs: pick(self.runs, take("runs"), "runs", 500)?,
            pop: pick(self.pop, take("pop"), "pop", 100)?,
            gens: pick(self.gens, take("gens"), "gens", 100)?,
            tour: pick(self.tour, take("tour"), "tour", 4)?,
            elites: pick(self.elites, take("elites"), "elites", 10)?,
            seed: match self.seed {
                Some(s) => Some(s),
                None => take("seed").map(|v| parse("seed", &v)).transpose()?,
            },
            threads,
            out: self.out.clone().or_else(|| take("out").map(PathBuf::from)),
            format: pick(self.format, take("format"), "format", Format::Json)?,
            extra: file,
        };
        if settings.threads == Some(0) {
            bail!("--threads must be at least 1");
        }
        Ok(settings)
    }
}

impl Settings {
    /// A subcommand-specific value: the flag if given, else the config entry.
    pub fn extra<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.extra.get(key).map(|v| parse(key, v)).transpose(),
        }
    }
}

fn pick<T: FromStr>(flag: Option<T>, file: Option<String>, key: &str, default: T) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    match (flag, file) {
        (Some(v), _) => Ok(v),
        (None, Some(v)) => parse(key, &v),
        (None, None) => Ok(default),
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| anyhow!("invalid value `{value}` for `{key}`: {e}"))
}

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
/// Keys may use `-` or `_`.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected `key = value`", path.display(), i + 1))?;
        let key = key.trim().replace('_', "-");
        if map.insert(key.clone(), value.trim().to_owned()).is_some() {
            bail!("{}:{}: `{key}` set twice", path.display(), i + 1);
        }
    }
    Ok(map)
}

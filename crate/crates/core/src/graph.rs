//! Undirected simple graphs over dense node ids.
//!
//! A [`Graph`] is built once (from an edge-list file or an explicit edge set)
//! and is immutable afterwards. Node ids are always `0..n`; the original
//! labels from an input file are kept alongside so results can be reported
//! in the caller's vocabulary.
//!
//! Immunizing a set of nodes is modelled as deleting them:
//! [`Graph::remove_nodes`] returns a [`Residual`] graph plus the map back to
//! the original ids.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    labels: Option<Vec<String>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes from an edge list. Repeated edges (in
    /// either orientation) are collapsed; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut builder = Builder::with_nodes(n);
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::InvalidNode { node, n });
                }
            }
            if u == v {
                return Err(Error::InvalidConfig(format!("self-loop on node {u}")));
            }
            builder.add_edge(u, v);
        }
        Ok(builder.finish(None))
    }

    /// Same as [`Graph::from_edges`] but attaches a label per node.
    pub fn from_labeled_edges(labels: Vec<String>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = Self::from_edges(labels.len(), edges)?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor ids of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The original label of `v`, or its id rendered as text when the graph
    /// carries no labels.
    pub fn label(&self, v: NodeId) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels[v].as_str()),
            None => Cow::Owned(v.to_string()),
        }
    }

    /// Looks a node up by its label (or by its id when unlabeled).
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&v: &NodeId| v < self.node_count()),
        }
    }

    /// Deletes the nodes in `immunized` and every edge touching them.
    pub fn remove_nodes(&self, immunized: &NodeSet) -> Result<Residual> {
        let n = self.node_count();
        immunized.validate(n)?;

        let mut new_id = vec![usize::MAX; n];
        let mut original = Vec::with_capacity(n - immunized.len());
        for v in 0..n {
            if !immunized.contains(v) {
                new_id[v] = original.len();
                original.push(v);
            }
        }

        let mut edge_count = 0;
        let adjacency: Vec<Vec<NodeId>> = original
            .iter()
            .map(|&old| {
                // old ids ascend, so the remapped list stays sorted
                let adj: Vec<NodeId> = self.adjacency[old]
                    .iter()
                    .filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w]))
                    .collect();
                edge_count += adj.len();
                adj
            })
            .collect();

        let labels = self
            .labels
            .as_ref()
            .map(|labels| original.iter().map(|&v| labels[v].clone()).collect());

        Ok(Residual {
            graph: Graph {
                adjacency,
                labels,
                edge_count: edge_count / 2,
            },
            original,
        })
    }

    /// Histogram of node degrees; the counts sum to the node count.
    pub fn degree_distribution(&self) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::new();
        for adj in &self.adjacency {
            *dist.entry(adj.len()).or_insert(0) += 1;
        }
        dist
    }

    /// Writes one line `label_u label_v` per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }
}

/// A graph with some nodes removed, plus the id map back to the parent graph.
#[derive(Debug, Clone)]
pub struct Residual {
    pub graph: Graph,
    /// `original[new_id]` is the node's id in the parent graph.
    pub original: Vec<NodeId>,
}

/// A duplicate-free set of node ids, stored ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodeSet {
    members: Vec<NodeId>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&node) if node >= n => Err(Error::InvalidNode { node, n }),
            _ => Ok(()),
        }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        self.members.iter().chain(&other.members).copied().collect()
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        self.members.iter().copied().filter(|&v| other.contains(v)).collect()
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        self.members.iter().copied().filter(|&v| !other.contains(v)).collect()
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut members: Vec<NodeId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        NodeSet { members }
    }
}

impl<const N: usize> From<[NodeId; N]> for NodeSet {
    fn from(ids: [NodeId; N]) -> Self {
        ids.into_iter().collect()
    }
}

/// Summary of an edge-list load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadReport {
    pub nodes: usize,
    pub edges: usize,
    pub duplicates_collapsed: usize,
}

/// What to do with a third column on an edge line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WeightColumn {
    /// Exactly two tokens per line.
    #[default]
    Forbid,
    /// Accept an optional numeric third token and discard it (weighted dumps
    /// of otherwise unweighted networks).
    Ignore,
}

/// Parses a whitespace-separated edge list with the default (strict) options.
///
/// Lines whose first non-blank character is `#` or `%` are comments. Labels
/// are arbitrary tokens and are assigned dense ids in first-appearance order.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<(Graph, LoadReport)> {
    load_edge_list_with(source, WeightColumn::Forbid)
}

pub fn load_edge_list_with<R: BufRead>(
    mut source: R,
    weights: WeightColumn,
) -> Result<(Graph, LoadReport)> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut builder = Builder::with_nodes(0);
    let mut duplicates = 0;

    let mut intern = |token: &str, builder: &mut Builder| -> NodeId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        ids.insert(token.to_owned(), id);
        labels.push(token.to_owned());
        builder.adjacency.push(Vec::new());
        id
    };

    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if source.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let arity_ok = match (tokens.len(), weights) {
            (2, _) => true,
            (3, WeightColumn::Ignore) => {
                if tokens[2].parse::<f64>().is_err() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("weight {:?} is not a number", tokens[2]),
                    });
                }
                true
            }
            _ => false,
        };
        if !arity_ok {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop {
                line: line_no,
                label: tokens[0].to_owned(),
            });
        }
        let u = intern(tokens[0], &mut builder);
        let v = intern(tokens[1], &mut builder);
        if !builder.add_edge(u, v) {
            duplicates += 1;
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = builder.finish(Some(labels));
    let report = LoadReport {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        duplicates_collapsed: duplicates,
    };
    Ok((graph, report))
}

struct Builder {
    adjacency: Vec<Vec<NodeId>>,
    seen: HashSet<(NodeId, NodeId)>,
}

impl Builder {
    fn with_nodes(n: usize) -> Self {
        Builder {
            adjacency: vec![Vec::new(); n],
            seen: HashSet::new(),
        }
    }

    /// Returns `false` when the edge was already present.
    fn add_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        let key = (u.min(v), u.max(v));
        if !self.seen.insert(key) {
            return false;
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        true
    }

    fn finish(mut self, labels: Option<Vec<String>>) -> Graph {
        for adj in &mut self.adjacency {
            adj.sort_unstable();
        }
        Graph {
            edge_count: self.seen.len(),
            adjacency: self.adjacency,
            labels,
        }
    }
}

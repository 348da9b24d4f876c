//! Text exports: CSV tables and 12-significant-digit number formatting.
//!
//! All floating-point output goes through [`fmt_sig`] so that files written
//! by different builds can be diffed byte for byte.

use std::fmt::Write as _;

use crate::centrality::Centralities;
use crate::epidemic::SirCounts;
use crate::graph::Graph;
use crate::optimizer::GaHistory;
use crate::strategies::DegreeOverlayRow;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// dropped, exponent notation outside `[1e-4, 1e12)`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let p = SIGNIFICANT_DIGITS as i32;
    let sci = format!("{:.*e}", (p - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to 12 significant digits, for JSON output.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_sig(x).parse().expect("round trip")
    } else {
        x
    }
}

/// `node_label,degree,betweenness,eigenvector`, one row per node.
pub fn centrality_csv(g: &Graph, c: &Centralities) -> String {
    let mut out = String::from("node_label,degree,betweenness,eigenvector\n");
    for v in 0..g.node_count() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            g.label(v),
            fmt_sig(c.degree[v]),
            fmt_sig(c.betweenness[v]),
            fmt_sig(c.eigenvector[v])
        );
    }
    out
}

/// `generation,best_fitness,mean_fitness,best_chromosome_labels`; the labels
/// are space-separated.
pub fn history_csv(g: &Graph, history: &GaHistory) -> String {
    let mut out = String::from("generation,best_fitness,mean_fitness,best_chromosome_labels\n");
    for r in &history.records {
        let labels: Vec<_> = r.best_chromosome.genes().iter().map(|&v| g.label(v)).collect();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.generation,
            fmt_sig(r.best_fitness),
            fmt_sig(r.mean_fitness),
            labels.join(" ")
        );
    }
    out
}

/// `run,casualties`.
pub fn casualties_csv(casualties: &[usize]) -> String {
    let mut out = String::from("run,casualties\n");
    for (i, c) in casualties.iter().enumerate() {
        let _ = writeln!(out, "{i},{c}");
    }
    out
}

/// `t,S,I,R`.
pub fn trace_csv(trace: &[SirCounts]) -> String {
    let mut out = String::from("t,S,I,R\n");
    for c in trace {
        let _ = writeln!(out, "{},{},{},{}", c.t, c.susceptible, c.infectious, c.removed);
    }
    out
}

/// `degree,nodes,ga_selected`.
pub fn degree_overlay_csv(rows: &[DegreeOverlayRow]) -> String {
    let mut out = String::from("degree,nodes,ga_selected\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.degree, r.nodes, r.ga_selected);
    }
    out
}

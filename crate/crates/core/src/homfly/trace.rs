//! Full skein resolution trees, for inspecting where z-degrees cancel.

use std::fmt::Write;

use serde::Serialize;

use super::{choose_skein_crossing, skein_combine, unlink_poly};
use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly2;

pub const TRACE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SkeinRole {
    Root,
    Switched,
    Smoothed,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeinNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub role: SkeinRole,
    pub depth: usize,
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    /// Resolved crossing and its sign; `None` at descending leaves.
    pub crossing: Option<usize>,
    pub sign: Option<Sign>,
    /// `(switched, smoothed)` child ids.
    pub children: Option<(usize, usize)>,
    pub poly: LaurentPoly2,
    pub maxdeg_z: Option<i32>,
    pub cancellation: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceStats {
    pub nodes: usize,
    pub leaves: usize,
    pub max_depth: usize,
    pub cancellations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeinTrace {
    /// Node 0 is the root.
    pub nodes: Vec<SkeinNode>,
    pub stats: TraceStats,
}

/// Records the unsimplified skein tree of `d`, using the same crossing choice
/// as the evaluator.
pub fn skein_trace(d: &Diagram) -> Result<SkeinTrace> {
    if d.crossing_count() > TRACE_LIMIT {
        return Err(Error::TooLarge {
            crossings: d.crossing_count(),
            limit: TRACE_LIMIT,
        });
    }
    let mut nodes = Vec::new();
    build(d, None, SkeinRole::Root, 0, &mut nodes)?;
    let flagged = detect_cancellations(&nodes);
    for &i in &flagged {
        nodes[i].cancellation = true;
    }
    let stats = TraceStats {
        nodes: nodes.len(),
        leaves: nodes.iter().filter(|n| n.children.is_none()).count(),
        max_depth: nodes.iter().map(|n| n.depth).max().unwrap_or(0),
        cancellations: flagged.len(),
    };
    Ok(SkeinTrace { nodes, stats })
}

fn build(
    d: &Diagram,
    parent: Option<usize>,
    role: SkeinRole,
    depth: usize,
    nodes: &mut Vec<SkeinNode>,
) -> Result<usize> {
    let id = nodes.len();
    nodes.push(SkeinNode {
        id,
        parent,
        role,
        depth,
        pd: d.to_pd_string(),
        crossings: d.crossing_count(),
        components: d.num_components(),
        crossing: None,
        sign: None,
        children: None,
        poly: LaurentPoly2::zero(),
        maxdeg_z: None,
        cancellation: false,
    });
    let poly = match choose_skein_crossing(d) {
        None => unlink_poly(d.num_components()),
        Some(i) => {
            let sign = d.crossings()[i].sign;
            let a = build(&d.switch_crossing(i)?, Some(id), SkeinRole::Switched, depth + 1, nodes)?;
            let b = build(&d.smooth_crossing(i)?, Some(id), SkeinRole::Smoothed, depth + 1, nodes)?;
            let node = &mut nodes[id];
            node.crossing = Some(i);
            node.sign = Some(sign);
            node.children = Some((a, b));
            skein_combine(sign, &nodes[a].poly, &nodes[b].poly)
        }
    };
    nodes[id].maxdeg_z = poly.maxdeg_z();
    nodes[id].poly = poly;
    Ok(id)
}

/// Internal nodes whose z-degree is lower than the larger of the two
/// contributions `maxdeg(switched)` and `maxdeg(smoothed) + 1`, i.e. where
/// leading terms cancelled.
pub fn detect_cancellations(nodes: &[SkeinNode]) -> Vec<usize> {
    nodes
        .iter()
        .filter_map(|n| {
            let (a, b) = n.children?;
            let expected = nodes[a].maxdeg_z.max(nodes[b].maxdeg_z.map(|m| m + 1));
            (n.maxdeg_z < expected).then_some(n.id)
        })
        .collect()
}

impl SkeinTrace {
    pub fn root(&self) -> &SkeinNode {
        &self.nodes[0]
    }

    /// Graphviz rendering; cancellation nodes are filled red.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph skein {\n  node [shape=box];\n");
        for n in &self.nodes {
            let m = n.maxdeg_z.map_or_else(|| "-inf".to_string(), |m| m.to_string());
            let style = if n.cancellation {
                ", style=filled, fillcolor=red"
            } else {
                ""
            };
            writeln!(out, "  n{} [label=\"m={}\"{}];", n.id, m, style).unwrap();
        }
        for n in &self.nodes {
            if let Some((a, b)) = n.children {
                writeln!(out, "  n{} -> n{} [label=\"switch\"];", n.id, a).unwrap();
                writeln!(out, "  n{} -> n{} [label=\"smooth\"];", n.id, b).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

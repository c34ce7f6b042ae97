//! DOT emission for graphs and treegrams, and a plain-text treegram
//! renderer. Layout aesthetics are out of scope; output is deterministic.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::graph::Graph;
use crate::network::{scalar_to_string, Treegram};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The graph as a GraphViz digraph; implicit self-loops are not drawn.
pub fn graph_to_dot(graph: &Graph) -> String {
    let mut out = String::from("digraph g {\n");
    for v in graph.vertices() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for (a, b) in graph.arrows() {
        out.push_str(&format!("  {} -> {};\n", quote(a), quote(b)));
    }
    out.push_str("}\n");
    out
}

/// A merge forest built from a treegram: leaves are points, internal nodes
/// are merge events.
struct MergeForest {
    /// (label, merge value, children) per node; roots listed separately.
    nodes: Vec<(String, Option<Rational64>, Vec<usize>)>,
    roots: Vec<usize>,
}

fn build_forest(treegram: &Treegram) -> MergeForest {
    let mut nodes: Vec<(String, Option<Rational64>, Vec<usize>)> = Vec::new();
    // Current node id per live block, keyed by the block's least point.
    let mut current: BTreeMap<String, usize> = BTreeMap::new();
    for (point, birth) in treegram.births() {
        let id = nodes.len();
        nodes.push((
            format!("{} ({})", point, scalar_to_string(birth)),
            None,
            Vec::new(),
        ));
        current.insert(point.clone(), id);
    }
    for event in treegram.events() {
        for block in &event.partition {
            let live: Vec<&String> = block.iter().filter(|p| current.contains_key(*p)).collect();
            let members: Vec<usize> = live.iter().map(|p| current[p.as_str()]).collect();
            let distinct: std::collections::BTreeSet<usize> = members.iter().cloned().collect();
            if distinct.len() <= 1 {
                continue;
            }
            let id = nodes.len();
            nodes.push((
                scalar_to_string(&event.epsilon),
                Some(event.epsilon),
                distinct.into_iter().collect(),
            ));
            for p in block {
                current.insert(p.clone(), id);
            }
        }
    }
    let mut roots: Vec<usize> = current.values().cloned().collect();
    roots.sort_unstable();
    roots.dedup();
    MergeForest { nodes, roots }
}

/// The treegram as a GraphViz digraph of merge nodes over leaves.
pub fn treegram_to_dot(treegram: &Treegram) -> String {
    let forest = build_forest(treegram);
    let mut out = String::from("digraph treegram {\n  rankdir=RL;\n");
    for (i, (label, merge, _)) in forest.nodes.iter().enumerate() {
        let shape = if merge.is_some() { "point" } else { "none" };
        out.push_str(&format!(
            "  n{} [label={}, shape={}];\n",
            i,
            quote(label),
            shape
        ));
    }
    for (i, (_, _, children)) in forest.nodes.iter().enumerate() {
        for child in children {
            out.push_str(&format!("  n{} -> n{};\n", i, child));
        }
    }
    out.push_str("}\n");
    out
}

/// A left-to-right text rendering of the merge forest: each tree is printed
/// with merge values at its internal nodes and `point (birth)` leaves;
/// never-merging branches appear as separate trees.
pub fn treegram_to_ascii(treegram: &Treegram) -> String {
    let forest = build_forest(treegram);
    let mut out = String::new();
    fn render(
        nodes: &[(String, Option<Rational64>, Vec<usize>)],
        id: usize,
        prefix: &str,
        is_last: bool,
        is_root: bool,
        out: &mut String,
    ) {
        let (label, merge, children) = &nodes[id];
        let connector = if is_root {
            ""
        } else if is_last {
            "`-- "
        } else {
            "|-- "
        };
        let shown = if merge.is_some() {
            format!("merge @ {}", label)
        } else {
            label.clone()
        };
        out.push_str(&format!("{}{}{}\n", prefix, connector, shown));
        let child_prefix = if is_root {
            prefix.to_string()
        } else if is_last {
            format!("{}    ", prefix)
        } else {
            format!("{}|   ", prefix)
        };
        for (i, child) in children.iter().enumerate() {
            render(
                nodes,
                *child,
                &child_prefix,
                i + 1 == children.len(),
                false,
                out,
            );
        }
    }
    for root in &forest.roots {
        render(&forest.nodes, *root, "", true, true, &mut out);
    }
    out
}

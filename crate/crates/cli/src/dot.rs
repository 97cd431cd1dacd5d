use std::fmt::Write;

use gkmkit::fpdata::{FixedPointData, Multigraph};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph with one node per fixed point (in id order) and edges in
/// `(from, to, label)` order. Labels are `(1,-2)`, or a bare integer at rank 1.
pub fn to_dot(data: &FixedPointData, graph: &Multigraph, loop_free: bool) -> String {
    let mut s = String::new();
    s.push_str("digraph gkm {\n");
    if !loop_free {
        s.push_str("  // some weight classes could only be matched with loops\n");
    }
    let mut ids = data.ids();
    ids.sort_unstable();
    for id in ids {
        let _ = writeln!(s, "  {};", quote(id));
    }
    let mut edges = graph.edges().to_vec();
    edges.sort();
    for e in edges {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(&e.from),
            quote(&e.to),
            quote(&e.label.compact_label())
        );
    }
    s.push_str("}\n");
    s
}

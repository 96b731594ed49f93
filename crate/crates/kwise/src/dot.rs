use std::fmt::Write as _;

use kwise_core::majority::{KwiseDigraph, SccOrder};

/// Graphviz rendering of a majority digraph.
///
/// Nodes are emitted in ascending order and edges in lexicographic
/// `(from, to)` order, so equal graphs give byte-identical text. With an
/// order, every component becomes a cluster labelled `B1`, `B2`, ...
pub fn to_dot(graph: &KwiseDigraph, order: Option<&SccOrder>) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "digraph kwise {{").unwrap();
    writeln!(w, "  label=\"{}-wise majority digraph\";", graph.k()).unwrap();
    for c in 0..graph.m() {
        writeln!(w, "  c{0} [label=\"c{0}\"];", c + 1).unwrap();
    }
    if let Some(order) = order {
        for (i, comp) in order.components.iter().enumerate() {
            writeln!(w, "  subgraph cluster_{} {{", i + 1).unwrap();
            writeln!(w, "    label=\"B{}\";", i + 1).unwrap();
            for c in *comp {
                writeln!(w, "    c{};", c.0 + 1).unwrap();
            }
            writeln!(w, "  }}").unwrap();
        }
    }
    for a in graph.arcs() {
        writeln!(w, "  c{} -> c{} [label=\"{}\"];", a.from.0 + 1, a.to.0 + 1, a.weight).unwrap();
    }
    writeln!(w, "}}").unwrap();
    out
}

//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use rickart::harness::PosetTable;
use rickart::Matrix;

/// DOT text for the covering relation of `table`.
///
/// Nodes are emitted in lexicographic order of their entries and labelled
/// with the canonical entry string; every covering pair becomes one edge
/// from the lower element to the upper one.
pub fn emit_hasse_dot(table: &PosetTable<Matrix>) -> String {
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by(|&i, &j| table.elements[i].cmp(&table.elements[j]));
    let mut node = vec![0; table.len()];
    for (k, &i) in order.iter().enumerate() {
        node[i] = k;
    }
    let mut edges: Vec<(usize, usize)> = table.covers().into_iter().map(|(i, j)| (node[i], node[j])).collect();
    edges.sort_unstable();

    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (k, &i) in order.iter().enumerate() {
        writeln!(out, "  n{k} [label=\"{}\"];", table.elements[i].label()).unwrap();
    }
    for (lo, hi) in edges {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

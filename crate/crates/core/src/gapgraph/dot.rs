use std::fmt::Write;

use super::GapGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DotAnnotations {
    /// Fill vertices with in- or out-degree above one.
    pub branching: bool,
    /// Group strongly connected components into clusters.
    pub scc_clusters: bool,
}

impl DotAnnotations {
    pub fn all() -> Self {
        Self { branching: true, scc_clusters: true }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Byte-stable DOT text: nodes and arcs in lexicographic order.
pub fn export_dot(g: &GapGraph, annotations: DotAnnotations) -> String {
    let mut out = String::new();
    let name = |v: usize| quote(&g.render(&g.vertices()[v]));
    writeln!(out, "digraph G{} {{", g.order()).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for v in 0..g.vertices().len() {
        let branching = g.out_edges(v).len() > 1 || g.in_edges(v).len() > 1;
        if annotations.branching && branching {
            writeln!(out, "  {} [style=filled, fillcolor=lightgray, shape=doublecircle];", name(v)).unwrap();
        } else {
            writeln!(out, "  {};", name(v)).unwrap();
        }
    }
    if annotations.scc_clusters {
        for (i, comp) in g.strongly_connected_components().iter().enumerate() {
            let members: Vec<String> = comp.iter().map(|&v| name(v)).collect();
            writeln!(out, "  subgraph cluster_{i} {{ {}; }}", members.join("; ")).unwrap();
        }
    }
    for (e, word) in g.edges().iter().enumerate() {
        let (s, t) = g.edge_ends(e);
        writeln!(out, "  {} -> {} [label={}];", name(s), name(t), quote(&g.render(word))).unwrap();
    }
    out.push_str("}\n");
    out
}

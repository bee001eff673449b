//! Deterministic DOT export.

use super::Cdawg;

const LABEL_LIMIT: usize = 16;

fn escape(bytes: &[u8]) -> String {
    let mut out = String::new();
    for &b in bytes {
        match b {
            b'"' => out.push_str("\\\""),
            b'\\' => out.push_str("\\\\"),
            0x20..=0x7e => out.push(b as char),
            _ => out.push_str(&format!("\\\\x{:02x}", b)),
        }
    }
    out
}

fn node_label(id: usize, s: &[u8]) -> String {
    if s.len() > LABEL_LIMIT {
        format!("{}:{}..", id, escape(&s[..LABEL_LIMIT]))
    } else {
        format!("{}:{}", id, escape(s))
    }
}

/// Renders the graph as a DOT digraph. Nodes are labelled `id:string`
/// (strings longer than 16 symbols are cut and marked with `..`), edges
/// with their label string. Output is byte-identical across runs.
pub fn to_dot(c: &Cdawg) -> String {
    let mut out = String::new();
    out.push_str("digraph cdawg {\n  rankdir=LR;\n");
    for v in 0..c.node_count() {
        out.push_str(&format!(
            "  n{} [label=\"{}\"];\n",
            v,
            node_label(v, c.node_str(v))
        ));
    }
    for v in 0..c.node_count() {
        for &ei in c.out_edges(v) {
            let e = &c.edges()[ei];
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.src,
                e.dst,
                escape(c.label_str(ei))
            ));
        }
    }
    out.push_str("}\n");
    out
}

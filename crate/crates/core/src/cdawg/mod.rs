//! Compact directed acyclic word graphs.
//!
//! Nodes are in one-to-one correspondence with the maximal substrings of
//! the text; the source represents the empty string and the sink the whole
//! text. Each edge is labelled with a span of the text, and for every node
//! and every symbol that can follow it there is exactly one outgoing edge
//! whose label starts with that symbol.
//!
//! Two independent builders produce the same graph: [`build`] works
//! directly from occurrence lists and is the correctness reference, while
//! [`build_via_suffix_tree`] constructs a suffix tree and merges nodes
//! with equal end-position sets, which scales to long inputs.

mod definitional;
mod dot;
mod search;
mod suffix_tree;

pub use definitional::build;
pub use suffix_tree::build_via_suffix_tree;

use thiserror::Error;

use crate::text::Text;

/// A 1-based inclusive span of the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub begin: usize,
    pub len: usize,
}

impl Span {
    pub fn end(&self) -> usize {
        self.begin + self.len - 1
    }
}

/// A node, identified by the leftmost occurrence of its longest string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub longest: Span,
}

/// A labelled edge between node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    /// Number of edges.
    pub e: usize,
    /// Nodes with exactly one incoming edge, the sink excluded.
    pub v1: usize,
    pub node_count: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdawgError {
    #[error("unknown node id {0}")]
    UnknownNode(usize),
}

/// An immutable CDAWG over an owned copy of its text.
#[derive(Debug, Clone)]
pub struct Cdawg {
    text: Text,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Cdawg {
    /// Assembles the graph from parts, sorting adjacency deterministically:
    /// out-edges by first label symbol, in-edges by descending spelled
    /// length (node length plus label length).
    pub(crate) fn assemble(text: Text, nodes: Vec<Node>, edges: Vec<Edge>) -> Cdawg {
        let mut out_adj = vec![Vec::new(); nodes.len()];
        let mut in_adj = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.src].push(i);
            in_adj[e.dst].push(i);
        }
        let mut c = Cdawg {
            text,
            nodes,
            edges,
            out_adj,
            in_adj,
        };
        for v in 0..c.nodes.len() {
            let mut out = std::mem::take(&mut c.out_adj[v]);
            out.sort_by_key(|&ei| c.text.at(c.edges[ei].label.begin));
            c.out_adj[v] = out;
            let mut inc = std::mem::take(&mut c.in_adj[v]);
            inc.sort_by(|&a, &b| c.spell_len(b).cmp(&c.spell_len(a)));
            c.in_adj[v] = inc;
        }
        c
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The source node (empty string). Node ids are assigned by increasing
    /// (length, lexicographic) order of their longest strings, so the
    /// source is always 0 and the sink always last.
    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The longest string represented by node `v`.
    pub fn node_str(&self, v: usize) -> &[u8] {
        let s = self.nodes[v].longest;
        if s.len == 0 {
            b""
        } else {
            self.text.seg(s.begin, s.end())
        }
    }

    pub fn label_str(&self, edge: usize) -> &[u8] {
        let l = self.edges[edge].label;
        self.text.seg(l.begin, l.end())
    }

    /// Length of `longest(src) · label` for an edge.
    pub fn spell_len(&self, edge: usize) -> usize {
        let e = &self.edges[edge];
        self.nodes[e.src].longest.len + e.label.len
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Incoming edge ids of `v`, sorted by descending spelled length.
    pub fn in_edges(&self, v: usize) -> Result<&[usize], CdawgError> {
        self.in_adj
            .get(v)
            .map(|e| e.as_slice())
            .ok_or(CdawgError::UnknownNode(v))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn metrics(&self) -> Metrics {
        let sink = self.sink();
        let v1 = (0..self.nodes.len())
            .filter(|&v| v != sink && self.in_degree(v) == 1)
            .count();
        Metrics {
            e: self.edges.len(),
            v1,
            node_count: self.nodes.len(),
        }
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn v1(&self) -> usize {
        self.metrics().v1
    }

    /// Finds the node representing exactly `s`, if any.
    pub fn node_id_of(&self, s: &[u8]) -> Option<usize> {
        (0..self.nodes.len()).find(|&v| self.node_str(v) == s)
    }

    /// Multiset of strings spelled by all source-to-sink paths. Intended
    /// for validation; exponential-size graphs do not occur because each
    /// path spells a distinct suffix.
    pub fn all_path_strings(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<u8>)> = vec![(self.source(), Vec::new())];
        while let Some((v, s)) = stack.pop() {
            if v == self.sink() {
                out.push(s);
                continue;
            }
            for &ei in &self.out_adj[v] {
                let mut s2 = s.clone();
                s2.extend_from_slice(self.label_str(ei));
                stack.push((self.edges[ei].dst, s2));
            }
        }
        out.sort();
        out
    }

    /// (node string, label string, destination string) triples, sorted.
    /// Two builders agree exactly when these and the node strings match.
    pub fn edge_triples(&self) -> Vec<(Vec<u8>, Vec<u8>, Vec<u8>)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (
                    self.node_str(e.src).to_vec(),
                    self.label_str(i).to_vec(),
                    self.node_str(e.dst).to_vec(),
                )
            })
            .collect();
        out.sort();
        out
    }
}

pub use dot::to_dot;
pub use search::search;

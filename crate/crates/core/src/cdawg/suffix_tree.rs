//! Suffix-tree CDAWG builder.
//!
//! Builds the suffix tree with Ukkonen's algorithm, then merges nodes with
//! equal end-position sets. Two right-maximal strings share their
//! end-position set exactly when one is a suffix of the other (a suffix
//! link step) and both occur equally often, so the merge walks suffix
//! links comparing subtree leaf counts. Because the text ends with the
//! unique `$`, every suffix is a leaf and all leaves collapse into the
//! sink class.

use std::collections::BTreeMap;

use crate::text::Text;

use super::{Cdawg, Edge, Node, Span};

const OPEN: usize = usize::MAX;
const ROOT: usize = 0;
const NONE: usize = usize::MAX;

struct StNode {
    start: usize, // 0-based, label of the edge entering this node
    end: usize,   // exclusive; OPEN for leaves
    slink: usize,
    children: BTreeMap<u8, usize>,
}

struct SuffixTree {
    text: Vec<u8>,
    nodes: Vec<StNode>,
    active_node: usize,
    active_edge: usize,
    active_len: usize,
    remainder: usize,
    need_slink: usize,
}

impl SuffixTree {
    fn build(text: &[u8]) -> SuffixTree {
        let mut st = SuffixTree {
            text: text.to_vec(),
            nodes: vec![StNode {
                start: 0,
                end: 0,
                slink: ROOT,
                children: BTreeMap::new(),
            }],
            active_node: ROOT,
            active_edge: 0,
            active_len: 0,
            remainder: 0,
            need_slink: NONE,
        };
        for i in 0..st.text.len() {
            st.extend(i);
        }
        debug_assert_eq!(st.remainder, 0, "unique end-marker leaves no implicit suffix");
        st
    }

    fn new_node(&mut self, start: usize, end: usize) -> usize {
        self.nodes.push(StNode {
            start,
            end,
            slink: ROOT,
            children: BTreeMap::new(),
        });
        self.nodes.len() - 1
    }

    fn edge_len(&self, v: usize, pos: usize) -> usize {
        self.nodes[v].end.min(pos + 1) - self.nodes[v].start
    }

    fn add_slink(&mut self, v: usize) {
        if self.need_slink != NONE {
            self.nodes[self.need_slink].slink = v;
        }
        self.need_slink = v;
    }

    fn extend(&mut self, i: usize) {
        self.need_slink = NONE;
        self.remainder += 1;
        while self.remainder > 0 {
            if self.active_len == 0 {
                self.active_edge = i;
            }
            let edge_char = self.text[self.active_edge];
            let existing = self.nodes[self.active_node].children.get(&edge_char).copied();
            match existing {
                None => {
                    let leaf = self.new_node(i, OPEN);
                    self.nodes[self.active_node].children.insert(edge_char, leaf);
                    let an = self.active_node;
                    self.add_slink(an);
                }
                Some(next) => {
                    let el = self.edge_len(next, i);
                    if self.active_len >= el {
                        self.active_edge += el;
                        self.active_len -= el;
                        self.active_node = next;
                        continue;
                    }
                    if self.text[self.nodes[next].start + self.active_len] == self.text[i] {
                        self.active_len += 1;
                        let an = self.active_node;
                        self.add_slink(an);
                        break;
                    }
                    let split_start = self.nodes[next].start;
                    let split = self.new_node(split_start, split_start + self.active_len);
                    self.nodes[self.active_node].children.insert(edge_char, split);
                    let leaf = self.new_node(i, OPEN);
                    self.nodes[split].children.insert(self.text[i], leaf);
                    self.nodes[next].start += self.active_len;
                    let next_char = self.text[self.nodes[next].start];
                    self.nodes[split].children.insert(next_char, next);
                    self.add_slink(split);
                }
            }
            self.remainder -= 1;
            if self.active_node == ROOT && self.active_len > 0 {
                self.active_len -= 1;
                self.active_edge = i - self.remainder + 1;
            } else if self.active_node != ROOT {
                self.active_node = self.nodes[self.active_node].slink;
            }
        }
    }
}

/// Builds the CDAWG of `t` via the suffix tree.
pub fn build_via_suffix_tree(t: &Text) -> Cdawg {
    let n = t.len();
    let st = SuffixTree::build(t.bytes());
    let count = st.nodes.len();

    // Depths and per-subtree aggregates, iteratively to cope with deep trees.
    let mut depth = vec![0usize; count];
    let mut leaf_count = vec![0usize; count];
    let mut min_leaf = vec![usize::MAX; count]; // 1-based begin of leftmost suffix below
    let mut order = Vec::with_capacity(count);
    let mut stack = vec![ROOT];
    while let Some(v) = stack.pop() {
        order.push(v);
        for (_, &c) in st.nodes[v].children.iter() {
            let end = if st.nodes[c].end == OPEN { n } else { st.nodes[c].end };
            depth[c] = depth[v] + (end - st.nodes[c].start);
            stack.push(c);
        }
    }
    for &v in order.iter().rev() {
        if st.nodes[v].children.is_empty() {
            leaf_count[v] = 1;
            min_leaf[v] = n - depth[v] + 1; // suffix begin, 1-based
        } else {
            for (_, &c) in st.nodes[v].children.iter() {
                leaf_count[v] += leaf_count[c];
                min_leaf[v] = min_leaf[v].min(min_leaf[c]);
            }
        }
    }

    // Merge: an internal node absorbs its suffix-link target when both
    // occur equally often (equal end-position sets). Each node has at most
    // one absorbing extension, so classes form chains.
    let mut pre = vec![NONE; count]; // pre[u] = the longer node absorbing u
    for v in 0..count {
        if v == ROOT || st.nodes[v].children.is_empty() {
            continue;
        }
        let s = st.nodes[v].slink;
        if s != ROOT && leaf_count[s] == leaf_count[v] {
            pre[s] = v;
        }
    }
    let leader_of = |mut u: usize| {
        while pre[u] != NONE {
            u = pre[u];
        }
        u
    };

    // CDAWG nodes: the root, internal class leaders, and one sink for the
    // class of all leaves.
    let mut members: Vec<(usize, usize, Option<usize>)> = Vec::new(); // (begin, len, st node)
    members.push((1, 0, Some(ROOT)));
    members.push((1, n, None));
    for v in 1..count {
        if st.nodes[v].children.is_empty() || pre[v] != NONE {
            continue;
        }
        members.push((min_leaf[v], depth[v], Some(v)));
    }
    let key = |begin: usize, len: usize| -> (usize, &[u8]) {
        if len == 0 {
            (0, &[][..])
        } else {
            (len, t.seg(begin, begin + len - 1))
        }
    };
    members.sort_by(|a, b| key(a.0, a.1).cmp(&key(b.0, b.1)));

    let nodes: Vec<Node> = members
        .iter()
        .map(|&(begin, len, _)| Node {
            longest: Span { begin, len },
        })
        .collect();
    let sink_id = nodes.len() - 1;
    let mut id_of_st = vec![NONE; count];
    for (i, &(_, _, stv)) in members.iter().enumerate() {
        if let Some(v) = stv {
            id_of_st[v] = i;
        }
    }

    let mut edges = Vec::new();
    for &(_, _, stv) in members.iter() {
        let Some(v) = stv else { continue };
        let src = id_of_st[v];
        for (_, &c) in st.nodes[v].children.iter() {
            let end = if st.nodes[c].end == OPEN { n } else { st.nodes[c].end };
            let label_len = end - st.nodes[c].start;
            let dst = if st.nodes[c].children.is_empty() {
                sink_id
            } else {
                id_of_st[leader_of(c)]
            };
            // Canonical label: the occurrence ending at the class's
            // leftmost end position.
            let min_end = min_leaf[c] + depth[c] - 1;
            edges.push(Edge {
                src,
                dst,
                label: Span {
                    begin: min_end - label_len + 1,
                    len: label_len,
                },
            });
        }
    }

    Cdawg::assemble(t.clone(), nodes, edges)
}

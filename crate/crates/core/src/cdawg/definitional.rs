//! Occurrence-list CDAWG builder.
//!
//! Works directly from the definitions: nodes are the maximal substrings,
//! and for each node `x` and following symbol `a` there is one edge to the
//! node whose end-position class contains the shortest right-maximal
//! extension of `xa`. Occurrence lists are grouped level by level, which
//! keeps the whole construction quadratic in the text length.

use std::collections::BTreeMap;

use crate::text::Text;

use super::{Cdawg, Edge, Node, Span};

#[derive(Clone, Copy)]
enum ChildRef {
    /// Child substring occurs at least twice; index into the trie.
    Multi(usize),
    /// Child substring occurs exactly once, at this begin position. A
    /// unique occurrence extends character by character to the suffix of
    /// the text, so its right-representative starts here and runs to `n`.
    Single(usize),
}

struct TrieNode {
    len: usize,
    /// Sorted begin positions; always at least two entries.
    occs: Vec<usize>,
    children: BTreeMap<u8, ChildRef>,
}

struct OccTrie {
    nodes: Vec<TrieNode>,
}

impl OccTrie {
    fn build(t: &Text) -> OccTrie {
        let n = t.len();
        let root = TrieNode {
            len: 0,
            occs: (1..=n).collect(),
            children: BTreeMap::new(),
        };
        let mut trie = OccTrie { nodes: vec![root] };
        let mut queue = vec![0usize];
        while let Some(id) = queue.pop() {
            let len = trie.nodes[id].len;
            let mut split: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
            for &b in &trie.nodes[id].occs {
                // Repeated substrings never contain `$`, so every
                // occurrence has a following symbol except occurrences of
                // the empty string at the last position.
                if b + len <= n {
                    split.entry(t.at(b + len)).or_default().push(b);
                }
            }
            for (ch, occs) in split {
                let child = if occs.len() >= 2 {
                    let cid = trie.nodes.len();
                    trie.nodes.push(TrieNode {
                        len: len + 1,
                        occs,
                        children: BTreeMap::new(),
                    });
                    queue.push(cid);
                    ChildRef::Multi(cid)
                } else {
                    ChildRef::Single(occs[0])
                };
                trie.nodes[id].children.insert(ch, child);
            }
        }
        trie
    }

    /// A repeated substring is right-maximal exactly when it has two or
    /// more distinct following symbols.
    fn is_right_maximal(&self, id: usize) -> bool {
        self.nodes[id].children.len() >= 2
    }

    fn is_left_maximal(&self, id: usize, t: &Text) -> bool {
        let node = &self.nodes[id];
        if node.occs[0] == 1 {
            return true;
        }
        let first = t.at(node.occs[0] - 1);
        node.occs.iter().any(|&b| t.at(b - 1) != first)
    }

    /// Follows single-child steps until a right-maximal descendant.
    fn descend_to_right_maximal(&self, mut id: usize) -> usize {
        while self.nodes[id].children.len() == 1 {
            match self.nodes[id].children.values().next().unwrap() {
                ChildRef::Multi(c) => id = *c,
                // A non-branching repeated substring keeps all of its
                // occurrences when extended, so its only child repeats too.
                ChildRef::Single(_) => unreachable!("repeated substring lost occurrences"),
            }
        }
        id
    }

    /// Leftward extension to the longest member of the end-position class:
    /// prepend the forced preceding symbol until left-maximal. Returns the
    /// (leftmost begin, length) of the result.
    fn extend_left(&self, id: usize, t: &Text) -> (usize, usize) {
        let node = &self.nodes[id];
        let mut occs = node.occs.clone();
        let mut len = node.len;
        loop {
            if occs[0] == 1 {
                break;
            }
            let first = t.at(occs[0] - 1);
            if occs.iter().any(|&b| t.at(b - 1) != first) {
                break;
            }
            for b in occs.iter_mut() {
                *b -= 1;
            }
            len += 1;
        }
        (occs[0], len)
    }
}

/// Builds the CDAWG of `t` from occurrence lists.
pub fn build(t: &Text) -> Cdawg {
    let n = t.len();
    let trie = OccTrie::build(t);

    // Maximal substrings: both-maximal repeated substrings, plus the empty
    // string and the text itself.
    let mut maximal: Vec<(usize, usize, Option<usize>)> = Vec::new(); // (begin, len, trie id)
    maximal.push((1, 0, Some(0)));
    maximal.push((1, n, None));
    for id in 1..trie.nodes.len() {
        if trie.is_right_maximal(id) && trie.is_left_maximal(id, t) {
            maximal.push((trie.nodes[id].occs[0], trie.nodes[id].len, Some(id)));
        }
    }
    let key = |begin: usize, len: usize| -> (usize, &[u8]) {
        if len == 0 {
            (0, &[][..])
        } else {
            (len, t.seg(begin, begin + len - 1))
        }
    };
    maximal.sort_by(|a, b| key(a.0, a.1).cmp(&key(b.0, b.1)));

    let nodes: Vec<Node> = maximal
        .iter()
        .map(|&(begin, len, _)| Node {
            longest: Span { begin, len },
        })
        .collect();
    let id_by_span: BTreeMap<(usize, usize), usize> = maximal
        .iter()
        .enumerate()
        .map(|(i, &(begin, len, _))| ((len, begin), i))
        .collect();

    let mut edges = Vec::new();
    for (src, &(_, src_len, trie_id)) in maximal.iter().enumerate() {
        let Some(tid) = trie_id else { continue }; // sink has no out-edges
        for child in trie.nodes[tid].children.values() {
            let (dst, spell_begin, spell_len) = match *child {
                ChildRef::Single(b) => {
                    // Unique occurrence: the right-representative is the
                    // whole suffix starting at `b`, whose end-position
                    // class is the sink's.
                    (*id_by_span.get(&(n, 1)).unwrap(), b, n - b + 1)
                }
                ChildRef::Multi(c) => {
                    let rm = trie.descend_to_right_maximal(c);
                    let (lead_begin, lead_len) = trie.extend_left(rm, t);
                    let dst = *id_by_span
                        .get(&(lead_len, lead_begin))
                        .expect("class leader must be a maximal substring");
                    (dst, trie.nodes[rm].occs[0], trie.nodes[rm].len)
                }
            };
            edges.push(Edge {
                src,
                dst,
                label: Span {
                    begin: spell_begin + src_len,
                    len: spell_len - src_len,
                },
            });
        }
    }

    Cdawg::assemble(t.clone(), nodes, edges)
}

//! Single-character-edit sensitivity laboratory.
//!
//! For a text `T` the lab enumerates every substitution, insertion and
//! deletion that preserves the end-marker, rebuilds all measures on the
//! edited string `T'`, classifies the maximal repeats of `T'` and the
//! in-degree-one nodes of `T`, and evaluates the inequality battery
//! B0–B10 with exact integer arithmetic. A violated inequality is
//! reported, never dropped: it falsifies either the implementation or the
//! reading of a definition.

mod bounds;
mod crossing;
mod indegree;
mod partition;
mod scan;

pub use bounds::{check_bounds, BoundEntry, BoundReport, PropertyCheck};
pub use crossing::{crossing_occurrences, CrossKind, CrossingOcc};
pub use indegree::{classify_indegree_one, InDegOnePartition, IndegClass, IndegRecord, ZLink};
pub use partition::{classify_nodes, DegreeClass, NodeClass, NodePartition, NodeRecord};
pub use scan::{
    exhaustive_additive_sensitivity, scan, ExhaustiveReport, ScanError, ScanReport,
    ScenarioSummary, SCAN_MAX_N,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cdawg::{self, Cdawg};
use crate::grammar::Grammar;
use crate::text::{Text, END_MARKER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum EditKind {
    Substitution,
    Insertion,
    Deletion,
}

impl EditKind {
    pub fn short(&self) -> &'static str {
        match self {
            EditKind::Substitution => "sub",
            EditKind::Insertion => "ins",
            EditKind::Deletion => "del",
        }
    }
}

/// One edit. Positions are 1-based; the end-marker is never edited.
/// For deletions, `pos` also names the gap left in `T'`, which is how the
/// crossing-occurrence case analysis consumes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EditOp {
    pub kind: EditKind,
    pub pos: usize,
    pub ch: Option<u8>,
}

impl EditOp {
    pub fn substitution(pos: usize, ch: u8) -> EditOp {
        EditOp {
            kind: EditKind::Substitution,
            pos,
            ch: Some(ch),
        }
    }

    pub fn insertion(pos: usize, ch: u8) -> EditOp {
        EditOp {
            kind: EditKind::Insertion,
            pos,
            ch: Some(ch),
        }
    }

    pub fn deletion(pos: usize) -> EditOp {
        EditOp {
            kind: EditKind::Deletion,
            pos,
            ch: None,
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            EditKind::Deletion => format!("del@{}", self.pos),
            _ => format!(
                "{}@{}='{}'",
                self.kind.short(),
                self.pos,
                crate::text::render_bytes(&[self.ch.unwrap()])
            ),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EditError {
    #[error("edit position {0} out of range")]
    OutOfRange(usize),
    #[error("the end-marker cannot be edited or inserted")]
    MarkerEdit,
    #[error("substituting an equal symbol is a no-op")]
    NoOp,
}

/// Applies an edit, validating the end-marker constraints.
pub fn apply_edit(op: &EditOp, t: &Text) -> Result<Text, EditError> {
    let n = t.len();
    let bytes = t.bytes();
    match op.kind {
        EditKind::Substitution => {
            let c = op.ch.ok_or(EditError::MarkerEdit)?;
            if c == END_MARKER {
                return Err(EditError::MarkerEdit);
            }
            if op.pos < 1 || op.pos > n - 1 {
                return Err(EditError::OutOfRange(op.pos));
            }
            if t.at(op.pos) == c {
                return Err(EditError::NoOp);
            }
            let mut b = bytes.to_vec();
            b[op.pos - 1] = c;
            Ok(Text::new(b).unwrap())
        }
        EditKind::Insertion => {
            let c = op.ch.ok_or(EditError::MarkerEdit)?;
            if c == END_MARKER {
                return Err(EditError::MarkerEdit);
            }
            if op.pos < 1 || op.pos > n {
                return Err(EditError::OutOfRange(op.pos));
            }
            let mut b = bytes.to_vec();
            b.insert(op.pos - 1, c);
            Ok(Text::new(b).unwrap())
        }
        EditKind::Deletion => {
            if op.pos < 1 || op.pos > n.saturating_sub(1) {
                return Err(EditError::OutOfRange(op.pos));
            }
            let mut b = bytes.to_vec();
            b.remove(op.pos - 1);
            Ok(Text::new(b).unwrap())
        }
    }
}

/// The edit alphabet: every symbol of `t` plus exactly one fresh symbol.
/// Any second fresh symbol would behave identically up to relabelling.
pub fn edit_alphabet(t: &Text) -> Vec<u8> {
    let mut set: BTreeSet<u8> = t.alphabet();
    let fresh = (b'a'..=b'z')
        .chain(b'A'..=b'Z')
        .chain(b'0'..=b'9')
        .chain(0x21..=0x7e)
        .chain(0x01..=0x20)
        .find(|c| *c != END_MARKER && !set.contains(c))
        .expect("a byte outside the text alphabet exists");
    set.insert(fresh);
    set.into_iter().collect()
}

/// All edits of `t` over alphabet `alpha`, in (kind, position, symbol)
/// lexicographic order. Substitutions of an equal symbol are skipped.
pub fn enumerate_edits_with_alphabet(t: &Text, alpha: &[u8]) -> Vec<EditOp> {
    let n = t.len();
    let mut out = Vec::new();
    for i in 1..n {
        for &c in alpha {
            if c != t.at(i) {
                out.push(EditOp::substitution(i, c));
            }
        }
    }
    for i in 1..=n {
        for &c in alpha {
            out.push(EditOp::insertion(i, c));
        }
    }
    for i in 1..n {
        out.push(EditOp::deletion(i));
    }
    out.sort();
    out
}

/// All edits of `t` over its own alphabet plus one fresh symbol.
pub fn enumerate_edits(t: &Text) -> Vec<EditOp> {
    enumerate_edits_with_alphabet(t, &edit_alphabet(t))
}

/// Cached measures of one string: its CDAWG, maximal substrings, degree
/// and in-degree tables, and grammar size.
#[derive(Debug)]
pub struct Analysis {
    pub text: Text,
    pub cdawg: Cdawg,
    pub maximal: BTreeSet<Vec<u8>>,
    pub e: usize,
    pub v1: usize,
    pub gsize: usize,
    /// Out-degree per maximal substring.
    pub degree: BTreeMap<Vec<u8>, usize>,
    /// In-degree per maximal substring (edge count, parallel edges counted).
    pub indeg: BTreeMap<Vec<u8>, usize>,
}

impl Analysis {
    pub fn new(text: Text) -> Analysis {
        let cdawg = cdawg::build_via_suffix_tree(&text);
        let metrics = cdawg.metrics();
        let gsize = Grammar::from_cdawg(&cdawg).eliminate_units().size();
        let mut maximal = BTreeSet::new();
        let mut degree = BTreeMap::new();
        let mut indeg = BTreeMap::new();
        for v in 0..cdawg.node_count() {
            let s = cdawg.node_str(v).to_vec();
            degree.insert(s.clone(), cdawg.out_degree(v));
            indeg.insert(s.clone(), cdawg.in_degree(v));
            maximal.insert(s);
        }
        Analysis {
            text,
            cdawg,
            maximal,
            e: metrics.e,
            v1: metrics.v1,
            gsize,
            degree,
            indeg,
        }
    }

    /// Maximal repeats: maximal substrings minus the text itself.
    pub fn is_maximal_repeat(&self, x: &[u8]) -> bool {
        x != self.text.bytes() && self.maximal.contains(x)
    }

    pub fn maximal_repeats(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.maximal.iter().filter(|x| x.as_slice() != self.text.bytes())
    }

    /// |M(T)|.
    pub fn m_count(&self) -> usize {
        self.maximal.len()
    }

    /// |MR(T)|.
    pub fn mr_count(&self) -> usize {
        self.maximal.len() - 1
    }
}

/// One edit with both strings analysed.
#[derive(Debug)]
pub struct EditScenario {
    pub original: Arc<Analysis>,
    pub edited: Analysis,
    pub op: EditOp,
}

impl EditScenario {
    pub fn new(original: Arc<Analysis>, op: EditOp) -> EditScenario {
        let t2 = apply_edit(&op, &original.text).expect("enumerated edit must apply");
        EditScenario {
            original,
            edited: Analysis::new(t2),
            op,
        }
    }

    /// The edited position in `T'` coordinates (for deletions, the gap).
    pub fn edit_pos(&self) -> usize {
        self.op.pos
    }

    pub fn delta_e(&self) -> i64 {
        self.edited.e as i64 - self.original.e as i64
    }

    pub fn delta_g(&self) -> i64 {
        self.edited.gsize as i64 - self.original.gsize as i64
    }

    pub fn delta_v1(&self) -> i64 {
        self.edited.v1 as i64 - self.original.v1 as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn txt(s: &str) -> Text {
        Text::new(s.as_bytes().to_vec()).unwrap()
    }

    #[test]
    fn edit_alphabet_adds_one_fresh_symbol() {
        assert_eq!(edit_alphabet(&txt("ab$")), vec![b'a', b'b', b'c']);
        assert_eq!(edit_alphabet(&txt("$")), vec![b'a']);
    }

    #[test]
    fn enumeration_counts() {
        // (n-1)(|A|-1) substitutions + (n-1) deletions + n|A| insertions.
        let t = txt("ab$");
        let edits = enumerate_edits(&t);
        assert_eq!(edits.len(), 2 * 2 + 2 + 3 * 3);
        let subs = edits
            .iter()
            .filter(|e| e.kind == EditKind::Substitution)
            .count();
        let dels = edits.iter().filter(|e| e.kind == EditKind::Deletion).count();
        let inss = edits
            .iter()
            .filter(|e| e.kind == EditKind::Insertion)
            .count();
        assert_eq!((subs, dels, inss), (4, 2, 9));

        // spec's alphabet-of-two example: 2 sub + 2 del + 6 ins
        let edits = enumerate_edits_with_alphabet(&t, &[b'a', b'b']);
        assert_eq!(edits.len(), 10);
    }

    #[test]
    fn marker_text_enumerates_insertions_only() {
        let edits = enumerate_edits(&txt("$"));
        assert_eq!(edits, vec![EditOp::insertion(1, b'a')]);
    }

    #[test]
    fn example_scenario_is_enumerated() {
        let t = txt("abcabab$");
        let edits = enumerate_edits(&t);
        let op = EditOp::insertion(1, b'b');
        assert!(edits.contains(&op));
        assert_eq!(apply_edit(&op, &t).unwrap().bytes(), b"babcabab$");
    }

    #[test]
    fn apply_validates() {
        let t = txt("ab$");
        assert_eq!(
            apply_edit(&EditOp::substitution(2, b'$'), &t),
            Err(EditError::MarkerEdit)
        );
        assert_eq!(
            apply_edit(&EditOp::substitution(3, b'a'), &t),
            Err(EditError::OutOfRange(3))
        );
        assert_eq!(
            apply_edit(&EditOp::substitution(1, b'a'), &t),
            Err(EditError::NoOp)
        );
        assert_eq!(
            apply_edit(&EditOp::deletion(1), &txt("$")),
            Err(EditError::OutOfRange(1))
        );
        assert_eq!(
            apply_edit(&EditOp::insertion(3, b'z'), &t).unwrap().bytes(),
            b"abz$"
        );
        assert_eq!(
            apply_edit(&EditOp::deletion(2), &t).unwrap().bytes(),
            b"a$"
        );
    }
}

//! Crossing occurrences.
//!
//! An occurrence `T'[j..k]` of a substring crosses the edited position `i`
//! when it touches or contains it. For insertions and substitutions the
//! cases are `k = i-1` (touch from the left), `j <= i <= k` (contain) and
//! `j = i+1` (touch from the right); for deletions, where `i` names the
//! gap, they are `k = i-1`, `j <= i-1 && i <= k` and `j = i`.
//!
//! Each crossing occurrence carries the context strings `P` and `S`: the
//! part of `T'` from the occurrence start through the edited position and
//! the part from the edited position through the occurrence end. For a
//! deletion both stop at the gap, so `P` ends at `i-1` and `S` starts at
//! `i`; for the other edits both include position `i` itself.

use super::{EditKind, EditScenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossKind {
    TouchLeft,
    Contain,
    TouchRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingOcc {
    /// 1-based begin in `T'`.
    pub begin: usize,
    /// 1-based inclusive end in `T'`; `begin - 1` for the empty string.
    pub end: usize,
    pub kind: CrossKind,
    /// `P`: prefix context through the edited position.
    pub prefix_part: Vec<u8>,
    /// `S`: suffix context from the edited position.
    pub suffix_part: Vec<u8>,
}

/// Classifies the span `[j..k]` against edited position `i`.
pub(crate) fn classify_span(kind: EditKind, i: usize, j: usize, k: usize) -> Option<CrossKind> {
    // Written with sums to stay in unsigned arithmetic.
    match kind {
        EditKind::Insertion | EditKind::Substitution => {
            if k + 1 == i {
                Some(CrossKind::TouchLeft)
            } else if j <= i && i <= k {
                Some(CrossKind::Contain)
            } else if j == i + 1 {
                Some(CrossKind::TouchRight)
            } else {
                None
            }
        }
        EditKind::Deletion => {
            if k + 1 == i {
                Some(CrossKind::TouchLeft)
            } else if j + 1 <= i && i <= k {
                Some(CrossKind::Contain)
            } else if j == i {
                Some(CrossKind::TouchRight)
            } else {
                None
            }
        }
    }
}

pub(crate) fn context_strings(
    s: &EditScenario,
    kind: CrossKind,
    j: usize,
    k: usize,
) -> (Vec<u8>, Vec<u8>) {
    let t2 = &s.edited.text;
    let i = s.edit_pos();
    let p_end = match s.op.kind {
        EditKind::Deletion => i - 1,
        _ => i,
    };
    let prefix = match kind {
        CrossKind::TouchLeft | CrossKind::Contain => t2.seg(j, p_end).to_vec(),
        CrossKind::TouchRight => Vec::new(),
    };
    let suffix = match kind {
        CrossKind::TouchLeft => Vec::new(),
        CrossKind::Contain | CrossKind::TouchRight => t2.seg(i, k).to_vec(),
    };
    (prefix, suffix)
}

/// All begin positions of `x` in `t2`, extended to the empty string whose
/// occurrences sit between symbols (begins `1..=n+1`, zero length).
pub(crate) fn occurrence_begins(x: &[u8], t2: &crate::text::Text) -> Vec<usize> {
    if x.is_empty() {
        (1..=t2.len() + 1).collect()
    } else {
        crate::oracle::beg_pos(x, t2)
    }
}

/// The crossing occurrences of a non-empty `x` in the edited string,
/// ascending; empty when `x` never crosses the edit.
pub fn crossing_occurrences(x: &[u8], s: &EditScenario) -> Vec<CrossingOcc> {
    assert!(!x.is_empty(), "crossing occurrences are per non-empty substring");
    crossing_occurrences_inner(x, s)
}

pub(crate) fn crossing_occurrences_inner(x: &[u8], s: &EditScenario) -> Vec<CrossingOcc> {
    let i = s.edit_pos();
    occurrence_begins(x, &s.edited.text)
        .into_iter()
        .filter_map(|j| {
            let k = j + x.len() - 1;
            classify_span(s.op.kind, i, j, k).map(|kind| {
                let (prefix_part, suffix_part) = context_strings(s, kind, j, k);
                CrossingOcc {
                    begin: j,
                    end: k,
                    kind,
                    prefix_part,
                    suffix_part,
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensitivity::{Analysis, EditOp, EditScenario};
    use crate::text::Text;
    use std::sync::Arc;

    fn scenario(t: &str, op: EditOp) -> EditScenario {
        let a = Arc::new(Analysis::new(Text::new(t.as_bytes().to_vec()).unwrap()));
        EditScenario::new(a, op)
    }

    #[test]
    fn insertion_containment() {
        // T = abcabab$, T' = babcabab$, inserted 'b' at 1.
        let s = scenario("abcabab$", EditOp::insertion(1, b'b'));
        let occs = crossing_occurrences(b"b", &s);
        assert_eq!(occs.len(), 1);
        assert_eq!((occs[0].begin, occs[0].end), (1, 1));
        assert_eq!(occs[0].kind, CrossKind::Contain);
        assert_eq!(occs[0].suffix_part, b"b".to_vec());
        assert_eq!(occs[0].prefix_part, b"b".to_vec());
    }

    #[test]
    fn distant_occurrences_do_not_cross() {
        let s = scenario("abcabab$", EditOp::insertion(1, b'b'));
        // "ab" occurs at 2, 5, 7 in babcabab$; only begin 2 touches i+1.
        let occs = crossing_occurrences(b"ab", &s);
        assert_eq!(occs.len(), 1);
        assert_eq!(occs[0].begin, 2);
        assert_eq!(occs[0].kind, CrossKind::TouchRight);
    }

    #[test]
    fn deletion_touch_right_has_empty_prefix() {
        // T = abcabab$, delete position 3 ('c'): T' = ababab$, gap at i=3.
        let s = scenario("abcabab$", EditOp::deletion(3));
        let occs = crossing_occurrences(b"ab", &s);
        let touch_right: Vec<_> = occs
            .iter()
            .filter(|o| o.kind == CrossKind::TouchRight)
            .collect();
        assert_eq!(touch_right.len(), 1);
        assert_eq!(touch_right[0].begin, 3);
        assert!(touch_right[0].prefix_part.is_empty());
        assert_eq!(touch_right[0].suffix_part, b"ab".to_vec());
    }
}

//! Definition-level string analytics.
//!
//! Everything in this module is computed straight from the definitions by
//! scanning the text. These functions are the correctness reference for the
//! graph builders and the sensitivity lab; they favour clarity over speed
//! and are only ever run on short strings or in tests.
//!
//! A substring `x` is *left-maximal* when two distinct symbols precede it
//! somewhere, or when it is a prefix of the text. *Right-maximal* is the
//! mirror image with suffixes. The *maximal set* `M(T)` contains the
//! substrings that are both, and always includes the empty string and the
//! text itself. The *maximal repeats* `MR(T)` are `M(T)` minus the text.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::text::Text;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("string is not a substring of the text")]
    NotASubstring,
}

/// All 1-based begin positions of `x` in `t`, ascending. `x` must be
/// non-empty; a string that does not occur yields an empty list.
pub fn beg_pos(x: &[u8], t: &Text) -> Vec<usize> {
    assert!(!x.is_empty(), "beg_pos requires a non-empty query");
    let tb = t.bytes();
    if x.len() > tb.len() {
        return Vec::new();
    }
    (0..=tb.len() - x.len())
        .filter(|&i| &tb[i..i + x.len()] == x)
        .map(|i| i + 1)
        .collect()
}

/// All 1-based end positions of `x` in `t`, ascending.
pub fn end_pos(x: &[u8], t: &Text) -> Vec<usize> {
    beg_pos(x, t).into_iter().map(|b| b + x.len() - 1).collect()
}

/// Whether `x` occurs in `t`; the empty string always does.
pub fn is_substring(x: &[u8], t: &Text) -> bool {
    x.is_empty() || !beg_pos(x, t).is_empty()
}

/// Left-maximality test. The empty string is left-maximal (it is a prefix).
pub fn is_left_maximal(x: &[u8], t: &Text) -> Result<bool, OracleError> {
    if x.is_empty() {
        return Ok(true);
    }
    let occs = beg_pos(x, t);
    if occs.is_empty() {
        return Err(OracleError::NotASubstring);
    }
    if occs[0] == 1 {
        return Ok(true); // prefix of t
    }
    let preceding: BTreeSet<u8> = occs.iter().map(|&b| t.at(b - 1)).collect();
    Ok(preceding.len() >= 2)
}

/// Right-maximality test. The empty string is right-maximal (it is a suffix).
pub fn is_right_maximal(x: &[u8], t: &Text) -> Result<bool, OracleError> {
    if x.is_empty() {
        return Ok(true);
    }
    let occs = beg_pos(x, t);
    if occs.is_empty() {
        return Err(OracleError::NotASubstring);
    }
    let n = t.len();
    if occs.last().unwrap() + x.len() - 1 == n {
        return Ok(true); // suffix of t
    }
    let following: BTreeSet<u8> = occs.iter().map(|&b| t.at(b + x.len())).collect();
    Ok(following.len() >= 2)
}

/// The symbols that can follow `x` in `t`: `{a : xa occurs in t}`.
pub fn right_extensions(x: &[u8], t: &Text) -> Result<BTreeSet<u8>, OracleError> {
    if x.is_empty() {
        return Ok(t.bytes().iter().copied().collect());
    }
    let occs = beg_pos(x, t);
    if occs.is_empty() {
        return Err(OracleError::NotASubstring);
    }
    let n = t.len();
    Ok(occs
        .iter()
        .filter(|&&b| b + x.len() - 1 < n)
        .map(|&b| t.at(b + x.len()))
        .collect())
}

/// The shortest right-maximal extension `xβ` of `x`; `x` itself when it is
/// already right-maximal.
pub fn right_representative(x: &[u8], t: &Text) -> Result<Vec<u8>, OracleError> {
    if !is_substring(x, t) {
        return Err(OracleError::NotASubstring);
    }
    let mut cur = x.to_vec();
    while !is_right_maximal(&cur, t).unwrap() {
        // Not right-maximal and not a suffix: every occurrence is followed
        // by the same single symbol.
        let b = beg_pos(&cur, t)[0];
        cur.push(t.at(b + cur.len()));
    }
    Ok(cur)
}

/// The shortest left-maximal extension `αx` of `x`; `x` itself when it is
/// already left-maximal. Prepending a forced symbol preserves the set of
/// end positions, so this walks to the longest member of `x`'s
/// end-position class.
pub fn extend_to_left_maximal(x: &[u8], t: &Text) -> Result<Vec<u8>, OracleError> {
    if !is_substring(x, t) {
        return Err(OracleError::NotASubstring);
    }
    let mut cur = x.to_vec();
    while !is_left_maximal(&cur, t).unwrap() {
        let b = beg_pos(&cur, t)[0];
        cur.insert(0, t.at(b - 1));
    }
    Ok(cur)
}

/// `M(t)`: substrings that are both left- and right-maximal. Always
/// contains the empty string and `t` itself.
pub fn maximal_set(t: &Text) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    out.insert(Vec::new());
    out.insert(t.bytes().to_vec());
    // Group occurrences level by level; a substring occurring once is never
    // maximal unless it is the whole text, so singleton groups are dropped.
    let n = t.len();
    let mut level: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for b in 1..=n {
        level.entry(t.at(b)).or_default().push(b);
    }
    let mut len = 1usize;
    let mut groups: Vec<Vec<usize>> = level.into_values().filter(|v| v.len() >= 2).collect();
    while !groups.is_empty() {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for occs in &groups {
            if both_maximal(occs, len, t) {
                let b = occs[0];
                out.insert(t.seg(b, b + len - 1).to_vec());
            }
            let mut split: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
            for &b in occs {
                if b + len <= n {
                    split.entry(t.at(b + len)).or_default().push(b);
                }
            }
            next.extend(split.into_values().filter(|v| v.len() >= 2));
        }
        groups = next;
        len += 1;
    }
    out
}

fn both_maximal(occs: &[usize], len: usize, t: &Text) -> bool {
    let n = t.len();
    let left = occs[0] == 1 || {
        let preceding: BTreeSet<u8> = occs.iter().map(|&b| t.at(b - 1)).collect();
        preceding.len() >= 2
    };
    if !left {
        return false;
    }
    occs.last().unwrap() + len - 1 == n || {
        let following: BTreeSet<u8> = occs
            .iter()
            .filter(|&&b| b + len - 1 < n)
            .map(|&b| t.at(b + len))
            .collect();
        following.len() >= 2
    }
}

/// `MR(t) = M(t) \ {t}`.
pub fn maximal_repeats(t: &Text) -> BTreeSet<Vec<u8>> {
    let mut m = maximal_set(t);
    m.remove(t.bytes());
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn txt(s: &str) -> Text {
        Text::new(s.as_bytes().to_vec()).unwrap()
    }

    #[test]
    fn beg_pos_scans() {
        assert_eq!(beg_pos(b"ab", &txt("abcabab$")), vec![1, 4, 6]);
        assert_eq!(beg_pos(b"$", &txt("a$")), vec![2]);
        assert_eq!(beg_pos(b"GCG", &txt("AGAGCGAGCGCGC$")), vec![4, 8, 10]);
        assert_eq!(beg_pos(b"zz", &txt("a$")), Vec::<usize>::new());
        assert_eq!(end_pos(b"ab", &txt("abcabab$")), vec![2, 5, 7]);
    }

    #[test]
    fn left_maximality() {
        let t = txt("abcabab$");
        assert!(is_left_maximal(b"a", &t).unwrap()); // prefix
        assert!(!is_left_maximal(b"b", &t).unwrap()); // always after 'a'
        assert!(is_left_maximal(b"AG", &txt("AGAGCGAGCGCGC$")).unwrap());
        assert_eq!(
            is_left_maximal(b"zz", &t),
            Err(OracleError::NotASubstring)
        );
        assert!(is_left_maximal(b"", &t).unwrap());
    }

    #[test]
    fn right_maximality() {
        let t = txt("abcabab$");
        assert!(!is_right_maximal(b"a", &t).unwrap()); // always before 'b'
        assert!(is_right_maximal(b"ab", &t).unwrap()); // followed by c, a, $
        assert!(is_right_maximal(b"", &t).unwrap());
        assert_eq!(
            is_right_maximal(b"zz", &t),
            Err(OracleError::NotASubstring)
        );
    }

    #[test]
    fn maximal_sets() {
        let m = maximal_set(&txt("a$"));
        let want: BTreeSet<Vec<u8>> = [b"".to_vec(), b"a$".to_vec()].into_iter().collect();
        assert_eq!(m, want);

        let m = maximal_set(&txt("abcabab$"));
        let want: BTreeSet<Vec<u8>> = [b"".to_vec(), b"ab".to_vec(), b"abcabab$".to_vec()]
            .into_iter()
            .collect();
        assert_eq!(m, want);
    }

    #[test]
    fn maximal_repeat_sets() {
        let mr = maximal_repeats(&txt("a$"));
        assert_eq!(mr.len(), 1);
        assert!(mr.contains(&b"".to_vec()));

        let mr = maximal_repeats(&txt("abcabab$"));
        let want: BTreeSet<Vec<u8>> = [b"".to_vec(), b"ab".to_vec()].into_iter().collect();
        assert_eq!(mr, want);
    }

    #[test]
    fn right_representatives() {
        assert_eq!(
            right_representative(b"A", &txt("AGAGCGAGCGCGC$")).unwrap(),
            b"AG".to_vec()
        );
        assert_eq!(
            right_representative(b"ab", &txt("abcabab$")).unwrap(),
            b"ab".to_vec()
        );
        assert_eq!(
            right_representative(b"c", &txt("abcabab$")).unwrap(),
            b"cabab$".to_vec()
        );
        assert_eq!(
            right_representative(b"zz", &txt("a$")),
            Err(OracleError::NotASubstring)
        );
    }

    #[test]
    fn right_extension_sets() {
        let t = txt("abcabab$");
        let got = right_extensions(b"ab", &t).unwrap();
        let want: BTreeSet<u8> = [b'c', b'a', b'$'].into_iter().collect();
        assert_eq!(got, want);
        assert!(right_extensions(t.bytes(), &t).unwrap().is_empty());
        let got = right_extensions(b"", &txt("a$")).unwrap();
        let want: BTreeSet<u8> = [b'a', b'$'].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn left_extension_walk() {
        let t = txt("abcabab$");
        assert_eq!(extend_to_left_maximal(b"b", &t).unwrap(), b"ab".to_vec());
        assert_eq!(extend_to_left_maximal(b"", &t).unwrap(), Vec::<u8>::new());
        assert_eq!(extend_to_left_maximal(b"ab", &t).unwrap(), b"ab".to_vec());
    }
}

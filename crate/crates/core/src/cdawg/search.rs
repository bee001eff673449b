//! Pattern search by graph traversal.

use super::Cdawg;

/// All 1-based begin positions of `pattern` in the indexed text, ascending.
///
/// Matches symbol by symbol from the source; every completion path from
/// the match locus to the sink spells a distinct suffix, and a remaining
/// spelled length `r` yields the occurrence beginning at
/// `n - r - |pattern| + 1`. The empty pattern yields an empty list.
pub fn search(c: &Cdawg, pattern: &[u8]) -> Vec<usize> {
    if pattern.is_empty() {
        return Vec::new();
    }
    let mut v = c.source();
    let mut consumed = 0usize;
    let mut locus: Option<(usize, usize)> = None; // (node after edge, leftover label symbols)
    while consumed < pattern.len() {
        let next = c
            .out_edges(v)
            .iter()
            .copied()
            .find(|&ei| c.label_str(ei)[0] == pattern[consumed]);
        let Some(ei) = next else {
            return Vec::new();
        };
        let label = c.label_str(ei);
        let take = label.len().min(pattern.len() - consumed);
        if label[..take] != pattern[consumed..consumed + take] {
            return Vec::new();
        }
        consumed += take;
        if take < label.len() {
            locus = Some((c.edges()[ei].dst, label.len() - take));
            break;
        }
        v = c.edges()[ei].dst;
    }
    let (start, leftover) = locus.unwrap_or((v, 0));

    let n = c.text().len();
    let mut begins = Vec::new();
    let mut stack = vec![(start, leftover)];
    while let Some((u, r)) = stack.pop() {
        if u == c.sink() {
            begins.push(n - r - pattern.len() + 1);
            continue;
        }
        for &ei in c.out_edges(u) {
            stack.push((c.edges()[ei].dst, r + c.edges()[ei].label.len));
        }
    }
    begins.sort_unstable();
    begins
}

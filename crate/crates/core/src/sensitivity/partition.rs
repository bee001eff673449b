//! Classification of the maximal repeats of the edited string.
//!
//! Every `x` in `MR(T')` falls into exactly one class:
//!
//! * `Q`    — already maximal in `T`;
//! * `N1`   — fresh, but right-maximal in `T`;
//! * `N2`   — fresh, but left-maximal in `T`;
//! * `NAdd` — fresh, neither-maximal, every occurrence in `T'` crosses the
//!   edit and every right-extension is witnessed by a crossing occurrence;
//! * `NBase`— the remaining fresh neither-maximal strings.
//!
//! Each `x` in `N1 ∪ NBase` is anchored to the suffix context of its
//! leftmost crossing occurrence, unless a strictly longer member shares
//! that context, in which case the rightmost one is used. The anchor's
//! portion that survives from `T` (everything strictly right of the edit)
//! is extended leftwards in `T` until left-maximal; the result `U(x)` is
//! an existing node that bounds the out-degree of `x` and is hit by no
//! other member.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::oracle;
use crate::text::render_bytes;

use super::bounds::PropertyCheck;
use super::crossing::{classify_span, crossing_occurrences_inner, occurrence_begins, CrossingOcc};
use super::{EditKind, EditScenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeClass {
    N1,
    N2,
    NBase,
    NAdd,
    Q,
}

/// How the out-degree of a fresh node compares to its `U` node's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeClass {
    /// `D_{T'}(x) >= D_T(U(x)) + 2` (equality when the degree bound holds).
    Max,
    /// `D_{T'}(x) = D_T(U(x)) + 1`.
    Mid,
    /// `D_{T'}(x) <= D_T(U(x))`.
    Less,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnchorSide {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone)]
pub struct NodeRecord {
    pub node: Vec<u8>,
    pub class: NodeClass,
    /// Q member with at least one new right-extension.
    pub q_new: bool,
    pub anchor_side: Option<AnchorSide>,
    /// Chosen suffix context, verbatim from `T'`.
    pub anchor: Option<Vec<u8>>,
    /// The anchor's `T`-surviving part extended to left-maximality in `T`.
    pub u_value: Option<Vec<u8>>,
    pub degree_t_prime: usize,
    pub degree_u: Option<usize>,
    pub degree_class: Option<DegreeClass>,
}

#[derive(Debug)]
pub struct NodePartition {
    /// One record per element of `MR(T')`, keyed by the string.
    pub records: BTreeMap<Vec<u8>, NodeRecord>,
    /// Right-extensions over `N2 ∪ Q` witnessed by a non-crossing occurrence.
    pub uc: usize,
    /// Right-extensions over `N2 ∪ Q` witnessed only by crossing occurrences.
    pub wc: usize,
    pub checks: Vec<PropertyCheck>,
}

impl NodePartition {
    pub fn count(&self, class: NodeClass) -> usize {
        self.records.values().filter(|r| r.class == class).count()
    }

    pub fn members(&self, class: NodeClass) -> impl Iterator<Item = &NodeRecord> {
        self.records.values().filter(move |r| r.class == class)
    }

    /// Records in `N1 ∪ NBase`.
    pub fn anchored_members(&self) -> impl Iterator<Item = &NodeRecord> {
        self.records
            .values()
            .filter(|r| matches!(r.class, NodeClass::N1 | NodeClass::NBase))
    }

    pub fn q_new_count(&self) -> usize {
        self.records.values().filter(|r| r.q_new).count()
    }

    pub fn degree_class_count(&self, dc: DegreeClass) -> usize {
        self.records
            .values()
            .filter(|r| r.degree_class == Some(dc))
            .count()
    }
}

/// The suffix context pair of `x`'s leftmost and rightmost crossing
/// occurrences.
fn anchor_candidates(occs: &[CrossingOcc]) -> Option<(Vec<u8>, Vec<u8>)> {
    let first = occs.first()?;
    let last = occs.last()?;
    Some((first.suffix_part.clone(), last.suffix_part.clone()))
}

/// The part of a suffix context that also occurs in `T`: a deletion's
/// context starts after the gap and survives whole; an insertion's or
/// substitution's context starts with the edited symbol, which is dropped.
fn surviving_part(kind: EditKind, anchor: &[u8]) -> &[u8] {
    match kind {
        EditKind::Deletion => anchor,
        EditKind::Insertion | EditKind::Substitution => {
            if anchor.is_empty() {
                anchor
            } else {
                &anchor[1..]
            }
        }
    }
}

pub fn classify_nodes(s: &EditScenario) -> NodePartition {
    let t = &s.original.text;
    let t2 = &s.edited.text;
    let i = s.edit_pos();
    let mut checks: Vec<PropertyCheck> = Vec::new();
    let mut records: BTreeMap<Vec<u8>, NodeRecord> = BTreeMap::new();

    // Pass 1: classes.
    let mut disjoint_violations = 0usize;
    for x in s.edited.maximal_repeats() {
        let class = if s.original.maximal.contains(x) {
            NodeClass::Q
        } else {
            let in_t = oracle::is_substring(x, t);
            let rm = in_t && oracle::is_right_maximal(x, t).unwrap();
            let lm = in_t && oracle::is_left_maximal(x, t).unwrap();
            if rm && lm {
                disjoint_violations += 1;
            }
            if rm {
                NodeClass::N1
            } else if lm {
                NodeClass::N2
            } else {
                let occs = occurrence_begins(x, t2);
                let crossing: Vec<CrossingOcc> = crossing_occurrences_inner(x, s);
                let all_crossing = occs.len() == crossing.len();
                let crossing_exts: BTreeSet<u8> = crossing
                    .iter()
                    .filter(|o| o.end < t2.len())
                    .map(|o| t2.at(o.end + 1))
                    .collect();
                let exts = oracle::right_extensions(x, t2).unwrap();
                let no_other_ext = exts.is_subset(&crossing_exts);
                if all_crossing && no_other_ext {
                    NodeClass::NAdd
                } else {
                    NodeClass::NBase
                }
            }
        };
        records.insert(
            x.clone(),
            NodeRecord {
                node: x.clone(),
                class,
                q_new: false,
                anchor_side: None,
                anchor: None,
                u_value: None,
                degree_t_prime: *s.edited.degree.get(x).unwrap(),
                degree_u: None,
                degree_class: None,
            },
        );
    }
    checks.push(PropertyCheck::counted(
        "n1_n2_disjoint",
        disjoint_violations,
        "fresh nodes both left- and right-maximal in T",
    ));

    // The two published readings of Q coincide because no proper substring
    // of T' containing `$` can be maximal; assert it anyway.
    let q_mismatch = records
        .values()
        .filter(|r| r.class == NodeClass::Q)
        .filter(|r| !s.original.is_maximal_repeat(&r.node))
        .count();
    checks.push(PropertyCheck::counted(
        "q_readings_agree",
        q_mismatch,
        "Q member not a maximal repeat of T",
    ));

    // Pass 2: anchors and U for N1 ∪ NBase, longest first.
    let mut anchored: Vec<(Vec<u8>, Vec<u8>, Vec<u8>)> = Vec::new(); // (x, S_L, S_R)
    let mut missing_crossing = 0usize;
    for r in records.values() {
        if !matches!(r.class, NodeClass::N1 | NodeClass::NBase) {
            continue;
        }
        let occs = crossing_occurrences_inner(&r.node, s);
        match anchor_candidates(&occs) {
            Some((sl, sr)) => anchored.push((r.node.clone(), sl, sr)),
            None => missing_crossing += 1,
        }
    }
    checks.push(PropertyCheck::counted(
        "fresh_node_crosses_edit",
        missing_crossing,
        "fresh maximal substring without a crossing occurrence",
    ));

    for idx in 0..anchored.len() {
        let (x, sl, sr) = anchored[idx].clone();
        let collide = anchored.iter().any(|(y, yl, yr)| {
            y.len() > x.len() && (*yl == sl || *yr == sl)
        });
        let (side, anchor) = if collide {
            (AnchorSide::Rightmost, sr)
        } else {
            (AnchorSide::Leftmost, sl)
        };
        let surviving = surviving_part(s.op.kind, &anchor).to_vec();
        let u = oracle::extend_to_left_maximal(&surviving, t)
            .expect("surviving anchor part occurs in T");
        let degree_u = oracle::right_extensions(&u, t).unwrap().len();
        let rec = records.get_mut(&x).unwrap();
        let diff = rec.degree_t_prime as i64 - degree_u as i64;
        rec.anchor_side = Some(side);
        rec.anchor = Some(anchor);
        rec.degree_u = Some(degree_u);
        rec.degree_class = Some(if diff >= 2 {
            DegreeClass::Max
        } else if diff == 1 {
            DegreeClass::Mid
        } else {
            DegreeClass::Less
        });
        rec.u_value = Some(u);
    }

    // U must land on maximal substrings of T, injectively.
    let u_values: Vec<&Vec<u8>> = records
        .values()
        .filter_map(|r| r.u_value.as_ref())
        .collect();
    let not_maximal = u_values
        .iter()
        .filter(|u| !s.original.maximal.contains(**u))
        .count();
    checks.push(PropertyCheck::counted(
        "u_in_maximal_set",
        not_maximal,
        "U value is not maximal in T",
    ));

    // Exclusion behind the anchor rule: no x has both context candidates
    // taken by (distinct) longer members.
    let mut exclusion_violations = 0usize;
    for (x, sl, sr) in &anchored {
        let left_taken = anchored
            .iter()
            .filter(|(y, yl, yr)| y.len() > x.len() && (yl == sl || yr == sl))
            .map(|(y, _, _)| y.clone());
        let right_taken: BTreeSet<Vec<u8>> = anchored
            .iter()
            .filter(|(z, zl, zr)| z.len() > x.len() && (zl == sr || zr == sr))
            .map(|(z, _, _)| z.clone())
            .collect();
        for y in left_taken {
            if right_taken.iter().any(|z| *z != y) {
                exclusion_violations += 1;
                break;
            }
        }
    }
    checks.push(PropertyCheck::counted(
        "anchor_exclusion",
        exclusion_violations,
        "both anchor candidates taken by distinct longer members",
    ));

    // Pass 3: Qnew and the uc/wc split over N2 ∪ Q.
    let mut uc = 0usize;
    let mut wc = 0usize;
    let n_edited = t2.len();
    let keys: Vec<Vec<u8>> = records.keys().cloned().collect();
    for x in keys {
        let class = records[&x].class;
        if !matches!(class, NodeClass::N2 | NodeClass::Q) {
            continue;
        }
        let begins = occurrence_begins(&x, t2);
        let mut witnessed: BTreeSet<u8> = BTreeSet::new(); // by a non-crossing occurrence
        let mut crossing_followers: BTreeSet<u8> = BTreeSet::new();
        for &j in &begins {
            let k = j + x.len() - 1;
            if k + 1 > n_edited {
                continue; // nothing follows
            }
            let follower = t2.at(k + 1);
            if classify_span(s.op.kind, i, j, k).is_some() {
                crossing_followers.insert(follower);
            } else {
                witnessed.insert(follower);
            }
        }
        let exts: BTreeSet<u8> = if x.is_empty() {
            t2.bytes().iter().copied().collect()
        } else {
            oracle::right_extensions(&x, t2).unwrap()
        };
        for &a in &exts {
            if witnessed.contains(&a) {
                uc += 1;
            } else {
                wc += 1;
            }
        }
        if class == NodeClass::Q {
            let mut xa = x.clone();
            let q_new = exts.iter().any(|&a| {
                xa.push(a);
                let is_new = !oracle::is_substring(&xa, t) && crossing_followers.contains(&a);
                xa.pop();
                is_new
            });
            records.get_mut(&x).unwrap().q_new = q_new;
        }
    }

    NodePartition {
        records,
        uc,
        wc,
        checks,
    }
}

impl NodeRecord {
    pub fn describe(&self) -> String {
        format!("{:?}('{}')", self.class, render_bytes(&self.node))
    }
}

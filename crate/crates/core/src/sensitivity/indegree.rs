//! Classification of the in-degree-one nodes of the original CDAWG.
//!
//! A node `x` with a single incoming edge either disappears from the
//! edited graph (`V1`), keeps in-degree one (`Unchanged`), or gains
//! in-edges (`V2`). The `V2` cases split by the fate of `x`'s unique
//! parent `y` (a prefix of `x`) and of `q`, the longest proper suffix of
//! `x` that is maximal in `T`:
//!
//! * `VA`  — `y` is gone from `MR(T')`;
//! * `VB`  — `y` survives but `q` is gone;
//! * `VC`  — both survive. A chain of in-neighbours with rightmost ending
//!   positions inside `x` is followed until it reaches a string that is a
//!   suffix of `y` (`VcSuffix`) or has in-degree one without being such a
//!   suffix (`VcNew`).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::bounds::PropertyCheck;
use super::crossing::crossing_occurrences_inner;
use super::partition::{classify_nodes, NodeClass, NodePartition};
use super::EditScenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndegClass {
    /// `x` is not maximal in `T'` any more.
    V1,
    /// `x` survived with two or more in-edges; parent gone.
    VA,
    /// Parent survived, maximal-repeat suffix gone.
    VB,
    /// Chain ended in a fresh in-degree-one string (case I).
    VcNew,
    /// Chain ended in a suffix of the parent (case II).
    VcSuffix,
    /// Still in-degree one.
    Unchanged,
}

/// One step of the in-neighbour chain, with its occurrence inside `x`
/// (1-based positions within `x`).
#[derive(Debug, Clone)]
pub struct ZLink {
    pub value: Vec<u8>,
    pub begin_in_x: usize,
    pub end_in_x: usize,
    /// Longest prefix of this element among its in-neighbours; present on
    /// every element that generated a successor.
    pub prefix_parent: Option<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub struct IndegRecord {
    pub node: Vec<u8>,
    pub class: IndegClass,
    pub parent: Option<Vec<u8>>,
    pub repeat_suffix: Option<Vec<u8>>,
    pub chain: Vec<ZLink>,
}

impl IndegRecord {
    /// The chain's terminal element.
    pub fn z_last(&self) -> Option<&Vec<u8>> {
        self.chain.last().map(|l| &l.value)
    }
}

#[derive(Debug)]
pub struct InDegOnePartition {
    pub records: Vec<IndegRecord>,
    /// Sum of original out-degrees over the distinct case-II parents.
    pub s_y: usize,
    /// Number of case-II members (each has exactly one original in-edge).
    pub x_y: usize,
    /// `x_y - 2 |V_Y|`.
    pub omega: i64,
    /// Case-II terminals by out-degree growth over `U`: +2, +1, none.
    pub v_z2: BTreeSet<Vec<u8>>,
    pub v_z1: BTreeSet<Vec<u8>>,
    pub v_z0: BTreeSet<Vec<u8>>,
    /// Distinct case-II parents.
    pub parents: BTreeSet<Vec<u8>>,
    pub checks: Vec<PropertyCheck>,
}

impl InDegOnePartition {
    pub fn count(&self, class: IndegClass) -> usize {
        self.records.iter().filter(|r| r.class == class).count()
    }
}

/// In-neighbour selection: rightmost ending position inside `w`, ties to
/// the shortest string. Returns the chosen in-neighbour and its 1-based
/// end position within `w`.
fn rightmost_in_neighbour(
    s: &EditScenario,
    node_of: &BTreeMap<&[u8], usize>,
    w: &[u8],
) -> Option<(Vec<u8>, usize)> {
    let c = &s.edited.cdawg;
    let v = *node_of.get(w)?;
    let mut per_neighbour: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for &ei in c.in_edges(v).unwrap() {
        let e = &c.edges()[ei];
        let src = c.node_str(e.src).to_vec();
        let end_in_w = w.len() - e.label.len;
        per_neighbour
            .entry(src)
            .and_modify(|best| *best = (*best).max(end_in_w))
            .or_insert(end_in_w);
    }
    per_neighbour
        .into_iter()
        .max_by(|(u1, j1), (u2, j2)| j1.cmp(j2).then(u2.len().cmp(&u1.len())))
        .map(|(u, j)| (u, j))
}

/// Longest in-neighbour of `w` that is a prefix of `w`.
fn longest_prefix_in_neighbour(
    s: &EditScenario,
    node_of: &BTreeMap<&[u8], usize>,
    w: &[u8],
) -> Option<Vec<u8>> {
    let c = &s.edited.cdawg;
    let v = *node_of.get(w)?;
    c.in_edges(v)
        .unwrap()
        .iter()
        .map(|&ei| c.node_str(c.edges()[ei].src))
        .filter(|u| w.starts_with(u))
        .max_by_key(|u| u.len())
        .map(|u| u.to_vec())
}

pub fn classify_indegree_one(s: &EditScenario) -> InDegOnePartition {
    classify_indegree_one_with(s, &classify_nodes(s))
}

pub fn classify_indegree_one_with(
    s: &EditScenario,
    partition: &NodePartition,
) -> InDegOnePartition {
    let orig = &s.original.cdawg;
    let edited = &s.edited.cdawg;
    let mut checks: Vec<PropertyCheck> = Vec::new();

    let node_of: BTreeMap<&[u8], usize> = (0..edited.node_count())
        .map(|v| (edited.node_str(v), v))
        .collect();

    let mut records: Vec<IndegRecord> = Vec::new();
    let mut parent_not_prefix = 0usize;
    let mut position_violations = 0usize;
    let mut zl_not_fresh_right_max = 0usize;
    let mut overlap_violations = 0usize;

    for v in 0..orig.node_count() {
        if v == orig.sink() || orig.in_degree(v) != 1 {
            continue;
        }
        let x = orig.node_str(v).to_vec();
        if !s.edited.is_maximal_repeat(&x) {
            records.push(IndegRecord {
                node: x,
                class: IndegClass::V1,
                parent: None,
                repeat_suffix: None,
                chain: Vec::new(),
            });
            continue;
        }
        let indeg_after = *s.edited.indeg.get(&x).unwrap();
        if indeg_after == 1 {
            records.push(IndegRecord {
                node: x,
                class: IndegClass::Unchanged,
                parent: None,
                repeat_suffix: None,
                chain: Vec::new(),
            });
            continue;
        }

        // V2: the node gained in-edges. Identify the unique parent (a
        // prefix of x: the single in-edge spells all of x) and the longest
        // maximal-repeat proper suffix.
        let ei = orig.in_edges(v).unwrap()[0];
        let y = orig.node_str(orig.edges()[ei].src).to_vec();
        if !x.starts_with(&y) || orig.spell_len(ei) != x.len() {
            parent_not_prefix += 1;
        }
        // Longest proper suffix of x maximal in T; the empty string closes
        // the search because it is always a maximal repeat.
        let q = (1..=x.len())
            .map(|drop| x[drop..].to_vec())
            .find(|suf| s.original.is_maximal_repeat(suf))
            .expect("the empty string is a maximal repeat");

        let class;
        let mut chain: Vec<ZLink> = Vec::new();
        if !s.edited.is_maximal_repeat(&y) {
            class = IndegClass::VA;
        } else if !s.edited.is_maximal_repeat(&q) {
            class = IndegClass::VB;
        } else {
            // Case VC: follow the chain of rightmost in-neighbours.
            let mut offset = 0usize; // begin of current element inside x, minus one
            let mut current = x.clone();
            let terminal_class;
            loop {
                if y.ends_with(&current) && current != x {
                    terminal_class = IndegClass::VcSuffix;
                    break;
                }
                if current != x && *s.edited.indeg.get(&current).unwrap_or(&0) == 1 {
                    terminal_class = IndegClass::VcNew;
                    break;
                }
                let Some((z, end_in_cur)) = rightmost_in_neighbour(s, &node_of, &current) else {
                    terminal_class = IndegClass::VcNew; // unreachable for valid graphs
                    break;
                };
                let prefix_parent = longest_prefix_in_neighbour(s, &node_of, &current);
                if let Some(last) = chain.last_mut() {
                    last.prefix_parent = prefix_parent;
                } else {
                    // The prefix parent of x itself is not recorded; the
                    // chain stores the elements below x.
                }
                let end_in_x = offset + end_in_cur;
                let begin_in_x = end_in_x + 1 - z.len();
                chain.push(ZLink {
                    value: z.clone(),
                    begin_in_x,
                    end_in_x,
                    prefix_parent: None,
                });
                // Chain positions: i_z < i_q < j_y <= j_z within x.
                let i_q = x.len() - q.len() + 1;
                let j_y = y.len();
                if !(begin_in_x < i_q && i_q < j_y && j_y <= end_in_x) {
                    position_violations += 1;
                }
                offset = begin_in_x - 1;
                current = z;
            }
            class = terminal_class;

            if class == IndegClass::VcSuffix {
                let z_l = chain.last().map(|l| l.value.clone()).unwrap_or_default();
                // The terminal must be a fresh right-maximal node with an
                // anchor, and the parent/suffix overlap must cross the edit
                // and end with U(z_l).
                let rec = partition.records.get(&z_l);
                let is_n1 = rec.map(|r| r.class == NodeClass::N1).unwrap_or(false);
                if !is_n1 {
                    zl_not_fresh_right_max += 1;
                }
                let i_q = x.len() - q.len() + 1;
                let j_y = y.len();
                if i_q <= j_y {
                    let overlap = x[i_q - 1..j_y].to_vec();
                    let crossing = if overlap.is_empty() {
                        Vec::new()
                    } else {
                        crossing_occurrences_inner(&overlap, s)
                    };
                    let u_ok = rec
                        .and_then(|r| r.u_value.as_ref())
                        .map(|u| overlap.ends_with(u))
                        .unwrap_or(false);
                    if crossing.is_empty() || !u_ok {
                        overlap_violations += 1;
                    }
                } else {
                    overlap_violations += 1;
                }
            }
        }
        records.push(IndegRecord {
            node: x,
            class,
            parent: Some(y),
            repeat_suffix: Some(q),
            chain,
        });
    }

    checks.push(PropertyCheck::counted(
        "indeg1_parent_is_prefix",
        parent_not_prefix,
        "single in-edge does not spell the whole node",
    ));
    checks.push(PropertyCheck::counted(
        "chain_positions",
        position_violations,
        "chain element occurrence violates i_z < i_q < j_y <= j_z",
    ));
    checks.push(PropertyCheck::counted(
        "chain_terminal_fresh_right_maximal",
        zl_not_fresh_right_max,
        "case-II terminal is not a fresh right-maximal node",
    ));
    checks.push(PropertyCheck::counted(
        "parent_suffix_overlap",
        overlap_violations,
        "parent/suffix overlap misses a crossing occurrence or U suffix",
    ));

    // Case-I terminals are pairwise distinct.
    let case1_terminals: Vec<Vec<u8>> = records
        .iter()
        .filter(|r| r.class == IndegClass::VcNew)
        .filter_map(|r| r.z_last().cloned())
        .collect();
    let distinct: BTreeSet<&Vec<u8>> = case1_terminals.iter().collect();
    checks.push(PropertyCheck::counted(
        "fresh_terminal_injective",
        case1_terminals.len() - distinct.len(),
        "two case-I members share a terminal",
    ));

    // Distinct case-II parents must have distinct terminals and U values.
    let case2: Vec<&IndegRecord> = records
        .iter()
        .filter(|r| r.class == IndegClass::VcSuffix)
        .collect();
    let mut parent_injective_violations = 0usize;
    for a in 0..case2.len() {
        for b in a + 1..case2.len() {
            let (ra, rb) = (case2[a], case2[b]);
            if ra.parent == rb.parent {
                continue;
            }
            let (za, zb) = (ra.z_last(), rb.z_last());
            let same_terminal = za.is_some() && za == zb;
            let ua = za.and_then(|z| partition.records.get(z)).and_then(|r| r.u_value.clone());
            let ub = zb.and_then(|z| partition.records.get(z)).and_then(|r| r.u_value.clone());
            let same_u = ua.is_some() && ua == ub;
            if same_terminal || same_u {
                parent_injective_violations += 1;
            }
        }
    }
    checks.push(PropertyCheck::counted(
        "parent_injective",
        parent_injective_violations,
        "distinct case-II parents share a terminal or U value",
    ));

    // Aggregates.
    let parents: BTreeSet<Vec<u8>> = case2
        .iter()
        .filter_map(|r| r.parent.clone())
        .collect();
    let s_y: usize = parents
        .iter()
        .map(|y| s.original.degree.get(y).copied().unwrap_or(0))
        .sum();
    let x_y = case2.len();
    let omega = x_y as i64 - 2 * parents.len() as i64;

    let mut v_z2 = BTreeSet::new();
    let mut v_z1 = BTreeSet::new();
    let mut v_z0 = BTreeSet::new();
    for r in &case2 {
        let Some(z_l) = r.z_last() else { continue };
        let Some(rec) = partition.records.get(z_l) else { continue };
        let (Some(du), d2) = (rec.degree_u, rec.degree_t_prime) else {
            continue;
        };
        let diff = d2 as i64 - du as i64;
        if diff >= 2 {
            v_z2.insert(z_l.clone());
        } else if diff == 1 {
            v_z1.insert(z_l.clone());
        } else {
            v_z0.insert(z_l.clone());
        }
    }

    InDegOnePartition {
        records,
        s_y,
        x_y,
        omega,
        v_z2,
        v_z1,
        v_z0,
        parents,
        checks,
    }
}

//! The inequality battery.
//!
//! Eleven integer inequalities, B0–B10, are evaluated per edit scenario,
//! together with the structural property checks produced by the two
//! classifications. Everything is exact integer arithmetic; `holds` means
//! `lhs <= rhs`. B6 is stated doubled (`2|MR| <= min(e, e - ω)`) to stay
//! in integers, and B10 counts violations of the per-node degree bound
//! and of the injectivity of `U`, so its right-hand side is zero.

use serde::Serialize;

use super::indegree::{classify_indegree_one_with, IndegClass};
use super::partition::{classify_nodes, DegreeClass, NodeClass};
use super::EditScenario;

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl BoundEntry {
    fn new(name: &'static str, lhs: i64, rhs: i64) -> BoundEntry {
        BoundEntry {
            name,
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

/// A named structural check; `count` is the number of violations found.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub count: usize,
    pub holds: bool,
    pub detail: &'static str,
}

impl PropertyCheck {
    pub(crate) fn counted(name: &'static str, count: usize, detail: &'static str) -> PropertyCheck {
        PropertyCheck {
            name,
            count,
            holds: count == 0,
            detail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub properties: Vec<PropertyCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds) && self.properties.iter().all(|p| p.holds)
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            if !e.holds {
                out.push(format!("{}: lhs {} > rhs {}", e.name, e.lhs, e.rhs));
            }
        }
        for p in &self.properties {
            if !p.holds {
                out.push(format!("{} ({} violations): {}", p.name, p.count, p.detail));
            }
        }
        out
    }
}

pub fn check_bounds(s: &EditScenario) -> BoundReport {
    let np = classify_nodes(s);
    let ip = classify_indegree_one_with(s, &np);

    let e = s.original.e as i64;
    let e2 = s.edited.e as i64;
    let m = s.original.m_count() as i64;
    let mr = s.original.mr_count() as i64;
    let v1 = s.original.v1 as i64;
    let v12 = s.edited.v1 as i64;
    let g = s.original.gsize as i64;
    let g2 = s.edited.gsize as i64;

    let n1 = np.count(NodeClass::N1) as i64;
    let n2 = np.count(NodeClass::N2) as i64;
    let nbase = np.count(NodeClass::NBase) as i64;
    let nadd = np.count(NodeClass::NAdd) as i64;
    let q = np.count(NodeClass::Q) as i64;
    let n_mid = np.degree_class_count(DegreeClass::Mid) as i64;
    let n_less = np.degree_class_count(DegreeClass::Less) as i64;

    let sum_n1_nbase: i64 = np.anchored_members().map(|r| r.degree_t_prime as i64).sum();
    let sum_n2_qnew: i64 = np
        .records
        .values()
        .filter(|r| r.class == NodeClass::N2 || r.q_new)
        .map(|r| r.degree_t_prime as i64)
        .sum();
    let sum_nadd: i64 = np
        .members(NodeClass::NAdd)
        .map(|r| r.degree_t_prime as i64)
        .sum();

    let v1_count = ip.count(IndegClass::V1) as i64;
    let va = ip.count(IndegClass::VA) as i64;
    let vb = ip.count(IndegClass::VB) as i64;
    let x_y = ip.x_y as i64;
    let omega = ip.omega;

    // B10: per-node degree bound D_{T'}(x) <= D_T(U(x)) + 2 plus the
    // injectivity of U, counted as violations against zero.
    let degree_violations = np
        .anchored_members()
        .filter(|r| match r.degree_u {
            Some(du) => r.degree_t_prime as i64 > du as i64 + 2,
            None => true,
        })
        .count();
    let u_values: Vec<&Vec<u8>> = np.anchored_members().filter_map(|r| r.u_value.as_ref()).collect();
    let mut u_collisions = 0usize;
    for a in 0..u_values.len() {
        for b in a + 1..u_values.len() {
            if u_values[a] == u_values[b] {
                u_collisions += 1;
            }
        }
    }

    let entries = vec![
        BoundEntry::new("B0", g2 - g, 4 * e + 4),
        BoundEntry::new("B1", e2, e + 5 * mr - n_mid - 2 * n_less + n2 + 3),
        BoundEntry::new("B2", sum_n1_nbase, e + 2 * m - n_mid - 2 * n_less),
        BoundEntry::new("B3", sum_n2_qnew, e + m + n2),
        BoundEntry::new("B4", sum_nadd, 2 * mr),
        BoundEntry::new("B5", v1 - v12, v1_count + va + vb + x_y),
        BoundEntry::new("B6", 2 * mr, e.min(e - omega)),
        BoundEntry::new(
            "B7",
            n2,
            m - (ip.v_z1.len() as i64 + 2 * ip.v_z2.len() as i64),
        ),
        BoundEntry::new("B8", np.uc as i64, n2 + e),
        BoundEntry::new("B9", np.wc as i64, m),
        BoundEntry::new("B10", (degree_violations + u_collisions) as i64, 0),
    ];

    let mut properties = Vec::new();
    properties.push(PropertyCheck::counted(
        "partition_total",
        (n1 + n2 + nbase + nadd + q - s.edited.mr_count() as i64).unsigned_abs() as usize,
        "classes do not partition MR(T')",
    ));
    properties.push(PropertyCheck::counted(
        "grammar_identity",
        usize::from((g2 - g) != (e2 - e) - (v12 - v1)),
        "grammar size delta disagrees with edge/in-degree deltas",
    ));
    properties.extend(np.checks.iter().cloned());
    properties.extend(ip.checks.iter().cloned());

    BoundReport {
        entries,
        properties,
    }
}

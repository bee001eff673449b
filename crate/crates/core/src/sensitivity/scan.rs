//! Whole-string scans and the exhaustive worst-case search.

use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

use crate::grammar;
use crate::text::{render_bytes, Text, END_MARKER};

use super::bounds::{check_bounds, BoundReport};
use super::{enumerate_edits, enumerate_edits_with_alphabet, Analysis, EditOp, EditScenario};

/// Largest text a scan will accept; every edit re-analyses the whole
/// string, so cost grows roughly cubically.
pub const SCAN_MAX_N: usize = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScanError {
    #[error("resource guard: scan accepts texts up to n = {SCAN_MAX_N}, got {0}")]
    TooLong(usize),
    #[error("resource guard: exhaustive search accepts n <= 14 and sigma in 1..=3, got n = {n}, sigma = {sigma}")]
    GuardExceeded { n: usize, sigma: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSummary {
    pub op: EditOp,
    pub n: usize,
    pub e: usize,
    pub v1: usize,
    pub g: usize,
    pub delta_e: i64,
    pub delta_g: i64,
    pub bounds_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub op: EditOp,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub text: String,
    pub n: usize,
    pub sigma: usize,
    pub e: usize,
    pub v1: usize,
    pub g: usize,
    pub max_delta_e: i64,
    pub argmax_delta_e: Option<EditOp>,
    pub max_delta_g: i64,
    pub argmax_delta_g: Option<EditOp>,
    pub all_bounds_hold: bool,
    pub violations: Vec<Violation>,
    pub scenarios: Vec<ScenarioSummary>,
    #[serde(skip)]
    pub reports: Vec<BoundReport>,
}

/// Runs every edit of `t`, collecting measure deltas and the full bound
/// battery. Scenario order is the enumeration order regardless of the
/// parallel execution.
pub fn scan(t: &Text) -> Result<ScanReport, ScanError> {
    if t.len() > SCAN_MAX_N {
        return Err(ScanError::TooLong(t.len()));
    }
    let original = Arc::new(Analysis::new(t.clone()));
    let ops = enumerate_edits(t);
    let outcomes: Vec<(ScenarioSummary, BoundReport)> = ops
        .par_iter()
        .map(|&op| {
            let scenario = EditScenario::new(Arc::clone(&original), op);
            let report = check_bounds(&scenario);
            let summary = ScenarioSummary {
                op,
                n: scenario.edited.text.len(),
                e: scenario.edited.e,
                v1: scenario.edited.v1,
                g: scenario.edited.gsize,
                delta_e: scenario.delta_e(),
                delta_g: scenario.delta_g(),
                bounds_ok: report.all_hold(),
            };
            (summary, report)
        })
        .collect();

    let mut max_delta_e = i64::MIN;
    let mut argmax_delta_e = None;
    let mut max_delta_g = i64::MIN;
    let mut argmax_delta_g = None;
    let mut violations = Vec::new();
    for (summary, report) in &outcomes {
        if summary.delta_e > max_delta_e {
            max_delta_e = summary.delta_e;
            argmax_delta_e = Some(summary.op);
        }
        if summary.delta_g > max_delta_g {
            max_delta_g = summary.delta_g;
            argmax_delta_g = Some(summary.op);
        }
        if !summary.bounds_ok {
            violations.push(Violation {
                op: summary.op,
                failures: report.failures(),
            });
        }
    }
    let (scenarios, reports): (Vec<_>, Vec<_>) = outcomes.into_iter().unzip();
    Ok(ScanReport {
        text: render_bytes(t.bytes()),
        n: t.len(),
        sigma: t.sigma(),
        e: original.e,
        v1: original.v1,
        g: original.gsize,
        max_delta_e: if scenarios.is_empty() { 0 } else { max_delta_e },
        argmax_delta_e,
        max_delta_g: if scenarios.is_empty() { 0 } else { max_delta_g },
        argmax_delta_g,
        all_bounds_hold: violations.is_empty(),
        violations,
        scenarios,
        reports,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub sigma: usize,
    pub max_delta_g: i64,
    pub witness_text: String,
    pub witness_op: Option<EditOp>,
}

/// Worst-case grammar growth over every text `w·$` with `|w| = n - 1`
/// over a fixed alphabet of size `sigma`, and every edit drawing symbols
/// from that same alphabet.
///
/// Texts that are not in canonical relabelling form (first occurrences of
/// distinct symbols in alphabet order) are skipped: relabelling the
/// alphabet changes neither graph nor grammar sizes.
pub fn exhaustive_additive_sensitivity(
    n: usize,
    sigma: usize,
) -> Result<ExhaustiveReport, ScanError> {
    if n == 0 || n > 14 || sigma == 0 || sigma > 3 {
        return Err(ScanError::GuardExceeded { n, sigma });
    }
    let alphabet: Vec<u8> = (0..sigma).map(|k| b'a' + k as u8).collect();
    let len = n - 1;
    let total: u64 = (sigma as u64).pow(len as u32);

    let best = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut w = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                w.push(alphabet[(c % sigma as u64) as usize]);
                c /= sigma as u64;
            }
            if !canonical(&w) {
                return None;
            }
            let t = Text::from_content(&w).unwrap();
            let g = grammar::grammar_size(&t);
            let mut best: Option<(i64, EditOp)> = None;
            for op in enumerate_edits_with_alphabet(&t, &alphabet) {
                let t2 = super::apply_edit(&op, &t).unwrap();
                let delta = grammar::grammar_size(&t2) as i64 - g as i64;
                if best.map(|(d, _)| delta > d).unwrap_or(true) {
                    best = Some((delta, op));
                }
            }
            best.map(|(d, op)| (d, t, op))
        })
        .max_by(|a, b| {
            // Ties resolve to the smallest witness text, then smallest op,
            // so the parallel reduction is deterministic.
            a.0.cmp(&b.0)
                .then_with(|| b.1.bytes().cmp(a.1.bytes()))
                .then_with(|| b.2.cmp(&a.2))
        });

    let (max_delta_g, witness_text, witness_op) = match best {
        Some((d, t, op)) => (d, render_bytes(t.bytes()), Some(op)),
        None => (0, String::new(), None),
    };
    Ok(ExhaustiveReport {
        n,
        sigma,
        max_delta_g,
        witness_text,
        witness_op,
    })
}

/// First occurrences of distinct symbols appear in alphabet order.
fn canonical(w: &[u8]) -> bool {
    let mut next = b'a';
    for &c in w {
        if c == END_MARKER {
            continue;
        }
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

//! Corpus generation, batch execution and report emission.
//!
//! Corpus families: `fibonacci` (by index: f1 = "b", f2 = "a",
//! f_k = f_{k-1}·f_{k-2}), `thue-morse` and `period-doubling` (by length),
//! `random` (binary, seeded) and `file` (raw bytes, which must not contain
//! the reserved `$`). Every generated string is `$`-terminated before
//! analysis.

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::sensitivity::{scan, ScanReport};
use crate::text::{render_bytes, Text, END_MARKER};

/// Longest string the generators will produce.
pub const MAX_GEN_LEN: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CorpusFamily {
    Fibonacci,
    ThueMorse,
    PeriodDoubling,
    Random,
    File,
}

impl CorpusFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CorpusFamily::Fibonacci => "fibonacci",
            CorpusFamily::ThueMorse => "thue-morse",
            CorpusFamily::PeriodDoubling => "period-doubling",
            CorpusFamily::Random => "random",
            CorpusFamily::File => "file",
        }
    }

    pub fn parse(s: &str) -> Option<CorpusFamily> {
        match s {
            "fibonacci" => Some(CorpusFamily::Fibonacci),
            "thue-morse" => Some(CorpusFamily::ThueMorse),
            "period-doubling" => Some(CorpusFamily::PeriodDoubling),
            "random" => Some(CorpusFamily::Random),
            "file" => Some(CorpusFamily::File),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub family: CorpusFamily,
    pub k: Option<usize>,
    pub len: Option<usize>,
    pub seed: Option<u64>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("unknown corpus family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` needs parameter `{param}`")]
    MissingParam { family: &'static str, param: &'static str },
    #[error("resource guard: requested length {0} exceeds {MAX_GEN_LEN}")]
    Oversize(usize),
    #[error("file contains the reserved `$` byte at offset {0}")]
    DollarByte(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad spec line `{line}`: {reason}")]
    BadSpecLine { line: String, reason: String },
}

impl CorpusSpec {
    /// Parses one batch-file line: `<family> key=value ...` with keys
    /// `k`, `len`, `seed`, `path`.
    pub fn parse_line(line: &str) -> Result<CorpusSpec, WorkbenchError> {
        let bad = |reason: &str| WorkbenchError::BadSpecLine {
            line: line.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = line.split_whitespace();
        let fam = parts.next().ok_or_else(|| bad("empty line"))?;
        let family =
            CorpusFamily::parse(fam).ok_or_else(|| WorkbenchError::UnknownFamily(fam.into()))?;
        let mut spec = CorpusSpec {
            family,
            k: None,
            len: None,
            seed: None,
            path: None,
        };
        for kv in parts {
            let (key, value) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key {
                "k" => spec.k = Some(value.parse().map_err(|_| bad("bad k"))?),
                "len" => spec.len = Some(value.parse().map_err(|_| bad("bad len"))?),
                "seed" => spec.seed = Some(value.parse().map_err(|_| bad("bad seed"))?),
                "path" => spec.path = Some(PathBuf::from(value)),
                _ => return Err(bad(&format!("unknown key `{key}`"))),
            }
        }
        Ok(spec)
    }

    /// Stable identifier used in report rows.
    pub fn id(&self) -> String {
        let mut id = self.family.name().to_string();
        if let Some(k) = self.k {
            let _ = write!(id, "-k{k}");
        }
        if let Some(len) = self.len {
            let _ = write!(id, "-len{len}");
        }
        if let Some(seed) = self.seed {
            let _ = write!(id, "-seed{seed}");
        }
        if let Some(path) = &self.path {
            let base = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".into());
            let _ = write!(id, "-{base}");
        }
        id
    }
}

const FIB_A: &[u8] = b"a";
const FIB_B: &[u8] = b"b";

fn fibonacci_word(k: usize) -> Result<Vec<u8>, WorkbenchError> {
    // f1 = "b", f2 = "a", f_k = f_{k-1} · f_{k-2}.
    match k {
        0 => Ok(Vec::new()),
        1 => Ok(FIB_B.to_vec()),
        2 => Ok(FIB_A.to_vec()),
        _ => {
            let mut prev = FIB_B.to_vec();
            let mut cur = FIB_A.to_vec();
            for _ in 3..=k {
                if cur.len() + prev.len() > MAX_GEN_LEN {
                    return Err(WorkbenchError::Oversize(cur.len() + prev.len()));
                }
                let next = [cur.as_slice(), prev.as_slice()].concat();
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
    }
}

fn thue_morse(len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| {
            if (i as u64).count_ones() % 2 == 0 {
                b'a'
            } else {
                b'b'
            }
        })
        .collect()
}

fn period_doubling(len: usize) -> Vec<u8> {
    // Morphism a -> ab, b -> aa, iterated from "a".
    let mut cur = vec![b'a'];
    while cur.len() < len {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &c in &cur {
            match c {
                b'a' => next.extend_from_slice(b"ab"),
                _ => next.extend_from_slice(b"aa"),
            }
        }
        cur = next;
    }
    cur.truncate(len);
    cur
}

fn random_binary(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| if rng.gen::<bool>() { b'b' } else { b'a' })
        .collect()
}

/// Generates the family member described by `spec`, `$`-terminated.
pub fn gen_family(spec: &CorpusSpec) -> Result<Text, WorkbenchError> {
    let need_len = |what: &'static str| -> Result<usize, WorkbenchError> {
        let len = spec.len.ok_or(WorkbenchError::MissingParam {
            family: spec.family.name(),
            param: what,
        })?;
        if len > MAX_GEN_LEN {
            return Err(WorkbenchError::Oversize(len));
        }
        Ok(len)
    };
    let content = match spec.family {
        CorpusFamily::Fibonacci => {
            let k = spec.k.ok_or(WorkbenchError::MissingParam {
                family: "fibonacci",
                param: "k",
            })?;
            fibonacci_word(k)?
        }
        CorpusFamily::ThueMorse => thue_morse(need_len("len")?),
        CorpusFamily::PeriodDoubling => period_doubling(need_len("len")?),
        CorpusFamily::Random => random_binary(need_len("len")?, spec.seed.unwrap_or(0)),
        CorpusFamily::File => {
            let path = spec.path.as_ref().ok_or(WorkbenchError::MissingParam {
                family: "file",
                param: "path",
            })?;
            let bytes = std::fs::read(path)?;
            if bytes.len() > MAX_GEN_LEN {
                return Err(WorkbenchError::Oversize(bytes.len()));
            }
            if let Some(pos) = bytes.iter().position(|&b| b == END_MARKER) {
                return Err(WorkbenchError::DollarByte(pos));
            }
            bytes
        }
    };
    Ok(Text::from_content(&content).expect("generated content never contains `$`"))
}

#[derive(Debug, Serialize)]
pub struct BatchRow {
    pub id: String,
    pub n: usize,
    pub sigma: usize,
    pub e: usize,
    pub v1: usize,
    pub g: usize,
    pub max_delta_e: i64,
    pub max_delta_g: i64,
    pub argmax_op: String,
    pub argmax_pos: Option<usize>,
    pub argmax_char: Option<String>,
    pub bounds_all_hold: Option<bool>,
    pub error: Option<String>,
    #[serde(skip)]
    pub scan: Option<ScanReport>,
}

#[derive(Debug, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
}

impl BatchReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.bounds_all_hold.unwrap_or(false) || r.error.is_some())
    }

    pub fn any_violation(&self) -> bool {
        self.rows.iter().any(|r| r.bounds_all_hold == Some(false))
    }
}

fn error_row(id: String, message: String) -> BatchRow {
    BatchRow {
        id,
        n: 0,
        sigma: 0,
        e: 0,
        v1: 0,
        g: 0,
        max_delta_e: 0,
        max_delta_g: 0,
        argmax_op: String::new(),
        argmax_pos: None,
        argmax_char: None,
        bounds_all_hold: None,
        error: Some(message),
        scan: None,
    }
}

/// Runs build → grammar → scan per input. Failures become rows and the
/// batch continues; rows keep input order.
pub fn run_batch(specs: &[CorpusSpec]) -> BatchReport {
    let rows = specs
        .iter()
        .map(|spec| {
            let id = spec.id();
            let text = match gen_family(spec) {
                Ok(t) => t,
                Err(err) => return error_row(id, err.to_string()),
            };
            let report = match scan(&text) {
                Ok(r) => r,
                Err(err) => return error_row(id, err.to_string()),
            };
            let (argmax_op, argmax_pos, argmax_char) = match report.argmax_delta_g {
                Some(op) => (
                    op.kind.short().to_string(),
                    Some(op.pos),
                    op.ch.map(|c| render_bytes(&[c])),
                ),
                None => (String::new(), None, None),
            };
            BatchRow {
                id,
                n: report.n,
                sigma: report.sigma,
                e: report.e,
                v1: report.v1,
                g: report.g,
                max_delta_e: report.max_delta_e,
                max_delta_g: report.max_delta_g,
                argmax_op,
                argmax_pos,
                argmax_char,
                bounds_all_hold: Some(report.all_bounds_hold),
                error: None,
                scan: Some(report),
            }
        })
        .collect();
    BatchReport { rows }
}

/// Fixed-order CSV: id,n,sigma,e,v1,g,max_delta_e,max_delta_g,argmax_op,
/// argmax_pos,argmax_char,bounds_all_hold. Failed rows carry `error` in
/// the last column and zeros elsewhere.
pub fn batch_csv(report: &BatchReport) -> String {
    let mut out = String::from(
        "id,n,sigma,e,v1,g,max_delta_e,max_delta_g,argmax_op,argmax_pos,argmax_char,bounds_all_hold\n",
    );
    for r in &report.rows {
        let hold = match (&r.error, r.bounds_all_hold) {
            (Some(_), _) => "error".to_string(),
            (None, Some(b)) => b.to_string(),
            (None, None) => "error".to_string(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.id,
            r.n,
            r.sigma,
            r.e,
            r.v1,
            r.g,
            r.max_delta_e,
            r.max_delta_g,
            r.argmax_op,
            r.argmax_pos.map(|p| p.to_string()).unwrap_or_default(),
            r.argmax_char.clone().unwrap_or_default(),
            hold
        );
    }
    out
}

fn scan_scenarios_json(report: &ScanReport, full: bool) -> serde_json::Value {
    let scenarios: Vec<serde_json::Value> = report
        .scenarios
        .iter()
        .zip(report.reports.iter())
        .map(|(s, b)| {
            let mut v = serde_json::to_value(s).unwrap();
            if full {
                v["bounds"] = serde_json::to_value(&b.entries).unwrap();
                v["properties"] = serde_json::to_value(&b.properties).unwrap();
            }
            v
        })
        .collect();
    serde_json::Value::Array(scenarios)
}

/// JSON mirror of a scan; `full` adds per-scenario bound entries.
pub fn scan_json(report: &ScanReport, full: bool) -> String {
    let mut v = serde_json::to_value(report).unwrap();
    v["scenarios"] = scan_scenarios_json(report, full);
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

/// Per-scenario CSV for one scan.
pub fn scan_csv(report: &ScanReport) -> String {
    let mut out = String::from("op,pos,char,n,e,v1,g,delta_e,delta_g,bounds_ok\n");
    for s in &report.scenarios {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            s.op.kind.short(),
            s.op.pos,
            s.op.ch.map(|c| render_bytes(&[c])).unwrap_or_default(),
            s.n,
            s.e,
            s.v1,
            s.g,
            s.delta_e,
            s.delta_g,
            s.bounds_ok
        );
    }
    out
}

/// JSON mirror of the batch CSV; `full` embeds each row's scenarios.
pub fn batch_json(report: &BatchReport, full: bool) -> String {
    let rows: Vec<serde_json::Value> = report
        .rows
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).unwrap();
            if let (true, Some(scan)) = (full, &r.scan) {
                v["scenarios"] = scan_scenarios_json(scan, true);
            }
            v
        })
        .collect();
    let doc = json!({
        "rows": rows,
        "summary": {
            "inputs": report.rows.len(),
            "bounds_all_hold": !report.any_violation() && report.rows.iter().all(|r| r.error.is_none()),
        }
    });
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_family() {
        // f3 = "ab", f4 = "aba", f5 = "abaab"
        let spec = CorpusSpec {
            family: CorpusFamily::Fibonacci,
            k: Some(5),
            len: None,
            seed: None,
            path: None,
        };
        assert_eq!(gen_family(&spec).unwrap().bytes(), b"abaab$");
    }

    #[test]
    fn thue_morse_family() {
        let spec = CorpusSpec {
            family: CorpusFamily::ThueMorse,
            k: None,
            len: Some(4),
            seed: None,
            path: None,
        };
        assert_eq!(gen_family(&spec).unwrap().bytes(), b"abba$");
    }

    #[test]
    fn empty_random_is_just_the_marker() {
        let spec = CorpusSpec {
            family: CorpusFamily::Random,
            k: None,
            len: Some(0),
            seed: Some(7),
            path: None,
        };
        assert_eq!(gen_family(&spec).unwrap().bytes(), b"$");
    }

    #[test]
    fn period_doubling_prefix() {
        let spec = CorpusSpec {
            family: CorpusFamily::PeriodDoubling,
            k: None,
            len: Some(8),
            seed: None,
            path: None,
        };
        // a -> ab -> abaa -> abaaabab
        assert_eq!(gen_family(&spec).unwrap().bytes(), b"abaaabab$");
    }

    #[test]
    fn spec_lines_parse() {
        let spec = CorpusSpec::parse_line("fibonacci k=7").unwrap();
        assert_eq!(spec.family, CorpusFamily::Fibonacci);
        assert_eq!(spec.k, Some(7));
        let spec = CorpusSpec::parse_line("random len=50 seed=42").unwrap();
        assert_eq!(spec.id(), "random-len50-seed42");
        assert!(CorpusSpec::parse_line("mystery k=1").is_err());
        assert!(CorpusSpec::parse_line("random length=5").is_err());
    }

    #[test]
    fn empty_batch_is_empty_report() {
        let report = run_batch(&[]);
        assert!(report.rows.is_empty());
        assert!(report.all_bounds_hold());
        let csv = batch_csv(&report);
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn batch_continues_after_failures() {
        let specs = vec![
            CorpusSpec::parse_line("file path=/nonexistent/x").unwrap(),
            CorpusSpec::parse_line("fibonacci k=4").unwrap(),
        ];
        let report = run_batch(&specs);
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows[0].error.is_some());
        assert!(report.rows[1].error.is_none());
        assert_eq!(report.rows[1].n, 4);
    }
}

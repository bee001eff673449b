//! Textual grammar format.
//!
//! ```text
//! CDAWG-GRAMMAR v1
//! rules <count>
//! start R<id>
//! R<id>: <sym> <sym> ...
//! ```
//!
//! One rule line per rule, ascending id. A symbol is either `R<j>` or a
//! quoted terminal `'c'`; inside quotes `\\` and `\'` escape themselves
//! and any byte outside printable ASCII is written `\xHH`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Grammar, Rule, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing or malformed header line")]
    MissingHeader,
    #[error("missing or malformed rules line")]
    BadRuleCount,
    #[error("declared {declared} rules, found {found}")]
    RuleCountMismatch { declared: usize, found: usize },
    #[error("missing or malformed start line")]
    BadStart,
    #[error("duplicate rule id R{0}")]
    DuplicateRule(usize),
    #[error("rule R{0} is referenced but never defined")]
    UndefinedReference(usize),
    #[error("rule R{0} has an empty right-hand side")]
    EmptyRhs(usize),
    #[error("line {0}: malformed rule line")]
    BadRuleLine(usize),
    #[error("line {line}: malformed symbol `{sym}`")]
    BadSymbol { line: usize, sym: String },
}

fn escape_terminal(b: u8) -> String {
    match b {
        b'\\' => "\\\\".to_string(),
        b'\'' => "\\'".to_string(),
        0x20..=0x7e => (b as char).to_string(),
        _ => format!("\\x{:02x}", b),
    }
}

pub fn serialize(g: &Grammar) -> String {
    let mut out = String::new();
    out.push_str("CDAWG-GRAMMAR v1\n");
    out.push_str(&format!("rules {}\n", g.rule_count()));
    out.push_str(&format!("start R{}\n", g.start()));
    for rule in g.rules() {
        out.push_str(&format!("R{}:", rule.id));
        for sym in &rule.rhs {
            match sym {
                Symbol::Nonterminal(id) => out.push_str(&format!(" R{}", id)),
                Symbol::Terminal(b) => out.push_str(&format!(" '{}'", escape_terminal(*b))),
            }
        }
        out.push('\n');
    }
    out
}

fn parse_symbol(tok: &str, line: usize) -> Result<Symbol, ParseError> {
    let bad = || ParseError::BadSymbol {
        line,
        sym: tok.to_string(),
    };
    if let Some(id) = tok.strip_prefix('R') {
        return id.parse().map(Symbol::Nonterminal).map_err(|_| bad());
    }
    let inner = tok
        .strip_prefix('\'')
        .and_then(|s| s.strip_suffix('\''))
        .ok_or_else(bad)?;
    let bytes = inner.as_bytes();
    let value = match bytes {
        [b] if *b != b'\\' && *b != b'\'' => *b,
        [b'\\', b'\\'] => b'\\',
        [b'\\', b'\''] => b'\'',
        [b'\\', b'x', h1, h2] => {
            let hex = [(*h1) as char, (*h2) as char].iter().collect::<String>();
            u8::from_str_radix(&hex, 16).map_err(|_| bad())?
        }
        _ => return Err(bad()),
    };
    Ok(Symbol::Terminal(value))
}

pub fn parse(doc: &str) -> Result<Grammar, ParseError> {
    let mut lines = doc.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header != "CDAWG-GRAMMAR v1" {
        return Err(ParseError::MissingHeader);
    }
    let (_, rules_line) = lines.next().ok_or(ParseError::BadRuleCount)?;
    let declared: usize = rules_line
        .strip_prefix("rules ")
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::BadRuleCount)?;
    let (_, start_line) = lines.next().ok_or(ParseError::BadStart)?;
    let start: usize = start_line
        .strip_prefix("start R")
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::BadStart)?;

    let mut rules: BTreeMap<usize, Rule> = BTreeMap::new();
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let (head, tail) = line
            .split_once(':')
            .ok_or(ParseError::BadRuleLine(lineno))?;
        let id: usize = head
            .strip_prefix('R')
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::BadRuleLine(lineno))?;
        if rules.contains_key(&id) {
            return Err(ParseError::DuplicateRule(id));
        }
        let mut rhs = Vec::new();
        for tok in tail.split_whitespace() {
            rhs.push(parse_symbol(tok, lineno)?);
        }
        if rhs.is_empty() {
            return Err(ParseError::EmptyRhs(id));
        }
        rules.insert(id, Rule { id, rhs, node: None });
    }
    if rules.len() != declared {
        return Err(ParseError::RuleCountMismatch {
            declared,
            found: rules.len(),
        });
    }
    if !rules.contains_key(&start) {
        return Err(ParseError::UndefinedReference(start));
    }
    for rule in rules.values() {
        for sym in &rule.rhs {
            if let Symbol::Nonterminal(id) = sym {
                if !rules.contains_key(id) {
                    return Err(ParseError::UndefinedReference(*id));
                }
            }
        }
    }
    Ok(Grammar::from_parts(rules, start))
}

//! The grammar read off the reversed CDAWG.
//!
//! Every non-source node contributes one production. The right-hand side
//! lists the node's incoming edges by strictly decreasing spelled length
//! (the lengths are pairwise distinct, so the order is total); an edge
//! from the source contributes the first symbol of its label as a
//! terminal, any other edge contributes the nonterminal of its origin.
//! The start rule belongs to the sink and expands to the text. Removing
//! unit rules (right-hand sides of length one, which correspond exactly
//! to nodes of in-degree one) yields the final grammar, whose size is the
//! edge count minus the number of such nodes.

mod serial;

pub use serial::ParseError;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cdawg::{self, Cdawg};
use crate::text::{Text, TextError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(u8),
    Nonterminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: usize,
    pub rhs: Vec<Symbol>,
    /// CDAWG node this rule came from; absent on parsed grammars.
    pub node: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<usize, Rule>,
    start: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("grammar contains a cycle through rule R{0}")]
    Cycle(usize),
    #[error("rule R{0} is referenced but not defined")]
    Undefined(usize),
    #[error("expansion is not a valid text: {0}")]
    BadExpansion(TextError),
}

impl Grammar {
    /// Reads the pre-elimination grammar off a CDAWG. Rule ids are
    /// assigned in depth-first postorder from the sink, children in
    /// right-hand-side order, so every nonterminal reference points to a
    /// smaller id, and the start rule carries the largest.
    pub fn from_cdawg(c: &Cdawg) -> Grammar {
        let source = c.source();
        let rhs_of = |v: usize| -> Vec<Symbol> {
            c.in_edges(v)
                .unwrap()
                .iter()
                .map(|&ei| {
                    let e = &c.edges()[ei];
                    if e.src == source {
                        Symbol::Terminal(c.label_str(ei)[0])
                    } else {
                        Symbol::Nonterminal(e.src)
                    }
                })
                .collect()
        };

        // Postorder ids over the reversed graph, iterative.
        let mut rule_id = vec![0usize; c.node_count()];
        let mut next_id = 1usize;
        let mut state = vec![0u8; c.node_count()]; // 0 new, 1 open, 2 done
        let mut stack = vec![(c.sink(), 0usize)];
        let children: Vec<Vec<usize>> = (0..c.node_count())
            .map(|v| {
                if v == source {
                    Vec::new()
                } else {
                    rhs_of(v)
                        .into_iter()
                        .filter_map(|s| match s {
                            Symbol::Nonterminal(u) => Some(u),
                            Symbol::Terminal(_) => None,
                        })
                        .collect()
                }
            })
            .collect();
        state[c.sink()] = 1;
        while let Some((v, idx)) = stack.pop() {
            if idx < children[v].len() {
                let u = children[v][idx];
                stack.push((v, idx + 1));
                if state[u] == 0 {
                    state[u] = 1;
                    stack.push((u, 0));
                }
            } else {
                rule_id[v] = next_id;
                next_id += 1;
                state[v] = 2;
            }
        }

        let mut rules = BTreeMap::new();
        for v in 0..c.node_count() {
            if v == source || state[v] != 2 {
                continue;
            }
            let rhs = rhs_of(v)
                .into_iter()
                .map(|s| match s {
                    Symbol::Nonterminal(u) => Symbol::Nonterminal(rule_id[u]),
                    t => t,
                })
                .collect();
            rules.insert(
                rule_id[v],
                Rule {
                    id: rule_id[v],
                    rhs,
                    node: Some(v),
                },
            );
        }
        Grammar {
            rules,
            start: rule_id[c.sink()],
        }
    }

    pub(crate) fn from_parts(rules: BTreeMap<usize, Rule>, start: usize) -> Grammar {
        Grammar { rules, start }
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn rule(&self, id: usize) -> Option<&Rule> {
        self.rules.get(&id)
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Total length of all right-hand sides.
    pub fn size(&self) -> usize {
        self.rules.values().map(|r| r.rhs.len()).sum()
    }

    /// Removes every rule with a one-symbol right-hand side, replacing its
    /// uses by that symbol, to fixpoint. The start rule is kept even when
    /// it is a unit rule, which only happens for the one-symbol text `$`.
    pub fn eliminate_units(mut self) -> Grammar {
        loop {
            let unit = self
                .rules
                .values()
                .find(|r| r.rhs.len() == 1 && r.id != self.start)
                .map(|r| (r.id, r.rhs[0]));
            let Some((id, replacement)) = unit else {
                break;
            };
            self.rules.remove(&id);
            for rule in self.rules.values_mut() {
                for sym in rule.rhs.iter_mut() {
                    if *sym == Symbol::Nonterminal(id) {
                        *sym = replacement;
                    }
                }
            }
        }
        self
    }

    /// Full expansion of the start rule.
    pub fn expand(&self) -> Result<Vec<u8>, GrammarError> {
        self.check_acyclic()?;
        let mut out = Vec::new();
        let mut stack: Vec<Symbol> = vec![Symbol::Nonterminal(self.start)];
        while let Some(sym) = stack.pop() {
            match sym {
                Symbol::Terminal(b) => out.push(b),
                Symbol::Nonterminal(id) => {
                    let rule = self.rules.get(&id).ok_or(GrammarError::Undefined(id))?;
                    for s in rule.rhs.iter().rev() {
                        stack.push(*s);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn expand_to_text(&self) -> Result<Text, GrammarError> {
        Text::new(self.expand()?).map_err(GrammarError::BadExpansion)
    }

    fn check_acyclic(&self) -> Result<(), GrammarError> {
        let mut state: BTreeMap<usize, u8> = BTreeMap::new(); // 1 open, 2 done
        for &root in self.rules.keys() {
            if state.contains_key(&root) {
                continue;
            }
            state.insert(root, 1);
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some((id, idx)) = stack.pop() {
                let rule = self.rules.get(&id).ok_or(GrammarError::Undefined(id))?;
                let mut pushed = false;
                let mut i = idx;
                while i < rule.rhs.len() {
                    let sym = rule.rhs[i];
                    i += 1;
                    if let Symbol::Nonterminal(next) = sym {
                        if !self.rules.contains_key(&next) {
                            return Err(GrammarError::Undefined(next));
                        }
                        match state.get(&next).copied().unwrap_or(0) {
                            0 => {
                                stack.push((id, i));
                                state.insert(next, 1);
                                stack.push((next, 0));
                                pushed = true;
                                break;
                            }
                            1 => return Err(GrammarError::Cycle(next)),
                            _ => {}
                        }
                    }
                }
                if !pushed {
                    state.insert(id, 2);
                }
            }
        }
        Ok(())
    }

    pub fn serialize(&self) -> String {
        serial::serialize(self)
    }

    pub fn parse(doc: &str) -> Result<Grammar, ParseError> {
        serial::parse(doc)
    }
}

/// Size of the unit-eliminated grammar of `t`.
pub fn grammar_size(t: &Text) -> usize {
    let c = cdawg::build_via_suffix_tree(t);
    Grammar::from_cdawg(&c).eliminate_units().size()
}

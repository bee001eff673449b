//! CDAWG construction, CDAWG-grammar compression, and an edit-sensitivity
//! laboratory.
//!
//! The crate has five layers:
//!
//! * [`text`] — validated `$`-terminated input strings;
//! * [`oracle`] — brute-force, definition-level string analytics used as
//!   ground truth everywhere else;
//! * [`cdawg`] — two independent CDAWG builders plus search and DOT export;
//! * [`grammar`] — the grammar read off the reversed CDAWG, unit-rule
//!   elimination, expansion and a textual serialization;
//! * [`sensitivity`] — exhaustive single-character-edit enumeration that
//!   recomputes every measure, classifies the affected nodes and checks a
//!   battery of inequalities (B0–B10), headlined by the grammar-growth
//!   bound `G(T') - G(T) <= 4·e(T) + 4`;
//! * [`workbench`] — corpus generation and batch reporting behind the CLI.

#![forbid(unsafe_code)]

pub mod cdawg;
pub mod grammar;
pub mod oracle;
pub mod sensitivity;
pub mod text;
pub mod workbench;

pub use text::Text;

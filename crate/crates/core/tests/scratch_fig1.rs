// Temporary exploration target; removed before completion.

use cdawg_lab::cdawg;
use cdawg_lab::grammar::{grammar_size, Grammar};
use cdawg_lab::oracle;
use cdawg_lab::text::Text;

#[test]
fn explore_fig1_string() {
    let t = Text::new(b"AGAGCGAGCGCGC$".to_vec()).unwrap();
    let m = oracle::maximal_set(&t);
    let strings: Vec<String> = m
        .iter()
        .map(|s| String::from_utf8_lossy(s).into_owned())
        .collect();
    let c1 = cdawg::build(&t);
    let c2 = cdawg::build_via_suffix_tree(&t);
    let m1 = c1.metrics();
    let m2 = c2.metrics();
    let g = Grammar::from_cdawg(&c1);
    let pre = g.size();
    let post = g.eliminate_units().size();
    println!("M(T) ({} elements): {:?}", m.len(), strings);
    println!("definitional: e={} v1={} nodes={}", m1.e, m1.v1, m1.node_count);
    println!("suffix-tree : e={} v1={} nodes={}", m2.e, m2.v1, m2.node_count);
    println!("grammar: pre={} post={} grammar_size={}", pre, post, grammar_size(&t));
    assert_eq!(c1.edge_triples(), c2.edge_triples());
    let n1: Vec<_> = (0..c1.node_count()).map(|v| c1.node_str(v).to_vec()).collect();
    let n2: Vec<_> = (0..c2.node_count()).map(|v| c2.node_str(v).to_vec()).collect();
    assert_eq!(n1, n2);
    let expanded = Grammar::from_cdawg(&c2).eliminate_units().expand().unwrap();
    assert_eq!(expanded, t.bytes());
}

#[test]
fn explore_example1() {
    for s in ["abcabab$", "babcabab$", "abab$", "aab$", "a$", "$"] {
        let t = Text::new(s.as_bytes().to_vec()).unwrap();
        let c = cdawg_lab::cdawg::build(&t);
        let m = c.metrics();
        let g = Grammar::from_cdawg(&c);
        let pre = g.size();
        let post = g.eliminate_units().size();
        println!(
            "{}: e={} v1={} nodes={} pre={} G={}",
            s, m.e, m.v1, m.node_count, pre, post
        );
    }
}

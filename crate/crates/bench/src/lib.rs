//! Fixed workloads shared by the benchmarks.

use dlqs_core::corpus::{random_kb, random_query, rng, Bounds};
use dlqs_core::parser::{parse_kb, parse_query};
use dlqs_core::{KnowledgeBase, Query};

/// A knowledge base with a chain of role assertions and a typed datatype.
pub const CHAIN: &str = "\
concept Person, Parent.
arole hasChild.
crole age.
individual ann, bob, cid.
datatype int { constants zero, one; facets small; }
assert (ann, bob) : hasChild.
assert (bob, cid) : hasChild.
assert ann : Person.
axiom some hasChild . top sub Parent.
axiom Parent sub Person.
axiom some age . int sub Person.
";

pub const CHAIN_QUERY: &str = "Parent(?x) and hasChild(?x, ?y)";

pub fn chain() -> (KnowledgeBase, Query) {
    let kb = parse_kb(CHAIN).expect("fixture parses");
    let q = parse_query(CHAIN_QUERY, &kb.signature).expect("fixture query parses");
    (kb, q)
}

/// `n` seeded (knowledge base, query) pairs under the query corpus bounds.
pub fn corpus(seed: u64, n: usize) -> Vec<(KnowledgeBase, Query)> {
    let mut r = rng(seed);
    let b = Bounds { individuals: 2, concepts: 2, statements: 3, ..Bounds::default() };
    (0..n)
        .map(|_| {
            let kb = random_kb(&mut r, &b);
            let q = random_query(&mut r, &kb.signature, 2);
            (kb, q)
        })
        .collect()
}

#![allow(dead_code)]

use std::path::PathBuf;

use kbsim_core::{Atom, Knowledge, KnowledgeBase, Literal, Property, Term};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Small shared pools so that generated rules overlap often.
const PREDICATES: [&str; 5] = ["p", "q", "r", "s", "t"];
const TERMS: [&str; 4] = ["a", "b", "X", "Y"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

pub fn atom() -> impl Strategy<Value = Atom> {
    (0..PREDICATES.len(), prop::collection::vec(0..TERMS.len(), 0..=2)).prop_map(|(p, args)| {
        Atom::new(PREDICATES[p], args.into_iter().map(|t| Term::parse(TERMS[t]).unwrap()).collect())
            .unwrap()
    })
}

pub fn literal() -> impl Strategy<Value = Literal> {
    (atom(), any::<bool>())
        .prop_map(|(a, neg)| if neg { Literal::negative(a) } else { Literal::positive(a) })
}

/// Body literals as generated (duplicates and order preserved) plus a head.
pub fn rule() -> impl Strategy<Value = (Vec<Literal>, Atom)> {
    (prop::collection::vec(literal(), 1..=6), atom())
}

pub fn property() -> impl Strategy<Value = Property> {
    rule().prop_map(|(body, head)| Property::new(1, body, head).unwrap())
}

pub fn knowledge_base(
    knowledges: std::ops::RangeInclusive<usize>,
    max_properties: usize,
) -> impl Strategy<Value = KnowledgeBase> {
    prop::collection::vec(prop::collection::vec(rule(), 0..=max_properties), knowledges).prop_map(
        |blocks| {
            let ks = blocks
                .into_iter()
                .enumerate()
                .map(|(i, rules)| {
                    let mut k = Knowledge::new(format!("K{}", i + 1)).unwrap();
                    for (body, head) in rules {
                        k.push_rule(body, head).unwrap();
                    }
                    k
                })
                .collect();
            KnowledgeBase::new(ks).unwrap()
        },
    )
}

/// Renders `kb` in a deliberately untidy but valid layout: shuffled
/// whitespace, comments, CRLF, body literals in a non-canonical order and
/// repeated.
pub fn messy_text(kb: &KnowledgeBase, noise: &[u8]) -> String {
    const GAPS: [&str; 6] = [" ", "\n", "\r\n", "  % note\n", "\t", ""];
    let mut i = 0;
    let mut gap = |out: &mut String| {
        let n = noise.get(i % noise.len().max(1)).copied().unwrap_or(0) as usize;
        i += 1;
        out.push_str(GAPS[n % GAPS.len()]);
    };
    let mut out = String::new();
    for k in kb.knowledges() {
        out.push_str("knowledge ");
        out.push_str(k.name());
        gap(&mut out);
        out.push('{');
        for p in k.properties() {
            gap(&mut out);
            out.push_str(&p.head().to_string());
            out.push_str(" :-");
            gap(&mut out);
            let mut body: Vec<String> = p.body().iter().rev().map(ToString::to_string).collect();
            if noise.first().is_some_and(|n| n % 2 == 0) {
                body.push(body[0].clone());
            }
            for (j, lit) in body.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                    gap(&mut out);
                }
                out.push_str(lit);
            }
            out.push('.');
        }
        gap(&mut out);
        out.push_str("}\n");
    }
    out
}

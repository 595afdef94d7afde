mod common;

use std::collections::BTreeSet;

use common::*;
use kbsim_core::oracle::oracle_classify;
use kbsim_core::{
    classify_pair, knowledge_space, literal_set, literals_match, parse_knowledge_base,
    serialize_knowledge_base, source_information, ComparisonMode, MatchMode, Property,
    SimilarityClass,
};
use proptest::prelude::*;

fn modes() -> [ComparisonMode; 4] {
    [
        ComparisonMode::directional(),
        ComparisonMode::symmetric(),
        ComparisonMode::directional().with_matching(MatchMode::Alpha),
        ComparisonMode::symmetric().with_matching(MatchMode::Alpha),
    ]
}

proptest! {
    #[test]
    fn literal_set_ignores_repeated_body((body, head) in rule()) {
        let once = Property::new(1, body.clone(), head.clone()).unwrap();
        let twice = Property::new(1, body.iter().chain(&body).cloned(), head).unwrap();
        prop_assert_eq!(literal_set(&once), literal_set(&twice));
        prop_assert!(literal_set(&once).len() <= once.body().len() + 1);
    }

    #[test]
    fn exact_match_is_an_equivalence(a in literal(), b in literal(), c in literal()) {
        let m = |x, y| literals_match(x, y, MatchMode::Exact);
        prop_assert!(m(&a, &a));
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        if m(&a, &b) && m(&b, &c) {
            prop_assert!(m(&a, &c));
        }
    }

    #[test]
    fn alpha_match_is_reflexive_and_symmetric(a in literal(), b in literal()) {
        prop_assert!(literals_match(&a, &a, MatchMode::Alpha));
        prop_assert_eq!(
            literals_match(&a, &b, MatchMode::Alpha),
            literals_match(&b, &a, MatchMode::Alpha)
        );
        if literals_match(&a, &b, MatchMode::Exact) {
            prop_assert!(literals_match(&a, &b, MatchMode::Alpha));
        }
    }

    #[test]
    fn classifier_agrees_with_oracle(m in property(), n in property()) {
        for mode in modes() {
            prop_assert_eq!(classify_pair(&m, &n, mode), oracle_classify(&m, &n, mode));
        }
    }

    #[test]
    fn equal_takes_precedence(m in property(), extra in prop::collection::vec(literal(), 0..3)) {
        // n's literal set is a superset of m's, so both the universal and the
        // existential condition hold.
        let body = literal_set(&m).into_iter().chain(extra);
        let n = Property::new(1, body, m.head().clone()).unwrap();
        prop_assert_eq!(classify_pair(&m, &n, ComparisonMode::directional()), SimilarityClass::Equal);
    }

    #[test]
    fn exact_directional_follows_set_algebra(m in property(), n in property()) {
        let lm = literal_set(&m);
        let ln = literal_set(&n);
        let shared: BTreeSet<_> = lm.intersection(&ln).collect();
        let expected = if shared.len() == lm.len() {
            SimilarityClass::Equal
        } else if shared.is_empty() {
            SimilarityClass::Different
        } else {
            SimilarityClass::Similar
        };
        prop_assert_eq!(classify_pair(&m, &n, ComparisonMode::directional()), expected);
    }

    #[test]
    fn symmetric_space_is_mirror_symmetric(kb in knowledge_base(2..=4, 4)) {
        let space = knowledge_space(&kb, ComparisonMode::symmetric()).unwrap();
        let n = kb.len();
        prop_assert_eq!(space.len(), n * n - n);
        for (l, r, entry) in space.iter() {
            let mirror = space.entry(r, l).unwrap();
            prop_assert_eq!(entry.signature, mirror.signature);
            for row in 0..entry.matrix.rows() {
                for col in 0..entry.matrix.cols() {
                    prop_assert_eq!(entry.matrix.get(row, col), mirror.matrix.get(col, row));
                }
            }
        }
        prop_assert_eq!(2 * source_information(&space).unwrap().len(), n * n - n);
    }

    #[test]
    fn serialize_is_a_parse_fixed_point(kb in knowledge_base(0..=3, 4), noise in prop::collection::vec(any::<u8>(), 1..16)) {
        let parsed = parse_knowledge_base(&messy_text(&kb, &noise)).unwrap();
        prop_assert_eq!(&parsed, &kb);
        let text = serialize_knowledge_base(&parsed);
        prop_assert_eq!(parse_knowledge_base(&text).unwrap(), parsed);
        prop_assert_eq!(serialize_knowledge_base(&parse_knowledge_base(&text).unwrap()), text);
    }

    #[test]
    fn parse_errors_point_inside_input(text in "[a-zK{}():,.!% \n-]{0,60}") {
        if let Err(errors) = parse_knowledge_base(&text) {
            prop_assert!(!errors.is_empty());
            let lines: Vec<&str> = text.split('\n').collect();
            for e in errors {
                prop_assert!(e.span.start <= e.span.end && e.span.end <= text.len());
                prop_assert!(e.line >= 1 && e.line <= lines.len(), "{:?}", e);
                prop_assert!(e.column >= 1 && e.column <= lines[e.line - 1].chars().count(), "{:?}", e);
            }
        }
    }

    #[test]
    fn parsing_is_deterministic(text in "[a-zK{}():,.!% \n]{0,60}") {
        prop_assert_eq!(parse_knowledge_base(&text), parse_knowledge_base(&text));
    }
}

//! Naive reference classifier used by the test suites to cross-check the
//! engine. Shares only the model types and the `SimilarityClass` enum with
//! the engine: literal collection, equality, renaming and counting are all
//! re-done here with plain nested loops.

use crate::engine::{ComparisonMode, Direction, SimilarityClass};
use crate::model::{KnowledgeBase, MatchMode, Property};

struct Sym<'a> {
    negative: bool,
    predicate: &'a str,
    /// (name, is_variable)
    args: Vec<(&'a str, bool)>,
}

fn sym_exact_eq(a: &Sym<'_>, b: &Sym<'_>) -> bool {
    if a.negative != b.negative || a.predicate != b.predicate || a.args.len() != b.args.len() {
        return false;
    }
    for k in 0..a.args.len() {
        if a.args[k] != b.args[k] {
            return false;
        }
    }
    true
}

fn sym_alpha_eq(a: &Sym<'_>, b: &Sym<'_>) -> bool {
    if a.negative != b.negative || a.predicate != b.predicate || a.args.len() != b.args.len() {
        return false;
    }
    let mut forward: Vec<(&str, &str)> = Vec::new();
    let mut backward: Vec<(&str, &str)> = Vec::new();
    for k in 0..a.args.len() {
        let (x, x_var) = a.args[k];
        let (y, y_var) = b.args[k];
        if x_var != y_var {
            return false;
        }
        if !x_var {
            if x != y {
                return false;
            }
            continue;
        }
        let mut known = false;
        for &(from, to) in &forward {
            if from == x {
                if to != y {
                    return false;
                }
                known = true;
            }
        }
        for &(from, to) in &backward {
            if from == y && to != x {
                return false;
            }
        }
        if !known {
            forward.push((x, y));
            backward.push((y, x));
        }
    }
    true
}

/// Body literals followed by the head, duplicates dropped by pairwise scan.
fn collect(p: &Property) -> Vec<Sym<'_>> {
    let mut raw = Vec::new();
    for lit in p.body() {
        raw.push(Sym {
            negative: lit.is_negative(),
            predicate: lit.atom().predicate(),
            args: lit.atom().args().iter().map(|t| (t.name(), t.is_variable())).collect(),
        });
    }
    raw.push(Sym {
        negative: false,
        predicate: p.head().predicate(),
        args: p.head().args().iter().map(|t| (t.name(), t.is_variable())).collect(),
    });

    let mut out: Vec<Sym<'_>> = Vec::new();
    for s in raw {
        let mut dup = false;
        for o in &out {
            if sym_exact_eq(&s, o) {
                dup = true;
            }
        }
        if !dup {
            out.push(s);
        }
    }
    out
}

fn one_way(left: &[Sym<'_>], right: &[Sym<'_>], matching: MatchMode) -> SimilarityClass {
    let mut matched = 0;
    for l in left {
        let mut found = false;
        for r in right {
            let same = match matching {
                MatchMode::Exact => sym_exact_eq(l, r),
                MatchMode::Alpha => sym_alpha_eq(l, r),
            };
            if same {
                found = true;
            }
        }
        if found {
            matched += 1;
        }
    }
    if matched == left.len() {
        SimilarityClass::Equal
    } else if matched == 0 {
        SimilarityClass::Different
    } else {
        SimilarityClass::Similar
    }
}

pub fn oracle_classify(p_m: &Property, p_n: &Property, mode: ComparisonMode) -> SimilarityClass {
    let left = collect(p_m);
    let right = collect(p_n);
    let forward = one_way(&left, &right, mode.matching);
    if mode.direction == Direction::Directional {
        return forward;
    }
    let backward = one_way(&right, &left, mode.matching);
    if forward == SimilarityClass::Equal && backward == SimilarityClass::Equal {
        SimilarityClass::Equal
    } else if forward == SimilarityClass::Different && backward == SimilarityClass::Different {
        SimilarityClass::Different
    } else {
        SimilarityClass::Similar
    }
}

/// One ordered knowledge pair: `cells[i][j]` compares left property `j + 1`
/// against right property `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleEntry {
    pub left: String,
    pub right: String,
    pub cells: Vec<Vec<SimilarityClass>>,
}

/// Every ordered pair of distinct knowledges, left-major.
pub fn oracle_space(kb: &KnowledgeBase, mode: ComparisonMode) -> Vec<OracleEntry> {
    let ks = kb.knowledges();
    let mut out = Vec::new();
    for l in 0..ks.len() {
        for r in 0..ks.len() {
            if l == r {
                continue;
            }
            let mut cells = Vec::new();
            for pr in ks[r].properties() {
                let mut row = Vec::new();
                for pl in ks[l].properties() {
                    row.push(oracle_classify(pl, pr, mode));
                }
                cells.push(row);
            }
            out.push(OracleEntry {
                left: ks[l].name().to_string(),
                right: ks[r].name().to_string(),
                cells,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_knowledge_base;

    fn props(text: &str) -> Vec<Property> {
        let kb = parse_knowledge_base(&format!("knowledge T {{ {text} }}")).unwrap();
        kb.knowledges()[0].properties().to_vec()
    }

    #[test]
    fn hand_counted_cases() {
        let p = props("p :- a, b. p :- a, b. z :- x, y. h :- a, c, d.");
        let d = ComparisonMode::directional();
        assert_eq!(oracle_classify(&p[0], &p[1], d), SimilarityClass::Equal);
        assert_eq!(oracle_classify(&p[0], &p[2], d), SimilarityClass::Different);
        // {a, c, d, h} against {a, b, p}: 1 of 4 found
        assert_eq!(oracle_classify(&p[3], &p[0], d), SimilarityClass::Similar);
    }

    #[test]
    fn alpha_renaming_must_be_bijective() {
        let p = props("h :- q(X, Y). h :- q(Z, Z). h :- q(A, B).");
        let alpha = ComparisonMode::directional().with_matching(MatchMode::Alpha);
        assert_eq!(oracle_classify(&p[0], &p[1], alpha), SimilarityClass::Similar);
        assert_eq!(oracle_classify(&p[1], &p[0], alpha), SimilarityClass::Similar);
        assert_eq!(oracle_classify(&p[0], &p[2], alpha), SimilarityClass::Equal);
    }

    #[test]
    fn space_shape() {
        let kb = parse_knowledge_base("knowledge A { a :- x. } knowledge B { a :- x. }").unwrap();
        let space = oracle_space(&kb, ComparisonMode::directional());
        assert_eq!(space.len(), 2);
        assert!(space.iter().all(|e| e.cells == vec![vec![SimilarityClass::Equal]]));
    }
}

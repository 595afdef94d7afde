//! Seeded synthetic knowledge bases for benchmarks.

use kbsim_core::{Atom, Knowledge, KnowledgeBase, Literal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct SyntheticShape {
    pub knowledges: usize,
    pub properties: usize,
    pub max_body: usize,
    /// Number of distinct body predicates shared by all knowledges.
    pub symbol_pool: usize,
    pub head_pool: usize,
}

impl SyntheticShape {
    /// 100 knowledges of 50 rules each.
    pub fn desk_scale() -> Self {
        SyntheticShape { knowledges: 100, properties: 50, max_body: 6, symbol_pool: 40, head_pool: 20 }
    }
}

pub fn synthetic_kb(shape: SyntheticShape, seed: u64) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let knowledges = (0..shape.knowledges)
        .map(|k| {
            let mut knowledge = Knowledge::new(format!("K{}", k + 1)).unwrap();
            for _ in 0..shape.properties {
                let body_len = rng.gen_range(1..=shape.max_body);
                let body: Vec<Literal> = (0..body_len)
                    .map(|_| {
                        let atom =
                            Atom::propositional(format!("q{}", rng.gen_range(0..shape.symbol_pool)))
                                .unwrap();
                        if rng.gen_bool(0.3) {
                            Literal::negative(atom)
                        } else {
                            Literal::positive(atom)
                        }
                    })
                    .collect();
                let head = Atom::propositional(format!("h{}", rng.gen_range(0..shape.head_pool))).unwrap();
                knowledge.push_rule(body, head).unwrap();
            }
            knowledge
        })
        .collect();
    KnowledgeBase::new(knowledges).unwrap()
}

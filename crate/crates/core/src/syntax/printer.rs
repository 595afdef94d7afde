use std::fmt::Write;

use crate::model::KnowledgeBase;

/// Canonical text: one block per knowledge in stored order, one rule per
/// line, body literals in canonical order (positive before negative, then by
/// predicate and arguments). Blocks are separated by a blank line.
pub fn serialize_knowledge_base(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for (i, knowledge) in kb.knowledges().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "knowledge {} {{", knowledge.name()).unwrap();
        for property in knowledge.properties() {
            writeln!(out, "  {property}").unwrap();
        }
        out.push_str("}\n");
    }
    out
}

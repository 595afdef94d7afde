//! Qualitative similarity between rule-based knowledges.
//!
//! A knowledge is a named set of rules (`body ⊢ head`). Every pair of rules
//! from two knowledges is classified as equal, similar or different by
//! looking up the literals of one rule among the literals of the other. The
//! resulting grids, their class counts, and the taxonomy of which classes
//! occur are what this crate computes.
//!
//! ```
//! use kbsim_core::{parse_knowledge_base, property_space, cardinality_signature, ComparisonMode};
//!
//! let kb = parse_knowledge_base("knowledge A { a :- x. } knowledge B { a :- x, y. }").unwrap();
//! let [a, b] = kb.knowledges() else { unreachable!() };
//! let m = property_space(a, b, ComparisonMode::directional()).unwrap();
//! assert_eq!(cardinality_signature(&m).equal, 1);
//! ```

pub mod category;
pub mod engine;
pub mod model;
pub mod oracle;
pub mod report;
pub mod syntax;

pub use category::{
    category_configuration, is_identifiable, is_identifiable_with, super_category,
    CategoryConfiguration, IdentifiabilityRule, SuperCase, SuperCategory,
};
pub use engine::{
    cardinality_signature, classify_pair, knowledge_space, property_space, source_information,
    CardinalitySignature, ComparisonMode, Direction, KnowledgeSimilaritySpace,
    PropertyComparisonMatrix, SimilarityClass, SimilarityError, SourceInformation, SpaceEntry,
};
pub use model::{
    literal_set, literals_match, Atom, Knowledge, KnowledgeBase, Literal, MatchMode, ModelError,
    Polarity, Property, Term, TermKind,
};
pub use syntax::{
    parse_knowledge_base, parse_literal, parse_with_warnings, serialize_knowledge_base, ParseError,
    ParseErrorKind, ParseWarning, Parsed, SourceSpan,
};

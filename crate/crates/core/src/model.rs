//! Immutable domain types: terms, atoms, literals, properties (rules),
//! knowledges and knowledge bases.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when constructing model values directly through the API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier `{0}`: only ASCII letters, digits and `_` are allowed")]
    BadIdentifier(String),
    #[error("constant `{0}` must start with a lowercase letter or a digit")]
    BadConstant(String),
    #[error("variable `{0}` must start with an uppercase letter")]
    BadVariable(String),
    #[error("predicate `{0}` must start with a lowercase letter or a digit")]
    BadPredicate(String),
    #[error("property body must contain at least one literal")]
    EmptyBody,
    #[error("duplicate knowledge name `{0}`")]
    DuplicateKnowledge(String),
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn check_ident(name: &str) -> Result<(), ModelError> {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() && chars.all(is_ident_char) => Ok(()),
        _ => Err(ModelError::BadIdentifier(name.to_string())),
    }
}

fn starts_lower_or_digit(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_lowercase() || c.is_ascii_digit())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    Constant,
    Variable,
}

/// An argument of an atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    kind: TermKind,
    name: String,
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        check_ident(&name)?;
        if !starts_lower_or_digit(&name) {
            return Err(ModelError::BadConstant(name));
        }
        Ok(Term { kind: TermKind::Constant, name })
    }

    pub fn variable(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        check_ident(&name)?;
        if !name.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(ModelError::BadVariable(name));
        }
        Ok(Term { kind: TermKind::Variable, name })
    }

    /// Classifies `name` by its first character (Prolog convention).
    pub fn parse(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            Term::variable(name)
        } else {
            Term::constant(name)
        }
    }

    pub fn kind(&self) -> TermKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_variable(&self) -> bool {
        self.kind == TermKind::Variable
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A predicate applied to an ordered list of terms. Arity is part of identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    predicate: String,
    args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Result<Self, ModelError> {
        let predicate = predicate.into();
        check_ident(&predicate)?;
        if !starts_lower_or_digit(&predicate) {
            return Err(ModelError::BadPredicate(predicate));
        }
        Ok(Atom { predicate, args })
    }

    /// A zero-arity atom.
    pub fn propositional(predicate: impl Into<String>) -> Result<Self, ModelError> {
        Atom::new(predicate, Vec::new())
    }

    pub fn predicate(&self) -> &str {
        &self.predicate
    }

    pub fn args(&self) -> &[Term] {
        &self.args
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Positive sorts before negative, which fixes the canonical body order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A possibly negated atom. Negation is syntactic: `q` and `!q` are simply
/// different literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    polarity: Polarity,
    atom: Atom,
}

impl Literal {
    pub fn new(polarity: Polarity, atom: Atom) -> Self {
        Literal { polarity, atom }
    }

    pub fn positive(atom: Atom) -> Self {
        Literal::new(Polarity::Positive, atom)
    }

    pub fn negative(atom: Atom) -> Self {
        Literal::new(Polarity::Negative, atom)
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_negative(&self) -> bool {
        self.polarity == Polarity::Negative
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// One rule `body ⊢ head`. The body is a non-empty set of literals and the
/// head is always a positive atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Property {
    index: usize,
    body: BTreeSet<Literal>,
    head: Atom,
}

impl Property {
    /// `index` is the 1-based position inside the owning knowledge.
    pub fn new(
        index: usize,
        body: impl IntoIterator<Item = Literal>,
        head: Atom,
    ) -> Result<Self, ModelError> {
        let body: BTreeSet<Literal> = body.into_iter().collect();
        if body.is_empty() {
            return Err(ModelError::EmptyBody);
        }
        Ok(Property { index, body, head })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Body literals in canonical order.
    pub fn body(&self) -> &BTreeSet<Literal> {
        &self.body
    }

    pub fn head(&self) -> &Atom {
        &self.head
    }

    /// Same rule content, but renumbered.
    pub(crate) fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :- ", self.head)?;
        for (i, lit) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
        }
        f.write_str(".")
    }
}

/// A named, ordered collection of properties with indices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Knowledge {
    name: String,
    properties: Vec<Property>,
}

impl Knowledge {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        check_ident(&name)?;
        Ok(Knowledge { name, properties: Vec::new() })
    }

    /// Appends a rule, assigning it the next index.
    pub fn push_rule(
        &mut self,
        body: impl IntoIterator<Item = Literal>,
        head: Atom,
    ) -> Result<&Property, ModelError> {
        let property = Property::new(self.properties.len() + 1, body, head)?;
        self.properties.push(property);
        Ok(self.properties.last().expect("just pushed"))
    }

    /// Appends an existing property, renumbering it to keep indices gapless.
    pub fn push_property(&mut self, property: Property) -> &Property {
        let index = self.properties.len() + 1;
        self.properties.push(property.with_index(index));
        self.properties.last().expect("just pushed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty()
    }
}

/// An ordered collection of uniquely named knowledges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct KnowledgeBase {
    knowledges: Vec<Knowledge>,
}

impl KnowledgeBase {
    pub fn new(knowledges: Vec<Knowledge>) -> Result<Self, ModelError> {
        let mut seen = HashSet::new();
        for k in &knowledges {
            if !seen.insert(k.name()) {
                return Err(ModelError::DuplicateKnowledge(k.name().to_string()));
            }
        }
        Ok(KnowledgeBase { knowledges })
    }

    pub fn knowledges(&self) -> &[Knowledge] {
        &self.knowledges
    }

    /// Case-sensitive lookup by name.
    pub fn get(&self, name: &str) -> Option<&Knowledge> {
        self.knowledges.iter().find(|k| k.name() == name)
    }

    pub fn len(&self) -> usize {
        self.knowledges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knowledges.is_empty()
    }

    pub fn property_count(&self) -> usize {
        self.knowledges.iter().map(Knowledge::len).sum()
    }
}

/// How two literals are decided to be "the same".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    /// Syntactic equality, polarity included.
    #[default]
    Exact,
    /// Equality up to a consistent (bijective) renaming of variables.
    Alpha,
}

/// The body literals plus the head as a positive literal.
pub fn literal_set(p: &Property) -> BTreeSet<Literal> {
    let mut set = p.body.clone();
    set.insert(Literal::positive(p.head.clone()));
    set
}

pub fn literals_match(a: &Literal, b: &Literal, mode: MatchMode) -> bool {
    match mode {
        MatchMode::Exact => a == b,
        MatchMode::Alpha => alpha_equivalent(a, b),
    }
}

fn alpha_equivalent(a: &Literal, b: &Literal) -> bool {
    if a.polarity != b.polarity
        || a.atom.predicate != b.atom.predicate
        || a.atom.arity() != b.atom.arity()
    {
        return false;
    }
    // Renaming map as (left, right) pairs; arities are tiny so a scan is fine.
    let mut renaming: Vec<(&str, &str)> = Vec::new();
    for (x, y) in a.atom.args.iter().zip(&b.atom.args) {
        match (x.kind, y.kind) {
            (TermKind::Constant, TermKind::Constant) => {
                if x.name != y.name {
                    return false;
                }
            }
            (TermKind::Variable, TermKind::Variable) => {
                match renaming.iter().find(|(l, r)| *l == x.name || *r == y.name) {
                    Some(&(l, r)) => {
                        if l != x.name || r != y.name {
                            return false;
                        }
                    }
                    None => renaming.push((&x.name, &y.name)),
                }
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: &str, args: &[&str]) -> Atom {
        Atom::new(p, args.iter().map(|a| Term::parse(*a).unwrap()).collect()).unwrap()
    }

    fn pos(p: &str) -> Literal {
        Literal::positive(atom(p, &[]))
    }

    fn neg(p: &str) -> Literal {
        Literal::negative(atom(p, &[]))
    }

    #[test]
    fn literal_set_adds_head() {
        let p = Property::new(1, [pos("q1"), pos("q2")], atom("p1", &[])).unwrap();
        let set: Vec<_> = literal_set(&p).into_iter().collect();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&pos("p1")));
        assert!(set.contains(&pos("q1")));
        assert!(set.contains(&pos("q2")));
    }

    #[test]
    fn literal_set_negated_singleton_body() {
        let p = Property::new(1, [neg("q1")], atom("p", &[])).unwrap();
        let set = literal_set(&p);
        assert_eq!(set, BTreeSet::from([neg("q1"), pos("p")]));
    }

    #[test]
    fn duplicate_body_literals_collapse() {
        let p = Property::new(1, [pos("q1"), pos("q1")], atom("p", &[])).unwrap();
        assert_eq!(p.body().len(), 1);
        assert_eq!(literal_set(&p), BTreeSet::from([pos("q1"), pos("p")]));
    }

    #[test]
    fn head_equal_to_body_literal_is_counted_once() {
        let p = Property::new(1, [pos("p")], atom("p", &[])).unwrap();
        assert_eq!(literal_set(&p).len(), 1);
    }

    #[test]
    fn empty_body_rejected() {
        assert_eq!(
            Property::new(1, Vec::new(), atom("p", &[])),
            Err(ModelError::EmptyBody)
        );
    }

    #[test]
    fn exact_matching() {
        assert!(literals_match(&pos("q1"), &pos("q1"), MatchMode::Exact));
        assert!(!literals_match(&pos("q1"), &neg("q1"), MatchMode::Exact));
        assert!(!literals_match(&pos("q1"), &neg("q1"), MatchMode::Alpha));
    }

    #[test]
    fn alpha_matching_renames_variables() {
        let a = Literal::positive(atom("p", &["X", "a"]));
        let b = Literal::positive(atom("p", &["Y", "a"]));
        assert!(literals_match(&a, &b, MatchMode::Alpha));
        assert!(!literals_match(&a, &b, MatchMode::Exact));
    }

    #[test]
    fn alpha_matching_is_consistent() {
        let xy = Literal::positive(atom("p", &["X", "Y"]));
        let zz = Literal::positive(atom("p", &["Z", "Z"]));
        let ww = Literal::positive(atom("p", &["W", "W"]));
        let xa = Literal::positive(atom("p", &["X", "a"]));
        let xb = Literal::positive(atom("p", &["X", "b"]));
        assert!(!literals_match(&xy, &zz, MatchMode::Alpha));
        assert!(!literals_match(&zz, &xy, MatchMode::Alpha));
        assert!(literals_match(&zz, &ww, MatchMode::Alpha));
        assert!(!literals_match(&xa, &xb, MatchMode::Alpha));
        // variable never matches constant
        let ya = Literal::positive(atom("p", &["a", "a"]));
        assert!(!literals_match(&xa, &ya, MatchMode::Alpha));
    }

    #[test]
    fn arity_is_part_of_identity() {
        let p1 = Literal::positive(atom("p", &["a"]));
        let p2 = Literal::positive(atom("p", &["a", "b"]));
        assert!(!literals_match(&p1, &p2, MatchMode::Exact));
        assert!(!literals_match(&p1, &p2, MatchMode::Alpha));
    }

    #[test]
    fn identifier_rules() {
        assert!(Term::constant("a1").is_ok());
        assert!(Term::constant("1a").is_ok());
        assert_eq!(Term::constant("A"), Err(ModelError::BadConstant("A".into())));
        assert_eq!(Term::variable("x"), Err(ModelError::BadVariable("x".into())));
        assert!(Term::variable("X_1").is_ok());
        assert!(matches!(Term::parse("a-b"), Err(ModelError::BadIdentifier(_))));
        assert!(matches!(Atom::propositional(""), Err(ModelError::BadIdentifier(_))));
        assert!(matches!(Atom::propositional("P"), Err(ModelError::BadPredicate(_))));
        assert!(matches!(Knowledge::new("_k"), Err(ModelError::BadIdentifier(_))));
    }

    #[test]
    fn knowledge_indices_are_gapless() {
        let mut k = Knowledge::new("K").unwrap();
        k.push_rule([pos("q")], atom("p", &[])).unwrap();
        let stray = Property::new(9, [pos("r")], atom("p", &[])).unwrap();
        k.push_property(stray);
        let idx: Vec<_> = k.properties().iter().map(Property::index).collect();
        assert_eq!(idx, vec![1, 2]);
    }

    #[test]
    fn duplicate_knowledge_names_rejected() {
        let a = Knowledge::new("K").unwrap();
        let b = Knowledge::new("K").unwrap();
        let c = Knowledge::new("k").unwrap();
        assert_eq!(
            KnowledgeBase::new(vec![a.clone(), b]),
            Err(ModelError::DuplicateKnowledge("K".into()))
        );
        assert!(KnowledgeBase::new(vec![a, c]).is_ok());
    }

    #[test]
    fn display_is_canonical() {
        let p = Property::new(
            1,
            [neg("a"), Literal::positive(atom("z", &["X", "c"])), pos("b")],
            atom("h", &["X"]),
        )
        .unwrap();
        assert_eq!(p.to_string(), "h(X) :- b, z(X, c), !a.");
    }
}

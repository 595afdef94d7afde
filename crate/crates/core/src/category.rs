//! Category configurations (which class sets are non-empty), identifiability,
//! and super-categories.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{CardinalitySignature, SimilarityClass, SimilarityError};

/// Which of the equal / similar / different sets are non-empty. There are
/// exactly eight of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CategoryConfiguration {
    pub equal: bool,
    pub similar: bool,
    pub different: bool,
}

impl CategoryConfiguration {
    pub const fn new(equal: bool, similar: bool, different: bool) -> Self {
        CategoryConfiguration { equal, similar, different }
    }

    /// All eight configurations, from all-empty to all-present.
    pub fn all() -> [CategoryConfiguration; 8] {
        std::array::from_fn(|bits| {
            CategoryConfiguration::new(bits & 4 != 0, bits & 2 != 0, bits & 1 != 0)
        })
    }

    pub fn contains(&self, class: SimilarityClass) -> bool {
        match class {
            SimilarityClass::Equal => self.equal,
            SimilarityClass::Similar => self.similar,
            SimilarityClass::Different => self.different,
        }
    }

    /// Non-empty classes in the order equal, similar, different.
    pub fn members(&self) -> Vec<SimilarityClass> {
        SimilarityClass::ALL.into_iter().filter(|c| self.contains(*c)).collect()
    }

    pub fn non_empty_count(&self) -> usize {
        self.members().len()
    }
}

pub fn category_configuration(sig: &CardinalitySignature) -> CategoryConfiguration {
    CategoryConfiguration::new(sig.equal > 0, sig.similar > 0, sig.different > 0)
}

/// How strictly "non-empty" is read when deciding identifiability.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentifiabilityRule {
    /// The union of the three sets is non-empty (7 configurations qualify).
    #[default]
    Union,
    /// Every one of the three sets is non-empty (1 configuration qualifies).
    Strict,
}

/// True unless all three class sets are empty.
pub fn is_identifiable(cfg: &CategoryConfiguration) -> bool {
    is_identifiable_with(cfg, IdentifiabilityRule::Union)
}

pub fn is_identifiable_with(cfg: &CategoryConfiguration, rule: IdentifiabilityRule) -> bool {
    match rule {
        IdentifiabilityRule::Union => cfg.equal || cfg.similar || cfg.different,
        IdentifiabilityRule::Strict => cfg.equal && cfg.similar && cfg.different,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuperCase {
    /// Exactly one class set is non-empty.
    Case1,
    /// Exactly two.
    Case2,
    /// All three.
    Case3,
}

impl SuperCase {
    pub fn number(self) -> u8 {
        match self {
            SuperCase::Case1 => 1,
            SuperCase::Case2 => 2,
            SuperCase::Case3 => 3,
        }
    }
}

impl fmt::Display for SuperCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperCategory {
    pub case: SuperCase,
    pub members: Vec<SimilarityClass>,
}

/// Groups an identifiable configuration by how many class sets survive.
pub fn super_category(cfg: &CategoryConfiguration) -> Result<SuperCategory, SimilarityError> {
    let members = cfg.members();
    let case = match members.len() {
        0 => return Err(SimilarityError::NotIdentifiable),
        1 => SuperCase::Case1,
        2 => SuperCase::Case2,
        _ => SuperCase::Case3,
    };
    Ok(SuperCategory { case, members })
}

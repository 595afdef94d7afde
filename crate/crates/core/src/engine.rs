//! Three-way classification of property pairs and the pairwise spaces built
//! from it.
//!
//! Comparing a left property `m` against a right property `n` looks up every
//! literal of `literal_set(m)` in `literal_set(n)`:
//!
//! * all found: [`SimilarityClass::Equal`]
//! * some found: [`SimilarityClass::Similar`]
//! * none found: [`SimilarityClass::Different`]
//!
//! That is the directional reading. The symmetric reading runs both
//! directions and is `Equal` only when both are, `Different` only when both
//! are, and `Similar` otherwise. Pair grids for a whole knowledge base use the
//! symmetric reading by default since only then is the grid redundant across
//! its diagonal.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{literal_set, literals_match, Knowledge, KnowledgeBase, Literal, MatchMode, Property};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("cannot compare knowledge `{0}` with itself")]
    SameKnowledge(String),
    #[error("a knowledge similarity space needs at least 2 knowledges, found {0}")]
    TooFewKnowledges(usize),
    #[error("source information requires a space computed in symmetric mode")]
    DirectionalSpace,
    #[error("the all-empty configuration has no super-category")]
    NotIdentifiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityClass {
    Equal,
    Similar,
    Different,
}

impl SimilarityClass {
    pub const ALL: [SimilarityClass; 3] =
        [SimilarityClass::Equal, SimilarityClass::Similar, SimilarityClass::Different];

    /// Class of a left literal set with `matched` of its `total` literals found.
    fn from_overlap(matched: usize, total: usize) -> Self {
        if matched == total {
            SimilarityClass::Equal
        } else if matched > 0 {
            SimilarityClass::Similar
        } else {
            SimilarityClass::Different
        }
    }

    fn symmetrize(self, other: Self) -> Self {
        match (self, other) {
            (SimilarityClass::Equal, SimilarityClass::Equal) => SimilarityClass::Equal,
            (SimilarityClass::Different, SimilarityClass::Different) => SimilarityClass::Different,
            _ => SimilarityClass::Similar,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SimilarityClass::Equal => "equal",
            SimilarityClass::Similar => "similar",
            SimilarityClass::Different => "different",
        }
    }

    /// ASCII glyph used in text tables.
    pub fn glyph(self) -> char {
        match self {
            SimilarityClass::Equal => '=',
            SimilarityClass::Similar => '~',
            SimilarityClass::Different => '#',
        }
    }
}

impl fmt::Display for SimilarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Directional,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComparisonMode {
    pub matching: MatchMode,
    pub direction: Direction,
}

impl ComparisonMode {
    /// Exact matching, left literals sought in the right set.
    pub const fn directional() -> Self {
        ComparisonMode { matching: MatchMode::Exact, direction: Direction::Directional }
    }

    /// Exact matching, both directions.
    pub const fn symmetric() -> Self {
        ComparisonMode { matching: MatchMode::Exact, direction: Direction::Symmetric }
    }

    pub const fn with_matching(self, matching: MatchMode) -> Self {
        ComparisonMode { matching, ..self }
    }
}

impl fmt::Display for ComparisonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let matching = match self.matching {
            MatchMode::Exact => "exact",
            MatchMode::Alpha => "alpha",
        };
        let direction = match self.direction {
            Direction::Directional => "directional",
            Direction::Symmetric => "symmetric",
        };
        write!(f, "{matching}, {direction}")
    }
}

fn count_found(left: &[Literal], right: &[Literal], matching: MatchMode) -> usize {
    left.iter()
        .filter(|l| right.iter().any(|r| literals_match(l, r, matching)))
        .count()
}

fn classify_sets(left: &[Literal], right: &[Literal], mode: ComparisonMode) -> SimilarityClass {
    let forward = SimilarityClass::from_overlap(count_found(left, right, mode.matching), left.len());
    match mode.direction {
        Direction::Directional => forward,
        Direction::Symmetric => {
            let backward =
                SimilarityClass::from_overlap(count_found(right, left, mode.matching), right.len());
            forward.symmetrize(backward)
        }
    }
}

/// Classifies the left property `p_m` against the right property `p_n`.
pub fn classify_pair(p_m: &Property, p_n: &Property, mode: ComparisonMode) -> SimilarityClass {
    let left: Vec<Literal> = literal_set(p_m).into_iter().collect();
    let right: Vec<Literal> = literal_set(p_n).into_iter().collect();
    classify_sets(&left, &right, mode)
}

/// Literal sets of every property of a knowledge, in a form cheap to compare.
enum Prepared {
    /// Sorted, deduplicated literal ids from a shared interner.
    Exact(Vec<Vec<u32>>),
    Alpha(Vec<Vec<Literal>>),
}

impl Prepared {
    fn len(&self) -> usize {
        match self {
            Prepared::Exact(v) => v.len(),
            Prepared::Alpha(v) => v.len(),
        }
    }
}

struct Interner(HashMap<Literal, u32>);

impl Interner {
    fn new() -> Self {
        Interner(HashMap::new())
    }

    fn prepare(&mut self, k: &Knowledge, matching: MatchMode) -> Prepared {
        match matching {
            MatchMode::Exact => Prepared::Exact(
                k.properties()
                    .iter()
                    .map(|p| {
                        let mut ids: Vec<u32> = literal_set(p)
                            .into_iter()
                            .map(|lit| {
                                let next = self.0.len() as u32;
                                *self.0.entry(lit).or_insert(next)
                            })
                            .collect();
                        ids.sort_unstable();
                        ids
                    })
                    .collect(),
            ),
            MatchMode::Alpha => Prepared::Alpha(
                k.properties().iter().map(|p| literal_set(p).into_iter().collect()).collect(),
            ),
        }
    }
}

fn intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn classify_ids(left: &[u32], right: &[u32], direction: Direction) -> SimilarityClass {
    let shared = intersection_len(left, right);
    let forward = SimilarityClass::from_overlap(shared, left.len());
    match direction {
        Direction::Directional => forward,
        Direction::Symmetric => forward.symmetrize(SimilarityClass::from_overlap(shared, right.len())),
    }
}

/// The grid of classes for every property pair of two knowledges.
///
/// Rows follow the right knowledge's properties and columns the left's:
/// `get(i, j)` is the class of left property `j + 1` against right property
/// `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyComparisonMatrix {
    left: String,
    right: String,
    rows: usize,
    cols: usize,
    cells: Vec<SimilarityClass>,
}

impl PropertyComparisonMatrix {
    /// Builds a matrix from row-major cells. Panics if the cell count is not `rows * cols`.
    pub fn from_cells(
        left: impl Into<String>,
        right: impl Into<String>,
        rows: usize,
        cols: usize,
        cells: Vec<SimilarityClass>,
    ) -> Self {
        assert_eq!(cells.len(), rows * cols, "cell count must equal rows * cols");
        PropertyComparisonMatrix { left: left.into(), right: right.into(), rows, cols, cells }
    }

    fn build(left: &str, right: &str, lp: &Prepared, rp: &Prepared, mode: ComparisonMode) -> Self {
        let cells = match (lp, rp) {
            (Prepared::Exact(l), Prepared::Exact(r)) => r
                .iter()
                .flat_map(|rs| l.iter().map(move |ls| classify_ids(ls, rs, mode.direction)))
                .collect(),
            (Prepared::Alpha(l), Prepared::Alpha(r)) => r
                .iter()
                .flat_map(|rs| l.iter().map(move |ls| classify_sets(ls, rs, mode)))
                .collect(),
            _ => unreachable!("both sides are prepared with the same match mode"),
        };
        PropertyComparisonMatrix::from_cells(left, right, rp.len(), lp.len(), cells)
    }

    pub fn left(&self) -> &str {
        &self.left
    }

    pub fn right(&self) -> &str {
        &self.right
    }

    /// Number of right-knowledge properties.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of left-knowledge properties.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<SimilarityClass> {
        (row < self.rows && col < self.cols).then(|| self.cells[row * self.cols + col])
    }

    pub fn row(&self, row: usize) -> &[SimilarityClass] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[SimilarityClass]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[SimilarityClass] {
        &self.cells
    }

    pub fn to_nested(&self) -> Vec<Vec<SimilarityClass>> {
        self.iter_rows().map(<[_]>::to_vec).collect()
    }
}

/// Counts of each class in a comparison matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CardinalitySignature {
    pub equal: usize,
    pub similar: usize,
    pub different: usize,
}

impl CardinalitySignature {
    pub fn new(equal: usize, similar: usize, different: usize) -> Self {
        CardinalitySignature { equal, similar, different }
    }

    pub fn total(&self) -> usize {
        self.equal + self.similar + self.different
    }

    pub fn count(&self, class: SimilarityClass) -> usize {
        match class {
            SimilarityClass::Equal => self.equal,
            SimilarityClass::Similar => self.similar,
            SimilarityClass::Different => self.different,
        }
    }
}

pub fn cardinality_signature(m: &PropertyComparisonMatrix) -> CardinalitySignature {
    m.cells.iter().fold(CardinalitySignature::default(), |mut sig, class| {
        match class {
            SimilarityClass::Equal => sig.equal += 1,
            SimilarityClass::Similar => sig.similar += 1,
            SimilarityClass::Different => sig.different += 1,
        }
        sig
    })
}

/// Compares every property of `k_m` (columns) with every property of `k_n` (rows).
pub fn property_space(
    k_m: &Knowledge,
    k_n: &Knowledge,
    mode: ComparisonMode,
) -> Result<PropertyComparisonMatrix, SimilarityError> {
    if k_m.name() == k_n.name() {
        return Err(SimilarityError::SameKnowledge(k_m.name().to_string()));
    }
    let mut interner = Interner::new();
    let left = interner.prepare(k_m, mode.matching);
    let right = interner.prepare(k_n, mode.matching);
    Ok(PropertyComparisonMatrix::build(k_m.name(), k_n.name(), &left, &right, mode))
}

/// One off-diagonal cell of the knowledge similarity space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceEntry {
    pub matrix: PropertyComparisonMatrix,
    pub signature: CardinalitySignature,
}

/// Pairwise results for every ordered pair of distinct knowledges.
///
/// Entry `(left, right)` holds `property_space(knowledges[left], knowledges[right])`.
/// Diagonal entries do not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeSimilaritySpace {
    names: Vec<String>,
    mode: ComparisonMode,
    grid: Vec<Option<SpaceEntry>>,
}

impl KnowledgeSimilaritySpace {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mode(&self) -> ComparisonMode {
        self.mode
    }

    /// Number of knowledges.
    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// Number of populated (off-diagonal) entries, `n² - n`.
    pub fn len(&self) -> usize {
        self.grid.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entry(&self, left: usize, right: usize) -> Option<&SpaceEntry> {
        let n = self.order();
        if left >= n || right >= n {
            return None;
        }
        self.grid[left * n + right].as_ref()
    }

    pub fn entry_by_name(&self, left: &str, right: &str) -> Option<&SpaceEntry> {
        let l = self.names.iter().position(|n| n == left)?;
        let r = self.names.iter().position(|n| n == right)?;
        self.entry(l, r)
    }

    /// Entries in row-major order: `(left, right, entry)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &SpaceEntry)> {
        let n = self.order();
        self.grid
            .iter()
            .enumerate()
            .filter_map(move |(idx, e)| e.as_ref().map(|e| (idx / n, idx % n, e)))
    }
}

/// Builds the full space. Pair entries are computed in parallel; the result
/// does not depend on scheduling.
pub fn knowledge_space(
    kb: &KnowledgeBase,
    mode: ComparisonMode,
) -> Result<KnowledgeSimilaritySpace, SimilarityError> {
    let n = kb.len();
    if n < 2 {
        return Err(SimilarityError::TooFewKnowledges(n));
    }
    let mut interner = Interner::new();
    let prepared: Vec<Prepared> =
        kb.knowledges().iter().map(|k| interner.prepare(k, mode.matching)).collect();
    let knowledges = kb.knowledges();

    let grid = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (left, right) = (idx / n, idx % n);
            (left != right).then(|| {
                let matrix = PropertyComparisonMatrix::build(
                    knowledges[left].name(),
                    knowledges[right].name(),
                    &prepared[left],
                    &prepared[right],
                    mode,
                );
                let signature = cardinality_signature(&matrix);
                SpaceEntry { matrix, signature }
            })
        })
        .collect();

    Ok(KnowledgeSimilaritySpace {
        names: knowledges.iter().map(|k| k.name().to_string()).collect(),
        mode,
        grid,
    })
}

/// The redundancy-free lower triangle of a symmetric space: entries
/// `(left, right)` with `left > right`.
#[derive(Debug, Clone)]
pub struct SourceInformation<'a> {
    space: &'a KnowledgeSimilaritySpace,
    pairs: Vec<(usize, usize)>,
}

impl<'a> SourceInformation<'a> {
    pub fn space(&self) -> &'a KnowledgeSimilaritySpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(left, right)` index pairs in row-major order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &'a SpaceEntry)> + '_ {
        self.pairs.iter().map(move |&(l, r)| {
            (l, r, self.space.entry(l, r).expect("off-diagonal entries are populated"))
        })
    }
}

pub fn source_information(
    space: &KnowledgeSimilaritySpace,
) -> Result<SourceInformation<'_>, SimilarityError> {
    if space.mode.direction != Direction::Symmetric {
        return Err(SimilarityError::DirectionalSpace);
    }
    let n = space.order();
    let pairs = (0..n).flat_map(|l| (0..l).map(move |r| (l, r))).collect();
    Ok(SourceInformation { space, pairs })
}

//! Rendering of comparison results as JSON, CSV and aligned text.
//!
//! JSON documents all carry `"schema_version": 1` and a `"kind"` of
//! `pair-report`, `space-report` or `category-report`. Classes are written
//! as `"equal"`, `"similar"`, `"different"`; matrices as row-major nested
//! arrays (rows are right-knowledge properties).

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::category::{
    category_configuration, is_identifiable_with, super_category, CategoryConfiguration,
    IdentifiabilityRule,
};
use crate::engine::{
    cardinality_signature, CardinalitySignature, ComparisonMode, Direction, KnowledgeSimilaritySpace,
    PropertyComparisonMatrix, SimilarityClass, SourceInformation,
};
use crate::model::MatchMode;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "kbsim";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeDoc {
    #[serde(rename = "match")]
    pub matching: MatchMode,
    pub direction: Direction,
}

impl From<ComparisonMode> for ModeDoc {
    fn from(mode: ComparisonMode) -> Self {
        ModeDoc { matching: mode.matching, direction: mode.direction }
    }
}

impl From<ModeDoc> for ComparisonMode {
    fn from(doc: ModeDoc) -> Self {
        ComparisonMode { matching: doc.matching, direction: doc.direction }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub input: Option<String>,
    pub mode: ModeDoc,
}

impl Metadata {
    pub fn new(input: Option<String>, mode: ComparisonMode) -> Self {
        Metadata {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            mode: mode.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Vec<SimilarityClass>>,
}

impl From<&PropertyComparisonMatrix> for MatrixDoc {
    fn from(m: &PropertyComparisonMatrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), cells: m.to_nested() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub left: String,
    pub right: String,
    pub matrix: MatrixDoc,
    pub signature: CardinalitySignature,
}

impl From<&PropertyComparisonMatrix> for PairDoc {
    fn from(m: &PropertyComparisonMatrix) -> Self {
        PairDoc {
            left: m.left().to_string(),
            right: m.right().to_string(),
            matrix: m.into(),
            signature: cardinality_signature(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourcePairDoc {
    pub left: String,
    pub right: String,
    pub signature: CardinalitySignature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub knowledges: Vec<String>,
    pub entries: Vec<PairDoc>,
    /// Absent for directional spaces.
    pub source_information: Option<Vec<SourcePairDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifiabilityDoc {
    pub rule: IdentifiabilityRule,
    pub identifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperCategoryDoc {
    pub case: u8,
    pub members: Vec<SimilarityClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub left: String,
    pub right: String,
    pub signature: CardinalitySignature,
    pub configuration: CategoryConfiguration,
    pub identifiability: IdentifiabilityDoc,
    /// `None` only for the all-empty configuration.
    pub super_category: Option<SuperCategoryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    PairReport { pair: PairDoc },
    SpaceReport { space: SpaceDoc },
    CategoryReport { category: CategoryDoc },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Pair,
    Space,
    Category,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
    pub metadata: Metadata,
}

impl Report {
    pub fn pair(matrix: &PropertyComparisonMatrix, metadata: Metadata) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            payload: Payload::PairReport { pair: matrix.into() },
            metadata,
        }
    }

    pub fn space(
        space: &KnowledgeSimilaritySpace,
        source: Option<&SourceInformation<'_>>,
        metadata: Metadata,
    ) -> Self {
        let entries = space.iter().map(|(_, _, e)| PairDoc::from(&e.matrix)).collect();
        let source_information = source.map(|s| {
            s.iter()
                .map(|(_, _, e)| SourcePairDoc {
                    left: e.matrix.left().to_string(),
                    right: e.matrix.right().to_string(),
                    signature: e.signature,
                })
                .collect()
        });
        Report {
            schema_version: SCHEMA_VERSION,
            payload: Payload::SpaceReport {
                space: SpaceDoc { knowledges: space.names().to_vec(), entries, source_information },
            },
            metadata,
        }
    }

    pub fn category(
        matrix: &PropertyComparisonMatrix,
        rule: IdentifiabilityRule,
        metadata: Metadata,
    ) -> Self {
        let signature = cardinality_signature(matrix);
        let configuration = category_configuration(&signature);
        let super_category = super_category(&configuration)
            .ok()
            .map(|sc| SuperCategoryDoc { case: sc.case.number(), members: sc.members });
        Report {
            schema_version: SCHEMA_VERSION,
            payload: Payload::CategoryReport {
                category: CategoryDoc {
                    left: matrix.left().to_string(),
                    right: matrix.right().to_string(),
                    signature,
                    configuration,
                    identifiability: IdentifiabilityDoc {
                        rule,
                        identifiable: is_identifiable_with(&configuration, rule),
                    },
                    super_category,
                },
            },
            metadata,
        }
    }

    pub fn kind(&self) -> ReportKind {
        match self.payload {
            Payload::PairReport { .. } => ReportKind::Pair,
            Payload::SpaceReport { .. } => ReportKind::Space,
            Payload::CategoryReport { .. } => ReportKind::Category,
        }
    }
}

/// Compact single-line JSON followed by a newline.
pub fn render_json(r: &Report) -> String {
    let mut out = serde_json::to_string(r).expect("report documents always serialize");
    out.push('\n');
    out
}

pub fn parse_report(json: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(json)
}

pub const CSV_HEADER: [&str; 5] =
    ["left_knowledge", "left_property", "right_knowledge", "right_property", "class"];

fn write_csv_rows<W: std::io::Write>(
    writer: &mut csv::Writer<W>,
    m: &PropertyComparisonMatrix,
) -> csv::Result<()> {
    for (row, cells) in m.iter_rows().enumerate() {
        for (col, class) in cells.iter().enumerate() {
            writer.write_record([
                m.left(),
                &(col + 1).to_string(),
                m.right(),
                &(row + 1).to_string(),
                class.as_str(),
            ])?;
        }
    }
    Ok(())
}

fn csv_document(
    fill: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
) -> String {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    fill(&mut writer).expect("in-memory write");
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// One row per cell, ordered by right property then left property.
pub fn render_csv(m: &PropertyComparisonMatrix) -> String {
    csv_document(|w| write_csv_rows(w, m))
}

/// Every ordered pair of the space under a single header, in space order.
pub fn render_space_csv(space: &KnowledgeSimilaritySpace) -> String {
    csv_document(|w| space.iter().try_for_each(|(_, _, e)| write_csv_rows(w, &e.matrix)))
}

fn mode_line(mode: &ModeDoc) -> String {
    format!("mode: {}", ComparisonMode::from(*mode))
}

fn signature_line(sig: &CardinalitySignature) -> String {
    format!("equal: {}  similar: {}  different: {}", sig.equal, sig.similar, sig.different)
}

fn write_grid(out: &mut String, pair: &PairDoc) {
    writeln!(out, "rows: {} properties, columns: {} properties", pair.right, pair.left).unwrap();
    if pair.matrix.cells.is_empty() || pair.matrix.cols == 0 {
        out.push_str("no comparisons\n");
    } else {
        let label_width = format!("P{}", pair.matrix.rows).len();
        let cell_width = format!("P{}", pair.matrix.cols).len();
        let mut header = " ".repeat(label_width);
        for col in 1..=pair.matrix.cols {
            write!(header, " {:>cell_width$}", format!("P{col}")).unwrap();
        }
        writeln!(out, "{header}").unwrap();
        for (row, cells) in pair.matrix.cells.iter().enumerate() {
            write!(out, "{:<label_width$}", format!("P{}", row + 1)).unwrap();
            for class in cells {
                write!(out, " {:>cell_width$}", class.glyph()).unwrap();
            }
            out.push('\n');
        }
    }
    writeln!(out, "{}", signature_line(&pair.signature)).unwrap();
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Aligned text using `=`, `~`, `#` for equal, similar, different.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    match &r.payload {
        Payload::PairReport { pair } => {
            writeln!(out, "pair: {} / {}", pair.left, pair.right).unwrap();
            writeln!(out, "{}", mode_line(&r.metadata.mode)).unwrap();
            write_grid(&mut out, pair);
        }
        Payload::SpaceReport { space } => {
            writeln!(
                out,
                "knowledge similarity space: {} knowledges, {} ordered entries",
                space.knowledges.len(),
                space.entries.len()
            )
            .unwrap();
            writeln!(out, "{}", mode_line(&r.metadata.mode)).unwrap();
            for pair in &space.entries {
                writeln!(out, "\n[{} / {}]", pair.left, pair.right).unwrap();
                write_grid(&mut out, pair);
            }
            out.push('\n');
            match &space.source_information {
                Some(source) => {
                    writeln!(out, "source information: {} pairs", source.len()).unwrap();
                    let width = source
                        .iter()
                        .map(|s| s.left.len() + s.right.len() + 3)
                        .max()
                        .unwrap_or(0);
                    for s in source {
                        let label = format!("{} / {}", s.left, s.right);
                        writeln!(out, "  {label:<width$}  {}", signature_line(&s.signature)).unwrap();
                    }
                }
                None => out.push_str("source information: unavailable for directional spaces\n"),
            }
        }
        Payload::CategoryReport { category } => {
            let c = category;
            writeln!(out, "pair: {} / {}", c.left, c.right).unwrap();
            writeln!(out, "{}", mode_line(&r.metadata.mode)).unwrap();
            writeln!(out, "{}", signature_line(&c.signature)).unwrap();
            writeln!(
                out,
                "configuration: equal={} similar={} different={}",
                yes_no(c.configuration.equal),
                yes_no(c.configuration.similar),
                yes_no(c.configuration.different)
            )
            .unwrap();
            let rule = match c.identifiability.rule {
                IdentifiabilityRule::Union => "union",
                IdentifiabilityRule::Strict => "strict",
            };
            writeln!(out, "identifiable: {} (rule: {rule})", yes_no(c.identifiability.identifiable))
                .unwrap();
            match &c.super_category {
                Some(sc) => {
                    let members: Vec<_> = sc.members.iter().map(|m| m.as_str()).collect();
                    writeln!(out, "super-category: case {} ({})", sc.case, members.join(", ")).unwrap();
                }
                None => out.push_str("super-category: none\n"),
            }
        }
    }
    out
}
